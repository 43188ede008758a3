// Copyright 2026 The qgrav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgrav {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Absolute tolerance for exact-identity checks (completeness, trace, ...).
inline constexpr double kIdentityTol = 1e-12;
/// Absolute tolerance for eigenvalue sign decisions (PSD / PPT verdicts).
inline constexpr double kEigSignTol = 1e-9;

/// Dense row-major complex matrix. All systems handled here are at most a
/// few qubits, so there is no sparse path and no blocking.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) {
        throw std::invalid_argument("ComplexMatrix: ragged initializer");
      }
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix operator+(const ComplexMatrix& o) const {
    require_same_shape(o, "add");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
  }

  ComplexMatrix operator-(const ComplexMatrix& o) const {
    require_same_shape(o, "subtract");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
    return r;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  ComplexMatrix operator*(const Complex& z) const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * z;
    return r;
  }

  friend ComplexMatrix operator*(const Complex& z, const ComplexMatrix& m) {
    return m * z;
  }

  /// Matrix product.
  ComplexMatrix operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) {
      throw std::invalid_argument("ComplexMatrix: product shape mismatch");
    }
    ComplexMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Complex a = (*this)(i, k);
        if (a == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          r(i, j) += a * o(k, j);
        }
      }
    }
    return r;
  }

  CVector operator*(const CVector& v) const {
    if (cols_ != v.size()) {
      throw std::invalid_argument("ComplexMatrix: matvec shape mismatch");
    }
    CVector r(rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = std::conj(data_[k]);
    return r;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  Complex trace() const {
    if (!is_square()) throw std::invalid_argument("ComplexMatrix: trace of non-square");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double max_abs_diff(const ComplexMatrix& o) const {
    require_same_shape(o, "compare");
    double m = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k)
      m = std::max(m, std::abs(data_[k] - o.data_[k]));
    return m;
  }

  /// Entrywise approximate equality with an absolute tolerance.
  bool approx_equal(const ComplexMatrix& o, double tol = kIdentityTol) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && max_abs_diff(o) <= tol;
  }

  double hermiticity_error() const {
    if (!is_square()) return 1.0;
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

  bool is_hermitian(double tol = kIdentityTol) const {
    return is_square() && hermiticity_error() <= tol;
  }

 private:
  void require_same_shape(const ComplexMatrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument(std::string("ComplexMatrix: ") + what +
                                  " shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product. Slot bookkeeping for density operators lives in
/// DensityOperator; this is the bare matrix operation.
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

inline ComplexMatrix outer_product(const CVector& u, const CVector& v) {
  ComplexMatrix r(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

inline Complex inner_product(const CVector& u, const CVector& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("inner_product: dimension mismatch");
  }
  Complex r{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) r += std::conj(u[i]) * v[i];
  return r;
}

inline double norm(const CVector& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline CVector basis_ket(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("basis_ket: index out of range");
  CVector v(dim, Complex{0.0, 0.0});
  v[index] = 1.0;
  return v;
}

inline CVector tensor_product(const CVector& a, const CVector& b) {
  CVector r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
  return r;
}

// Pauli operators and friends.
inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() {
  return {{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
}
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

inline CVector ket_plus() {
  const double inv = 1.0 / std::sqrt(2.0);
  return {inv, inv};
}
inline CVector ket_minus() {
  const double inv = 1.0 / std::sqrt(2.0);
  return {inv, -inv};
}

}  // namespace qgrav
