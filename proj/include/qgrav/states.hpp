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

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgrav/complex_matrix.hpp"
#include "qgrav/eigen.hpp"

namespace qgrav {

struct ValidityReport {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool psd = true;  // min_eigenvalue >= -kEigSignTol
};

/// Hermitian unit-trace operator over an ordered list of qubit slots.
///
/// Basis convention: slot 0 is the most significant bit, so for slots
/// (s0, s1, ..., s_{n-1}) the ket |b0 b1 ... b_{n-1}> sits at index
/// sum_k b_k 2^{n-1-k}.
///
/// Construction enforces Hermiticity and unit trace; positivity is *not*
/// enforced, because part of the analysis surface is precisely reporting
/// when a candidate state fails to be PSD. Use validity() for the PSD
/// verdict before treating a value as a physical state.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix m, std::vector<std::string> slots,
                  double tol = kIdentityTol)
      : mat_(std::move(m)), slots_(std::move(slots)), tol_(tol) {
    if (tol_ < 0.0) throw std::invalid_argument("DensityOperator: negative tolerance");
    if (!mat_.is_square()) {
      throw std::invalid_argument("DensityOperator: matrix not square");
    }
    const std::size_t dim = std::size_t{1} << slots_.size();
    if (mat_.rows() != dim) {
      throw std::invalid_argument(
          "DensityOperator: dimension does not match 2^(slot count)");
    }
    std::set<std::string> seen(slots_.begin(), slots_.end());
    if (seen.size() != slots_.size()) {
      throw std::invalid_argument("DensityOperator: duplicate slot labels");
    }
    if (mat_.hermiticity_error() > tol_) {
      throw std::invalid_argument("DensityOperator: matrix not Hermitian");
    }
    if (std::abs(mat_.trace() - Complex{1.0, 0.0}) > std::max(tol_, 8e-15)) {
      throw std::invalid_argument("DensityOperator: trace is not 1");
    }
  }

  static DensityOperator from_pure(const CVector& psi,
                                   std::vector<std::string> slots,
                                   double tol = kIdentityTol) {
    const double n = norm(psi);
    if (std::abs(n - 1.0) > 1e-9) {
      throw std::invalid_argument("from_pure: state vector not normalized");
    }
    return DensityOperator(outer_product(psi, psi), std::move(slots), tol);
  }

  static DensityOperator maximally_mixed(std::vector<std::string> slots) {
    const std::size_t dim = std::size_t{1} << slots.size();
    return DensityOperator(ComplexMatrix::identity(dim) * (1.0 / double(dim)),
                           std::move(slots));
  }

  const ComplexMatrix& matrix() const { return mat_; }
  const std::vector<std::string>& slots() const { return slots_; }
  std::size_t num_qubits() const { return slots_.size(); }
  std::size_t dim() const { return mat_.rows(); }
  double tolerance() const { return tol_; }

  std::size_t slot_position(const std::string& label) const {
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      if (slots_[k] == label) return k;
    }
    throw std::invalid_argument("unknown slot label: " + label);
  }

  ValidityReport validity() const {
    ValidityReport r;
    r.hermiticity_error = mat_.hermiticity_error();
    r.trace_error = std::abs(mat_.trace() - Complex{1.0, 0.0});
    const auto eig = hermitian_eigenvalues(mat_, std::max(tol_, 1e-10));
    r.min_eigenvalue = eig.front();
    r.psd = r.min_eigenvalue >= -kEigSignTol;
    return r;
  }

 private:
  ComplexMatrix mat_;
  std::vector<std::string> slots_;
  double tol_;
};

/// Tensor product of density operators; slot lists concatenate.
inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<std::string> slots = a.slots();
  slots.insert(slots.end(), b.slots().begin(), b.slots().end());
  return DensityOperator(tensor_product(a.matrix(), b.matrix()), std::move(slots),
                         std::max(a.tolerance(), b.tolerance()));
}

/// Partial trace over the named slots; remaining slots keep their order.
/// Tracing every slot leaves a 0-qubit operator (the 1x1 matrix [trace]).
inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const std::vector<std::string>& slots_to_remove) {
  const std::size_t n = rho.num_qubits();
  std::vector<bool> drop(n, false);
  for (const auto& label : slots_to_remove) {
    drop[rho.slot_position(label)] = true;  // throws on unknown label
  }

  std::vector<std::size_t> keep_pos;
  std::vector<std::size_t> drop_pos;
  std::vector<std::string> kept_slots;
  for (std::size_t k = 0; k < n; ++k) {
    if (drop[k]) {
      drop_pos.push_back(k);
    } else {
      keep_pos.push_back(k);
      kept_slots.push_back(rho.slots()[k]);
    }
  }

  const std::size_t nk = keep_pos.size();
  const std::size_t nd = drop_pos.size();
  const std::size_t dim_k = std::size_t{1} << nk;
  const std::size_t dim_d = std::size_t{1} << nd;

  // Scatter the bits of a compact index back to their original positions.
  auto expand = [n](std::size_t compact, const std::vector<std::size_t>& pos) {
    std::size_t full = 0;
    const std::size_t m = pos.size();
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t bit = (compact >> (m - 1 - r)) & 1u;
      full |= bit << (n - 1 - pos[r]);
    }
    return full;
  };

  ComplexMatrix out(dim_k, dim_k);
  const ComplexMatrix& m = rho.matrix();
  for (std::size_t a = 0; a < dim_k; ++a) {
    const std::size_t ra = expand(a, keep_pos);
    for (std::size_t b = 0; b < dim_k; ++b) {
      const std::size_t rb = expand(b, keep_pos);
      Complex sum{0.0, 0.0};
      for (std::size_t t = 0; t < dim_d; ++t) {
        const std::size_t rt = expand(t, drop_pos);
        sum += m(ra | rt, rb | rt);
      }
      out(a, b) = sum;
    }
  }
  return DensityOperator(std::move(out), std::move(kept_slots), rho.tolerance());
}

/// Transpose the indices of one slot. The result stays Hermitian with unit
/// trace but may fail positivity, so it is returned as a bare matrix.
inline ComplexMatrix partial_transpose(const DensityOperator& rho,
                                       const std::string& slot) {
  const std::size_t k = rho.slot_position(slot);
  const std::size_t n = rho.num_qubits();
  const std::size_t dim = rho.dim();
  const std::size_t mask = std::size_t{1} << (n - 1 - k);

  ComplexMatrix out(dim, dim);
  const ComplexMatrix& m = rho.matrix();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t ii = (i & ~mask) | (j & mask);
      const std::size_t jj = (j & ~mask) | (i & mask);
      out(i, j) = m(ii, jj);
    }
  }
  return out;
}

/// Shannon-style entropy of a spectrum, in bits, with 0 log 0 := 0.
inline double entropy_of_spectrum(const std::vector<double>& eig) {
  double s = 0.0;
  for (double lambda : eig) {
    if (lambda > 1e-15) s -= lambda * std::log2(lambda);
  }
  return s;
}

/// Von Neumann entropy in bits. Requires an actual state (PSD within the
/// sign tolerance).
inline double von_neumann_entropy(const DensityOperator& rho) {
  const auto eig = hermitian_eigenvalues(rho.matrix(), std::max(rho.tolerance(), 1e-10));
  if (eig.front() < -kEigSignTol) {
    throw std::domain_error("von_neumann_entropy: operator is not PSD");
  }
  return entropy_of_spectrum(eig);
}

/// <psi|rho|psi> for a normalized state vector.
inline double fidelity_pure(const DensityOperator& rho, const CVector& psi) {
  if (psi.size() != rho.dim()) {
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  }
  if (std::abs(norm(psi) - 1.0) > 1e-9) {
    throw std::invalid_argument("fidelity_pure: state vector not normalized");
  }
  return inner_product(psi, rho.matrix() * psi).real();
}

}  // namespace qgrav
