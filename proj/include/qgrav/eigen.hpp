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
#include <stdexcept>
#include <vector>

#include "qgrav/complex_matrix.hpp"

namespace qgrav {

namespace detail {

// Cyclic Jacobi on a real symmetric matrix, eigenvalues only. The matrices
// here are tiny (<= 32x32 after complex embedding), so simplicity wins over
// anything clever.
inline std::vector<double> jacobi_symmetric_eigenvalues(std::vector<double> a,
                                                        std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(at(i, j)));
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  const double stop = 1e-30 * scale * scale * static_cast<double>(n * n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// H = A + iB is embedded as the real symmetric [[A, -B], [B, A]], whose
/// spectrum is that of H with every eigenvalue doubled; adjacent pairs of the
/// sorted embedded spectrum are averaged back down.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                                 double tol = kIdentityTol) {
  if (!m.is_square()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  }
  const double scale = std::max(1.0, m.max_abs());
  if (m.hermiticity_error() > tol * scale) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian");
  }
  const std::size_t n = m.rows();
  std::vector<double> s(4 * n * n, 0.0);
  const std::size_t n2 = 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = m(i, j).real();
      const double im = m(i, j).imag();
      s[i * n2 + j] = re;
      s[(i + n) * n2 + (j + n)] = re;
      s[i * n2 + (j + n)] = -im;
      s[(i + n) * n2 + j] = im;
    }
  }
  const std::vector<double> doubled = detail::jacobi_symmetric_eigenvalues(s, n2);
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) {
    eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  }
  return eig;
}

/// Rank-one decomposition H = sum_k v_k v_k^dagger of a PSD Hermitian matrix
/// via pivoted outer-product elimination. Throws if a residual diagonal goes
/// noticeably negative.
inline std::vector<CVector> psd_rank_one_factors(const ComplexMatrix& m,
                                                 double tol = kIdentityTol) {
  if (!m.is_hermitian(std::max(tol, 1e-10))) {
    throw std::invalid_argument("psd_rank_one_factors: matrix not Hermitian");
  }
  const std::size_t n = m.rows();
  ComplexMatrix r = m;
  const double scale = std::max(1.0, m.max_abs());
  std::vector<CVector> factors;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = r(i, i).real();
      if (d > best) {
        best = d;
        pivot = i;
      }
    }
    if (best <= tol * scale) {
      for (std::size_t i = 0; i < n; ++i) {
        if (r(i, i).real() < -1e2 * tol * scale) {
          throw std::domain_error("psd_rank_one_factors: matrix not PSD");
        }
      }
      break;
    }
    const double inv = 1.0 / std::sqrt(best);
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = r(i, pivot) * inv;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) -= v[i] * std::conj(v[j]);
    factors.push_back(std::move(v));
  }
  return factors;
}

}  // namespace qgrav
