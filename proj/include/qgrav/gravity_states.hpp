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

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgrav/states.hpp"

namespace qgrav {

/// Mixing weight of the tripartite gravity-environment state family.
///
/// The family is defined for any omega in [0, 1]; omega <= 1/3 is the regime
/// the entanglement analysis targets, and is recorded as a flag rather than
/// enforced, because the tripartite matrix is PSD only for omega >= 1/3 and
/// the library has to be able to exhibit that tension numerically.
struct GravityStateParams {
  double omega;

  explicit GravityStateParams(double w) : omega(w) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw std::invalid_argument("GravityStateParams: omega outside [0, 1]");
    }
  }

  bool within_low_omega_regime() const { return omega <= 1.0 / 3.0 + 1e-12; }
};

enum class ControlMode { kFixed, kSuperposed };

/// Control qubit selecting between the two parallel map assignments:
/// the classical fair coin, or the coherent |+> state.
inline DensityOperator control_state(ControlMode mode) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  if (mode == ControlMode::kSuperposed) {
    m(0, 1) = 0.5;
    m(1, 0) = 0.5;
  }
  return DensityOperator(std::move(m), {"C"});
}

/// Tripartite state over slots (GE, E1, B2): diagonal weights
/// (O, h, 0, h, 0, h, O, h)/2 with h = (1 - O)/2, plus the single coherence
/// pair h/2 at entries (0,6) and (6,0). Hermitian and unit trace for every
/// omega; its minimum eigenvalue (3*omega - 1)/4 goes negative below 1/3,
/// which validity() reports.
inline DensityOperator gravity_tripartite(const GravityStateParams& p) {
  const double w = p.omega;
  const double h = 0.5 - 0.5 * w;
  ComplexMatrix m(8, 8);
  m(0, 0) = 0.5 * w;
  m(1, 1) = 0.5 * h;
  m(3, 3) = 0.5 * h;
  m(5, 5) = 0.5 * h;
  m(6, 6) = 0.5 * w;
  m(7, 7) = 0.5 * h;
  m(0, 6) = 0.5 * h;
  m(6, 0) = 0.5 * h;
  return DensityOperator(std::move(m), {"GE", "E1", "B2"});
}

/// Two-qubit reduction over (GE, E1): an X-shaped Bell-diagonal state with
/// spectrum {1/2, omega/2, (1-omega)/4, (1-omega)/4}. PSD for the whole
/// omega range.
inline DensityOperator bell_diagonal_marginal(const GravityStateParams& p) {
  const double w = p.omega;
  const double d = 0.5 * (0.5 + 0.5 * w);
  const double h = 0.5 * (0.5 - 0.5 * w);
  ComplexMatrix m(4, 4);
  m(0, 0) = d;
  m(1, 1) = h;
  m(2, 2) = h;
  m(3, 3) = d;
  m(0, 3) = h;
  m(3, 0) = h;
  return DensityOperator(std::move(m), {"GE", "E1"});
}

/// Even mixture of the two role assignments (GE, E1, B2) and (GE, E2, B1).
/// Both terms share one matrix; after aligning slots to the common order
/// (gravity, local environment, remote output) the mixture reproduces the
/// tripartite constructor entrywise.
inline DensityOperator parallel_mixture(double omega) {
  const GravityStateParams p(omega);
  const DensityOperator term_a = gravity_tripartite(p);
  const DensityOperator term_b(term_a.matrix(), {"GE", "E2", "B1"});
  ComplexMatrix mixed(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      mixed(i, j) = 0.5 * term_a.matrix()(i, j) + 0.5 * term_b.matrix()(i, j);
  return DensityOperator(std::move(mixed), {"GE", "Ei", "Bj"});
}

/// Bloch/correlation parameters (r, s, c1, c2, c3) of the two-qubit family.
struct BellDiagonalParams {
  double r = 0.0;
  double s = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  BellDiagonalParams() = default;
  BellDiagonalParams(double r_, double s_, double c1_, double c2_, double c3_)
      : r(r_), s(s_), c1(c1_), c2(c2_), c3(c3_) {
    for (double c : {c1, c2, c3}) {
      if (std::abs(c) > 1.0 + 1e-12) {
        throw std::invalid_argument("BellDiagonalParams: |c_i| exceeds 1");
      }
    }
  }

  /// Parameters reproducing bell_diagonal_marginal(omega):
  /// c1 = (1-omega)/2, c2 = -c1, c3 = omega, with zero Bloch vectors.
  static BellDiagonalParams from_omega(double omega) {
    const GravityStateParams check(omega);  // range check
    const double c = 0.5 * (1.0 - omega);
    return BellDiagonalParams(0.0, 0.0, c, -c, omega);
  }

  /// |c1| + |c2| + |c3| <= 1; holds across the from_omega family and marks
  /// the separable region for Bell-diagonal states.
  bool within_separable_octahedron(double tol = kIdentityTol) const {
    return std::abs(c1) + std::abs(c2) + std::abs(c3) <= 1.0 + tol;
  }
};

/// Assemble the X-shaped matrix
///   1/4 [ 1+r+s+c3        0        0    c1-c2
///             0      1+r-s-c3  c1+c2      0
///             0        c1+c2  1-r+s-c3    0
///           c1-c2        0        0    1-r-s+c3 ]
/// over slots (GE, E1). Throws if the result is not PSD, reporting the
/// offending eigenvalue.
inline DensityOperator bell_diagonal_build(const BellDiagonalParams& p) {
  ComplexMatrix m(4, 4);
  m(0, 0) = 0.25 * (1.0 + p.r + p.s + p.c3);
  m(1, 1) = 0.25 * (1.0 + p.r - p.s - p.c3);
  m(2, 2) = 0.25 * (1.0 - p.r + p.s - p.c3);
  m(3, 3) = 0.25 * (1.0 - p.r - p.s + p.c3);
  m(0, 3) = 0.25 * (p.c1 - p.c2);
  m(3, 0) = 0.25 * (p.c1 - p.c2);
  m(1, 2) = 0.25 * (p.c1 + p.c2);
  m(2, 1) = 0.25 * (p.c1 + p.c2);

  const auto eig = hermitian_eigenvalues(m);
  if (eig.front() < -kEigSignTol) {
    throw std::domain_error(
        "bell_diagonal_build: parameters give a non-PSD matrix (eigenvalue " +
        std::to_string(eig.front()) + ")");
  }
  return DensityOperator(std::move(m), {"GE", "E1"});
}

/// Closed-form spectrum of the X-shaped matrix: the inner and outer 2x2
/// blocks diagonalize independently.
struct BellEigenvalues {
  double u_plus = 0.0;
  double u_minus = 0.0;
  double v_plus = 0.0;
  double v_minus = 0.0;

  double sum() const { return u_plus + u_minus + v_plus + v_minus; }
  double max_value() const {
    return std::max(std::max(u_plus, u_minus), std::max(v_plus, v_minus));
  }
  bool max_le_half(double tol = 1e-12) const { return max_value() <= 0.5 + tol; }
};

inline BellEigenvalues bell_eigenvalues(const BellDiagonalParams& p) {
  const double dv = std::sqrt((p.r - p.s) * (p.r - p.s) + (p.c1 + p.c2) * (p.c1 + p.c2));
  const double du = std::sqrt((p.r + p.s) * (p.r + p.s) + (p.c1 - p.c2) * (p.c1 - p.c2));
  BellEigenvalues e;
  e.v_plus = 0.25 * (1.0 - p.c3 + dv);
  e.v_minus = 0.25 * (1.0 - p.c3 - dv);
  e.u_plus = 0.25 * (1.0 + p.c3 + du);
  e.u_minus = 0.25 * (1.0 + p.c3 - du);
  return e;
}

/// Recover the mixing weight from the spectrum of a from_omega state as
/// 1 - 2(u+ - u-).
///
/// Note the u/v role swap relative to the v-based formula this mirrors: on
/// the from_omega family v+ = v- identically, so a v-based readout would be
/// constant; the u gap carries the parameter, and with it the companion
/// relations c1 = u+ - u-, c2 = -c1, c3 = 1 + 2 c2 close consistently.
inline double omega_from_eigenvalues(const BellEigenvalues& e) {
  return 1.0 - 2.0 * (e.u_plus - e.u_minus);
}

}  // namespace qgrav
