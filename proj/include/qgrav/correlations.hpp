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

#include "qgrav/gravity_states.hpp"
#include "qgrav/states.hpp"

namespace qgrav {

/// Entropic correlation measures of one two-qubit state, all in bits.
struct CorrelationReport {
  double omega = 0.0;
  double mutual_info = 0.0;
  double classical_corr = 0.0;
  double discord = 0.0;
  double coherent_info = 0.0;      // signed; mutual_info - 1 on unit-marginal states
  double coherent_info_abs = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double one_shot_q = 0.0;  // 1 - S(joint), signed
};

/// S(A) + S(B) - S(AB) for a two-qubit state.
inline double mutual_information(const DensityOperator& rho) {
  if (rho.num_qubits() != 2) {
    throw std::invalid_argument("mutual_information: two-qubit states only");
  }
  const double s_a = von_neumann_entropy(partial_trace(rho, {rho.slots()[1]}));
  const double s_b = von_neumann_entropy(partial_trace(rho, {rho.slots()[0]}));
  const double s_ab = von_neumann_entropy(rho);
  return s_a + s_b - s_ab;
}

namespace detail {

inline double xlog2x(double x) { return x > 1e-15 ? x * std::log2(x) : 0.0; }

// -t * log2(t / denom) with the 0 log 0 := 0 convention; negative arguments
// signal parameters outside the state family.
inline double neg_t_log2_ratio(double t, double denom) {
  if (t < -1e-12 || denom <= 0.0) {
    throw std::domain_error("classical_correlation_closed: log of non-positive argument");
  }
  if (t <= 1e-15) return 0.0;
  return -t * std::log2(t / denom);
}

// 1 - (1/2)(1-x) log2(1-x) - (1/2)(1+x) log2(1+x), i.e. the binary entropy
// of (1+x)/2.
inline double one_minus_split_entropy(double x) {
  if (std::abs(x) > 1.0 + 1e-12) {
    throw std::domain_error("classical_correlation_closed: log of non-positive argument");
  }
  const double clamped = std::min(std::abs(x), 1.0);
  return 1.0 - 0.5 * xlog2x(1.0 - clamped) - 0.5 * xlog2x(1.0 + clamped);
}

}  // namespace detail

struct ClassicalCorrelation {
  double value = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
};

/// Closed-form classical correlation C = S(first marginal) - min{f1, f2, f3}.
///
/// f2 and f3 use sqrt(r^2 + c_i^2); at r = 0, where all states of interest
/// live, this coincides with |c_i|, and the measurement-minimization oracle
/// adjudicates any use away from that line.
inline ClassicalCorrelation classical_correlation_closed(const BellDiagonalParams& p) {
  ClassicalCorrelation out;
  const double denom = 2.0 * (1.0 + p.s);
  out.f1 = 0.25 * (detail::neg_t_log2_ratio(1.0 + p.r + p.s + p.c3, denom) +
                   detail::neg_t_log2_ratio(1.0 - p.r + p.s - p.c3, denom) +
                   detail::neg_t_log2_ratio(1.0 + p.r - p.s - p.c3, denom) +
                   detail::neg_t_log2_ratio(1.0 - p.r - p.s + p.c3, denom));
  out.f2 = detail::one_minus_split_entropy(std::sqrt(p.r * p.r + p.c1 * p.c1));
  out.f3 = detail::one_minus_split_entropy(std::sqrt(p.r * p.r + p.c2 * p.c2));
  const double s_first = detail::one_minus_split_entropy(p.r);
  out.value = s_first - std::min(out.f1, std::min(out.f2, out.f3));
  return out;
}

struct MeasurementGrid {
  std::size_t theta_steps = 181;
  std::size_t phi_steps = 361;
  bool refine = true;
};

namespace detail {

// Entropy of an unnormalized PSD 2x2 matrix, weighted by its trace:
// returns p * S(sigma / p) with p = tr(sigma).
inline double weighted_qubit_entropy(const ComplexMatrix& sigma) {
  const double tr = sigma.trace().real();
  if (tr <= 1e-14) return 0.0;
  const double diff = (sigma(0, 0) - sigma(1, 1)).real();
  const double disc = std::sqrt(diff * diff + 4.0 * std::norm(sigma(0, 1)));
  const double lp = 0.5 * (tr + disc) / tr;
  const double lm = 0.5 * (tr - disc) / tr;
  return tr * (-xlog2x(lp) - xlog2x(std::max(lm, 0.0)));
}

// Average conditional entropy of the second qubit after projecting the
// first qubit along Bloch direction (theta, phi).
inline double conditional_entropy(const DensityOperator& rho, double theta, double phi) {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  const ComplexMatrix& m = rho.matrix();

  double total = 0.0;
  for (int sign : {+1, -1}) {
    ComplexMatrix proj(2, 2);
    proj(0, 0) = 0.5 * (1.0 + sign * nz);
    proj(1, 1) = 0.5 * (1.0 - sign * nz);
    proj(0, 1) = 0.5 * sign * Complex{nx, -ny};
    proj(1, 0) = 0.5 * sign * Complex{nx, ny};

    // Unnormalized conditional state of the second qubit:
    // sum_{k,l} proj(l,k) * block_{k,l}, with 2x2 blocks indexed by the
    // first (most significant) qubit.
    ComplexMatrix cond(2, 2);
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 2; ++l) {
        const Complex w = proj(l, k);
        if (w == Complex{0.0, 0.0}) continue;
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b)
            cond(a, b) += w * m(2 * k + a, 2 * l + b);
      }
    total += weighted_qubit_entropy(cond);
  }
  return total;
}

}  // namespace detail

/// Independent oracle for the classical correlation: minimize the average
/// post-measurement entropy over rank-one projective measurements of the
/// first qubit, by grid search over the Bloch sphere plus compass-style
/// local refinement.
inline double classical_correlation_bruteforce(const DensityOperator& rho,
                                               const MeasurementGrid& grid = {}) {
  if (rho.num_qubits() != 2) {
    throw std::invalid_argument("classical_correlation_bruteforce: two-qubit states only");
  }
  if (grid.theta_steps < 2 || grid.phi_steps < 2) {
    throw std::invalid_argument("classical_correlation_bruteforce: grid too coarse");
  }
  const double pi = std::acos(-1.0);
  double best = 1e300;
  double best_theta = 0.0;
  double best_phi = 0.0;
  for (std::size_t i = 0; i < grid.theta_steps; ++i) {
    const double theta = pi * double(i) / double(grid.theta_steps - 1);
    for (std::size_t j = 0; j < grid.phi_steps; ++j) {
      const double phi = 2.0 * pi * double(j) / double(grid.phi_steps - 1);
      const double h = detail::conditional_entropy(rho, theta, phi);
      if (h < best) {
        best = h;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }

  if (grid.refine) {
    double step = pi / double(grid.theta_steps - 1);
    while (step > 1e-8) {
      bool improved = false;
      for (const auto& [dt, dp] : {std::pair{step, 0.0}, std::pair{-step, 0.0},
                                   std::pair{0.0, step}, std::pair{0.0, -step}}) {
        const double h = detail::conditional_entropy(rho, best_theta + dt, best_phi + dp);
        if (h < best - 1e-15) {
          best = h;
          best_theta += dt;
          best_phi += dp;
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
  }

  const double s_second = von_neumann_entropy(partial_trace(rho, {rho.slots()[0]}));
  return s_second - best;
}

/// Total minus classical correlation.
inline double quantum_discord(const DensityOperator& rho, const BellDiagonalParams& p) {
  return mutual_information(rho) - classical_correlation_closed(p).value;
}

/// S(A) + S(B) + sum lambda log2 lambda - 1; equals I - 1, and on states with
/// maximally mixed marginals also 1 - S(AB).
inline double coherent_information(const DensityOperator& rho) {
  if (rho.num_qubits() != 2) {
    throw std::invalid_argument("coherent_information: two-qubit states only");
  }
  const double s_a = von_neumann_entropy(partial_trace(rho, {rho.slots()[1]}));
  const double s_b = von_neumann_entropy(partial_trace(rho, {rho.slots()[0]}));
  const auto eig = hermitian_eigenvalues(rho.matrix());
  double sum_llog = 0.0;
  for (double lambda : eig) sum_llog += detail::xlog2x(std::max(lambda, 0.0));
  return s_a + s_b + sum_llog - 1.0;
}

/// Single-evaluation ("n = 1") capacity figures over an omega grid. The
/// regularized many-copy limits are out of scope and flagged as such.
struct OneShotCapacities {
  double c_one_shot = 0.0;
  double q_one_shot = 0.0;  // max of 1 - S(joint); reported signed
  double c_argmax_omega = 0.0;
  double q_argmax_omega = 0.0;
  bool regularized = false;  // always false: single-letter evaluation only
};

inline OneShotCapacities one_shot_capacities(const std::vector<double>& omega_grid) {
  if (omega_grid.empty()) {
    throw std::invalid_argument("one_shot_capacities: empty grid");
  }
  OneShotCapacities out;
  out.c_one_shot = -1e300;
  out.q_one_shot = -1e300;
  for (double omega : omega_grid) {
    if (!(omega >= 0.0 && omega <= 1.0 / 3.0 + 1e-12)) {
      throw std::invalid_argument("one_shot_capacities: grid point outside [0, 1/3]");
    }
    const DensityOperator rho = bell_diagonal_marginal(GravityStateParams(omega));
    const double info = mutual_information(rho);
    const double q = 1.0 - von_neumann_entropy(rho);
    if (info > out.c_one_shot) {
      out.c_one_shot = info;
      out.c_argmax_omega = omega;
    }
    if (q > out.q_one_shot) {
      out.q_one_shot = q;
      out.q_argmax_omega = omega;
    }
  }
  return out;
}

/// Correlation measures across an omega range (inclusive endpoints).
inline std::vector<CorrelationReport> figure4_sweep(double omega_min, double omega_max,
                                                    std::size_t steps) {
  if (!(omega_min > 0.0 && omega_min < omega_max && omega_max <= 1.0 / 3.0 + 1e-12) ||
      steps < 2) {
    throw std::invalid_argument("figure4_sweep: bad range");
  }
  std::vector<CorrelationReport> rows;
  rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double omega =
        omega_min + (omega_max - omega_min) * double(i) / double(steps - 1);
    const DensityOperator rho = bell_diagonal_marginal(GravityStateParams(omega));
    const BellDiagonalParams params = BellDiagonalParams::from_omega(omega);

    CorrelationReport row;
    row.omega = omega;
    row.mutual_info = mutual_information(rho);
    const ClassicalCorrelation cc = classical_correlation_closed(params);
    row.classical_corr = cc.value;
    row.f1 = cc.f1;
    row.f2 = cc.f2;
    row.f3 = cc.f3;
    row.discord = row.mutual_info - row.classical_corr;
    row.coherent_info = coherent_information(rho);
    row.coherent_info_abs = std::abs(row.coherent_info);
    row.one_shot_q = 1.0 - von_neumann_entropy(rho);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qgrav
