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
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "qgrav/complex_matrix.hpp"
#include "qgrav/eigen.hpp"

namespace qgrav {

/// 16x16 Hermitian operator over the party slots (A_in, A_out, B_in, B_out)
/// generating joint outcome probabilities without a presupposed order
/// between the parties. Normalization: trace = d_{A_out} * d_{B_out} = 4,
/// and Tr[W (M^A (x) M^B)] sums to 1 over the outcomes of any pair of CPTP
/// local instruments.
struct ProcessMatrix {
  ComplexMatrix matrix;

  struct Validity {
    double hermiticity_error = 0.0;
    double trace_error = 0.0;  // |trace - 4|
    double min_eigenvalue = 0.0;
    bool psd = false;
  };

  Validity validate() const {
    Validity v;
    v.hermiticity_error = matrix.hermiticity_error();
    v.trace_error = std::abs(matrix.trace() - Complex{4.0, 0.0});
    v.min_eigenvalue = hermitian_eigenvalues(matrix, 1e-10).front();
    v.psd = v.min_eigenvalue >= -1e-10;
    return v;
  }
};

namespace detail {

inline ComplexMatrix four_slot_word(const ComplexMatrix& a_in, const ComplexMatrix& a_out,
                                    const ComplexMatrix& b_in, const ComplexMatrix& b_out) {
  return tensor_product(tensor_product(a_in, a_out), tensor_product(b_in, b_out));
}

}  // namespace detail

/// The two-party process
///   W = 1/4 [ I + 1/sqrt(2) (Z_{A_out} Z_{B_in} + Z_{A_in} X_{B_in} Z_{B_out}) ].
/// The two correlation words anticommute, so W has eigenvalues {0, 1/2} and
/// is PSD with trace 4.
inline ProcessMatrix build_ocb_process() {
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ComplexMatrix w = detail::four_slot_word(id2, id2, id2, id2);
  w += detail::four_slot_word(id2, pauli_z(), pauli_z(), id2) * inv_sqrt2;
  w += detail::four_slot_word(pauli_z(), id2, pauli_x(), pauli_z()) * inv_sqrt2;
  return ProcessMatrix{w * 0.25};
}

/// Causally ordered reference: maximally mixed state into A_in, identity
/// channel from A_out to B_in, B_out discarded. The one-way signalling
/// ceiling for the guessing game on this process is 3/4.
inline ProcessMatrix build_ordered_reference_process() {
  ComplexMatrix phi(4, 4);  // sum_ij |ii><jj| over (A_out, B_in)
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) phi(i * 2 + i, j * 2 + j) = 1.0;
  const ComplexMatrix w = tensor_product(
      tensor_product(ComplexMatrix::identity(2) * 0.5, phi), ComplexMatrix::identity(2));
  return ProcessMatrix{w};
}

/// One party's local operation, split by classical outcome: each outcome is
/// a completely positive map in Kraus form, and the outcomes sum to a CPTP
/// map.
struct LocalInstrument {
  std::vector<std::vector<ComplexMatrix>> outcome_ops;
  std::size_t d_in = 0;
  std::size_t d_out = 0;

  LocalInstrument(std::vector<std::vector<ComplexMatrix>> ops, std::size_t in_dim,
                  std::size_t out_dim)
      : outcome_ops(std::move(ops)), d_in(in_dim), d_out(out_dim) {
    if (outcome_ops.empty()) {
      throw std::invalid_argument("LocalInstrument: no outcomes");
    }
    ComplexMatrix sum(d_in, d_in);
    for (const auto& outcome : outcome_ops) {
      for (const auto& k : outcome) {
        if (k.rows() != d_out || k.cols() != d_in) {
          throw std::invalid_argument("LocalInstrument: operator shape mismatch");
        }
        sum += k.adjoint() * k;
      }
    }
    if (sum.max_abs_diff(ComplexMatrix::identity(d_in)) > 1e-10) {
      throw std::invalid_argument("LocalInstrument: outcomes do not sum to a CPTP map");
    }
  }
};

/// Per-outcome Choi operators M_a = [(I (x) M_a)(|Phi><Phi|)]^T with the
/// unnormalized |Phi> = sum_i |ii>. The convention is pinned by the
/// normalization invariant of valid process matrices.
inline std::vector<ComplexMatrix> choi_of_instrument(const LocalInstrument& instr) {
  std::vector<ComplexMatrix> chois;
  chois.reserve(instr.outcome_ops.size());
  for (const auto& outcome : instr.outcome_ops) {
    ComplexMatrix acc(instr.d_in * instr.d_out, instr.d_in * instr.d_out);
    for (const auto& k : outcome) {
      CVector col(instr.d_in * instr.d_out, Complex{0.0, 0.0});
      for (std::size_t i = 0; i < instr.d_in; ++i)
        for (std::size_t r = 0; r < instr.d_out; ++r) col[i * instr.d_out + r] = k(r, i);
      acc += outer_product(col, col);
    }
    chois.push_back(acc.transpose());
  }
  return chois;
}

/// Joint outcome probability Tr[W (M^A (x) M^B)].
inline double probability(const ProcessMatrix& w, const ComplexMatrix& choi_a,
                          const ComplexMatrix& choi_b) {
  if (choi_a.rows() != 4 || choi_a.cols() != 4 || choi_b.rows() != 4 ||
      choi_b.cols() != 4 || w.matrix.rows() != 16) {
    throw std::invalid_argument("probability: operator shapes do not match slot layout");
  }
  const ComplexMatrix joint = tensor_product(choi_a, choi_b);
  Complex tr{0.0, 0.0};
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) tr += w.matrix(i, j) * joint(j, i);
  return tr.real();
}

/// Instrument measuring in the given rank-one basis and re-preparing the
/// matching state: outcome x acts as rho -> <phi_x|rho|phi_x> prep_x.
inline LocalInstrument measure_and_prepare_instrument(
    const std::vector<CVector>& basis, const std::vector<ComplexMatrix>& preps) {
  if (basis.empty() || basis.size() != preps.size()) {
    throw std::invalid_argument("measure_and_prepare_instrument: outcome count mismatch");
  }
  const std::size_t d_in = basis.front().size();
  const std::size_t d_out = preps.front().rows();
  std::vector<std::vector<ComplexMatrix>> outcomes;
  for (std::size_t x = 0; x < basis.size(); ++x) {
    std::vector<ComplexMatrix> ops;
    for (const auto& l : psd_rank_one_factors(preps[x])) {
      ops.push_back(outer_product(l, basis[x]));
    }
    outcomes.push_back(std::move(ops));
  }
  return LocalInstrument(std::move(outcomes), d_in, d_out);
}

/// Guessing-game value for the fixed optimal strategies.
///
/// Alice holds a uniform bit a: she measures A_in in Z (outcome x) and
/// re-prepares |a> on A_out. Bob holds uniform bits b, b'. For b' = 1 he
/// measures B_in in Z (outcome y, his guess of a) and re-prepares the
/// maximally mixed state; for b' = 0 he measures in X (outcome m) and
/// re-prepares |b xor m> in Z, and Alice's x is her guess of b. Returns
/// (P(y = a | b' = 1) + P(x = b | b' = 0)) / 2.
inline double ocb_game_value(const ProcessMatrix& w) {
  const ComplexMatrix half_mixed = ComplexMatrix::identity(2) * 0.5;
  const std::vector<CVector> z_basis = {basis_ket(2, 0), basis_ket(2, 1)};
  const std::vector<CVector> x_basis = {ket_plus(), ket_minus()};

  auto pure = [](const CVector& v) { return outer_product(v, v); };

  double receive_term = 0.0;  // P(y = a | b' = 1), averaged over a
  double send_term = 0.0;     // P(x = b | b' = 0), averaged over a and b
  for (int a = 0; a < 2; ++a) {
    const auto alice = choi_of_instrument(measure_and_prepare_instrument(
        z_basis, {pure(z_basis[a]), pure(z_basis[a])}));

    const auto bob_receive = choi_of_instrument(
        measure_and_prepare_instrument(z_basis, {half_mixed, half_mixed}));
    for (int x = 0; x < 2; ++x) {
      receive_term += 0.5 * probability(w, alice[x], bob_receive[a]);
    }

    for (int b = 0; b < 2; ++b) {
      const auto bob_send = choi_of_instrument(measure_and_prepare_instrument(
          x_basis, {pure(z_basis[b]), pure(z_basis[1 - b])}));
      for (int m = 0; m < 2; ++m) {
        send_term += 0.25 * probability(w, alice[b], bob_send[m]);
      }
    }
  }
  return 0.5 * (receive_term + send_term);
}

namespace detail {

// Deterministic Gaussian source; avoids std::normal_distribution so the
// stream is identical across library implementations.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    return double(gen_() >> 11) * 0x1.0p-53 + 0x1.0p-54;  // (0, 1)
  }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::acos(-1.0) * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  Complex complex_gaussian() { return Complex{gaussian(), gaussian()}; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace detail

/// Haar-flavoured random two-outcome qubit instrument: a random isometry
/// C^2 -> C^2 (x) C^k sliced into k Kraus operators and split between the
/// two outcomes.
inline LocalInstrument random_local_instrument(detail::GaussianSource& rng) {
  const std::size_t kraus_count = 2 + std::size_t(rng.raw() % 3);  // 2..4
  const std::size_t stacked = 2 * kraus_count;
  while (true) {
    std::vector<CVector> cols(2, CVector(stacked));
    for (auto& col : cols)
      for (auto& z : col) z = rng.complex_gaussian();
    // Gram-Schmidt on the two columns.
    const double n0 = norm(cols[0]);
    if (n0 < 1e-6) continue;
    for (auto& z : cols[0]) z /= n0;
    const Complex overlap = inner_product(cols[0], cols[1]);
    for (std::size_t i = 0; i < stacked; ++i) cols[1][i] -= overlap * cols[0][i];
    const double n1 = norm(cols[1]);
    if (n1 < 1e-6) continue;
    for (auto& z : cols[1]) z /= n1;

    std::vector<ComplexMatrix> kraus(kraus_count, ComplexMatrix(2, 2));
    for (std::size_t j = 0; j < kraus_count; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) kraus[j](r, c) = cols[c][r * kraus_count + j];

    const std::size_t split = 1 + std::size_t(rng.raw() % (kraus_count - 1));
    std::vector<std::vector<ComplexMatrix>> outcomes(2);
    for (std::size_t j = 0; j < kraus_count; ++j) {
      outcomes[j < split ? 0 : 1].push_back(kraus[j]);
    }
    return LocalInstrument(std::move(outcomes), 2, 2);
  }
}

/// Largest |sum of outcome probabilities - 1| over random CPTP instrument
/// pairs; validates the process normalization and, with it, the Choi
/// convention.
inline double normalization_max_error(const ProcessMatrix& w, int pairs,
                                      std::uint64_t seed) {
  detail::GaussianSource rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < pairs; ++trial) {
    const auto alice = choi_of_instrument(random_local_instrument(rng));
    const auto bob = choi_of_instrument(random_local_instrument(rng));
    double total = 0.0;
    for (const auto& ma : alice)
      for (const auto& mb : bob) total += probability(w, ma, mb);
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return worst;
}

}  // namespace qgrav
