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

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgrav/complex_matrix.hpp"
#include "qgrav/eigen.hpp"
#include "qgrav/states.hpp"

namespace qgrav {

/// CPTP map in Kraus form. Construction verifies the completeness relation
/// sum_k K_k^dagger K_k = I to 1e-12, so a value of this type is always a
/// valid channel.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw std::invalid_argument("KrausChannel: no operators");
    d_out_ = ops_.front().rows();
    d_in_ = ops_.front().cols();
    for (const auto& k : ops_) {
      if (k.rows() != d_out_ || k.cols() != d_in_) {
        throw std::invalid_argument("KrausChannel: mixed operator shapes");
      }
    }
    ComplexMatrix sum(d_in_, d_in_);
    for (const auto& k : ops_) sum += k.adjoint() * k;
    if (sum.max_abs_diff(ComplexMatrix::identity(d_in_)) > kIdentityTol) {
      throw std::invalid_argument("KrausChannel: completeness relation violated");
    }
  }

  static KrausChannel identity(std::size_t d) {
    return KrausChannel({ComplexMatrix::identity(d)});
  }

  const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }
  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const {
    if (rho.rows() != d_in_ || rho.cols() != d_in_) {
      throw std::invalid_argument("KrausChannel: input dimension mismatch");
    }
    ComplexMatrix out(d_out_, d_out_);
    for (const auto& k : ops_) out += k * rho * k.adjoint();
    return out;
  }

  /// Apply to a density operator. Dimension-preserving channels keep the
  /// slot labels; otherwise pass the output labels explicitly.
  DensityOperator apply(const DensityOperator& rho) const {
    if (d_out_ != d_in_) {
      throw std::invalid_argument(
          "KrausChannel: dimension-changing channel needs explicit output slots");
    }
    return DensityOperator(apply(rho.matrix()), rho.slots(), rho.tolerance());
  }

  DensityOperator apply(const DensityOperator& rho,
                        std::vector<std::string> out_slots) const {
    return DensityOperator(apply(rho.matrix()), std::move(out_slots),
                           rho.tolerance());
  }

  /// after(before(.)) as a single channel.
  static KrausChannel compose(const KrausChannel& after, const KrausChannel& before) {
    if (after.d_in() != before.d_out()) {
      throw std::invalid_argument("KrausChannel: composition dimension mismatch");
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(after.ops_.size() * before.ops_.size());
    for (const auto& a : after.ops_)
      for (const auto& b : before.ops_) ops.push_back(a * b);
    return KrausChannel(std::move(ops));
  }

  /// Choi operator under the convention [(I (x) ch)(|Phi><Phi|)]^T with the
  /// unnormalized |Phi> = sum_i |ii>. Trace equals d_in for any channel.
  ComplexMatrix choi() const {
    ComplexMatrix acc(d_in_ * d_out_, d_in_ * d_out_);
    for (const auto& k : ops_) {
      CVector col(d_in_ * d_out_, Complex{0.0, 0.0});
      // (I (x) K)|Phi> = sum_i |i> (x) K|i>
      for (std::size_t i = 0; i < d_in_; ++i)
        for (std::size_t r = 0; r < d_out_; ++r) col[i * d_out_ + r] = k(r, i);
      acc += outer_product(col, col);
    }
    return acc.transpose();
  }

 private:
  std::vector<ComplexMatrix> ops_;
  std::size_t d_in_ = 0;
  std::size_t d_out_ = 0;
};

/// Channel to the environment of the Stinespring dilation
/// V|psi> = sum_k (K_k|psi>) (x) |k>_E. The environment dimension is the
/// Kraus count; applying this construction twice returns the original
/// operators.
inline KrausChannel complementary(const KrausChannel& ch) {
  const std::size_t env_dim = ch.kraus_ops().size();
  std::vector<ComplexMatrix> ops;
  ops.reserve(ch.d_out());
  for (std::size_t j = 0; j < ch.d_out(); ++j) {
    ComplexMatrix c(env_dim, ch.d_in());
    for (std::size_t k = 0; k < env_dim; ++k)
      for (std::size_t i = 0; i < ch.d_in(); ++i) c(k, i) = ch.kraus_ops()[k](j, i);
    ops.push_back(std::move(c));
  }
  return KrausChannel(std::move(ops));
}

/// Control-conditioned parallel assignment of two qubit channels on
/// (control, slot1, slot2): Kraus operators
///   |0><0| (x) K_i^A (x) K_j^B  +  |1><1| (x) K_j^B (x) K_i^A.
/// The control argument is validated (it is the state such a channel is
/// meant to act on) but the Kraus structure itself is control-independent.
inline KrausChannel controlled_assignment(const DensityOperator& ctrl,
                                          const KrausChannel& ch_a,
                                          const KrausChannel& ch_b) {
  if (ctrl.dim() != 2) {
    throw std::invalid_argument("controlled_assignment: control must be a qubit");
  }
  if (ch_a.d_in() != 2 || ch_a.d_out() != 2 || ch_b.d_in() != 2 || ch_b.d_out() != 2) {
    throw std::invalid_argument("controlled_assignment: channels must be qubit maps");
  }
  ComplexMatrix p0(2, 2), p1(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  std::vector<ComplexMatrix> ops;
  for (const auto& ka : ch_a.kraus_ops()) {
    for (const auto& kb : ch_b.kraus_ops()) {
      ops.push_back(tensor_product(p0, tensor_product(ka, kb)) +
                    tensor_product(p1, tensor_product(kb, ka)));
    }
  }
  return KrausChannel(std::move(ops));
}

/// Measure-and-prepare channel rho -> sum_x Tr{Pi_x rho} sigma_x in unit-rank
/// Kraus form. Such channels are entanglement breaking.
inline KrausChannel measure_prepare(const std::vector<ComplexMatrix>& effects,
                                    const std::vector<DensityOperator>& preps) {
  if (effects.empty() || effects.size() != preps.size()) {
    throw std::invalid_argument("measure_prepare: effect/prep count mismatch");
  }
  const std::size_t d_in = effects.front().rows();
  ComplexMatrix sum(d_in, d_in);
  for (const auto& e : effects) {
    if (e.rows() != d_in || e.cols() != d_in) {
      throw std::invalid_argument("measure_prepare: effect shape mismatch");
    }
    sum += e;
  }
  if (sum.max_abs_diff(ComplexMatrix::identity(d_in)) > 1e-10) {
    throw std::invalid_argument("measure_prepare: effects do not resolve the identity");
  }

  std::vector<ComplexMatrix> ops;
  for (std::size_t x = 0; x < effects.size(); ++x) {
    const auto effect_factors = psd_rank_one_factors(effects[x]);
    const auto prep_factors = psd_rank_one_factors(preps[x].matrix());
    for (const auto& g : effect_factors)
      for (const auto& l : prep_factors) ops.push_back(outer_product(l, g));
  }
  return KrausChannel(std::move(ops));
}

/// post(measure_prepare(effects, preps)(pre(.))) as one channel; with
/// identity wrappers this reduces to measure_prepare exactly.
inline KrausChannel conditional_state_preparation(
    const KrausChannel& pre, const std::vector<ComplexMatrix>& effects,
    const std::vector<DensityOperator>& preps, const KrausChannel& post) {
  return KrausChannel::compose(post,
                               KrausChannel::compose(measure_prepare(effects, preps), pre));
}

inline std::vector<ComplexMatrix> povm_z() {
  ComplexMatrix p0(2, 2), p1(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return {p0, p1};
}

inline std::vector<ComplexMatrix> povm_x() {
  return {outer_product(ket_plus(), ket_plus()),
          outer_product(ket_minus(), ket_minus())};
}

inline std::vector<DensityOperator> z_eigenstate_preps() {
  return {DensityOperator::from_pure(basis_ket(2, 0), {"B"}),
          DensityOperator::from_pure(basis_ket(2, 1), {"B"})};
}

/// Four-outcome realization of the even X/Z measurement mixture:
/// {X-basis projectors, Z-basis projectors}, each weighted 1/2.
inline std::vector<ComplexMatrix> povm_half_x_half_z() {
  std::vector<ComplexMatrix> effects;
  for (auto& e : povm_x()) effects.push_back(e * 0.5);
  for (auto& e : povm_z()) effects.push_back(e * 0.5);
  return effects;
}

/// Matching eigenstate re-preparations for povm_half_x_half_z().
inline std::vector<DensityOperator> x_z_eigenstate_preps() {
  return {DensityOperator::from_pure(ket_plus(), {"B"}),
          DensityOperator::from_pure(ket_minus(), {"B"}),
          DensityOperator::from_pure(basis_ket(2, 0), {"B"}),
          DensityOperator::from_pure(basis_ket(2, 1), {"B"})};
}

/// The background-noise map: a Z-basis von Neumann measurement with
/// eigenstate re-preparation. Idempotent.
inline KrausChannel degrading_map() {
  return measure_prepare(povm_z(), z_eigenstate_preps());
}

/// Probabilistic remote simulation: p * d(e_state) + (1 - p) * e_state.
inline DensityOperator remote_sim_mix(double p, const KrausChannel& d,
                                      const DensityOperator& e_state) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("remote_sim_mix: probability outside [0, 1]");
  }
  if (d.d_in() != e_state.dim() || d.d_out() != e_state.dim()) {
    throw std::invalid_argument("remote_sim_mix: channel must preserve the dimension");
  }
  const ComplexMatrix degraded = d.apply(e_state.matrix());
  ComplexMatrix out(e_state.dim(), e_state.dim());
  for (std::size_t i = 0; i < e_state.dim(); ++i)
    for (std::size_t j = 0; j < e_state.dim(); ++j)
      out(i, j) = p * degraded(i, j) + (1.0 - p) * e_state.matrix()(i, j);
  return DensityOperator(std::move(out), e_state.slots(), e_state.tolerance());
}

/// Which measurement branch of the first logical channel selects the
/// simulation direction: the X branch routes (E2 -> B1), the Z branch
/// (E1 -> B2). A case split on the mixing map, not a separate channel.
enum class RemoteSimBranch { kXBasis, kZBasis };

struct RemoteSimReport {
  RemoteSimBranch branch;
  std::string source_slot;  // local environment being degraded
  std::string target_slot;  // remote output being simulated
  DensityOperator output;
};

inline RemoteSimReport remote_simulation(RemoteSimBranch branch, double p,
                                         const KrausChannel& d,
                                         const DensityOperator& e_state) {
  const bool x_branch = branch == RemoteSimBranch::kXBasis;
  return RemoteSimReport{branch, x_branch ? "E2" : "E1", x_branch ? "B1" : "B2",
                         remote_sim_mix(p, d, e_state)};
}

/// Angle parameterization of the two-Kraus qubit channel family with Bloch
/// contraction (cos u, cos v, cos u cos v) and z shift sin u sin v.
struct AntiDegradableParams {
  double u = 0.0;
  double v = 0.0;

  AntiDegradableParams() = default;
  AntiDegradableParams(double u_, double v_) : u(u_), v(v_) {}

  double lambda1() const { return std::cos(u); }
  double lambda2() const { return std::cos(v); }
  double lambda3() const { return lambda1() * lambda2(); }
  double t3() const { return std::sin(u) * std::sin(v); }

  /// sin u > cos v: the output can be reconstructed from the environment.
  bool anti_degradable() const { return std::sin(u) > std::cos(v); }
  /// |sin v| >= |cos u|: the same condition in its alternate form, recorded
  /// separately because the two are not reconciled analytically here.
  bool anti_degradable_alt_form() const {
    return std::abs(std::sin(v)) >= std::abs(std::cos(u));
  }
};

/// Two-Kraus channel
///   A+ = diag(cos (v-u)/2, cos (u+v)/2)
///   A- = [[0, sin (u+v)/2], [sin (v-u)/2, 0]]
/// whose Pauli transfer matrix is diag(1, cos u, cos v, cos u cos v) with the
/// sin u sin v shift in the z row. u = v = 0 is the identity; u = v = pi/2
/// resets everything to |0>.
inline KrausChannel anti_degradable_channel(const AntiDegradableParams& p) {
  const double cm = std::cos(0.5 * (p.v - p.u));
  const double cp = std::cos(0.5 * (p.u + p.v));
  const double sm = std::sin(0.5 * (p.v - p.u));
  const double sp = std::sin(0.5 * (p.u + p.v));
  ComplexMatrix a_plus(2, 2), a_minus(2, 2);
  a_plus(0, 0) = cm;
  a_plus(1, 1) = cp;
  a_minus(0, 1) = sp;
  a_minus(1, 0) = sm;
  return KrausChannel({a_plus, a_minus});
}

/// Affine action on Bloch coordinates (1, w1, w2, w3); row 0 is (1, 0, 0, 0)
/// for any trace-preserving qubit map.
inline std::array<std::array<double, 4>, 4> transfer_matrix(const KrausChannel& ch) {
  if (ch.d_in() != 2 || ch.d_out() != 2) {
    throw std::invalid_argument("transfer_matrix: qubit channels only");
  }
  const std::array<ComplexMatrix, 4> basis = {ComplexMatrix::identity(2), pauli_x(),
                                              pauli_y(), pauli_z()};
  std::array<std::array<double, 4>, 4> t{};
  for (std::size_t l = 0; l < 4; ++l) {
    const ComplexMatrix image = ch.apply(basis[l]);
    for (std::size_t k = 0; k < 4; ++k) {
      t[k][l] = 0.5 * (basis[k] * image).trace().real();
    }
  }
  return t;
}

/// Flagged pair of channels: rho -> 1/2 branch0(rho) (x) |0><0|_flag
///                                 + 1/2 branch1(rho) (x) |1><1|_flag.
class SuperChannel {
 public:
  SuperChannel(KrausChannel branch0, KrausChannel branch1, std::string flag_slot)
      : branch0_(std::move(branch0)),
        branch1_(std::move(branch1)),
        flag_slot_(std::move(flag_slot)) {
    if (branch0_.d_in() != branch1_.d_in() || branch0_.d_out() != branch1_.d_out()) {
      throw std::invalid_argument("SuperChannel: branch shapes differ");
    }
  }

  const KrausChannel& branch0() const { return branch0_; }
  const KrausChannel& branch1() const { return branch1_; }
  const std::string& flag_slot() const { return flag_slot_; }

  /// The whole construction as one CPTP map into (output (x) flag).
  KrausChannel as_kraus_channel() const {
    const double w = 1.0 / std::sqrt(2.0);
    std::vector<ComplexMatrix> ops;
    for (std::size_t f = 0; f < 2; ++f) {
      const auto& branch = f == 0 ? branch0_ : branch1_;
      for (const auto& k : branch.kraus_ops()) {
        ComplexMatrix ext(branch.d_out() * 2, branch.d_in());
        for (std::size_t r = 0; r < branch.d_out(); ++r)
          for (std::size_t c = 0; c < branch.d_in(); ++c) ext(r * 2 + f, c) = w * k(r, c);
        ops.push_back(std::move(ext));
      }
    }
    return KrausChannel(std::move(ops));
  }

  DensityOperator apply(const DensityOperator& rho) const {
    if (branch0_.d_in() != rho.dim() || branch0_.d_out() != rho.dim()) {
      throw std::invalid_argument("SuperChannel: input dimension mismatch");
    }
    ComplexMatrix f0(2, 2), f1(2, 2);
    f0(0, 0) = 1.0;
    f1(1, 1) = 1.0;
    ComplexMatrix out = tensor_product(branch0_.apply(rho.matrix()) * 0.5, f0) +
                        tensor_product(branch1_.apply(rho.matrix()) * 0.5, f1);
    std::vector<std::string> slots = rho.slots();
    slots.push_back(flag_slot_);
    return DensityOperator(std::move(out), std::move(slots), rho.tolerance());
  }

  /// Discarding the flag leaves the even mixture of the branches.
  KrausChannel flag_traced() const {
    const double w = 1.0 / std::sqrt(2.0);
    std::vector<ComplexMatrix> ops;
    for (const auto& k : branch0_.kraus_ops()) ops.push_back(k * w);
    for (const auto& k : branch1_.kraus_ops()) ops.push_back(k * w);
    return KrausChannel(std::move(ops));
  }

 private:
  KrausChannel branch0_;
  KrausChannel branch1_;
  std::string flag_slot_;
};

/// Post-compose each branch with its own degrading map. With branches built
/// from the local complementary channels and both maps equal to the
/// background-noise map, this reproduces the directly-built flagged channel.
inline SuperChannel super_channel_compose(const SuperChannel& sc, const KrausChannel& d1,
                                          const KrausChannel& d2) {
  return SuperChannel(KrausChannel::compose(d1, sc.branch0()),
                      KrausChannel::compose(d2, sc.branch1()), sc.flag_slot());
}

/// Qubit channel on one named slot of a larger state.
inline DensityOperator apply_to_slot(const KrausChannel& ch, const DensityOperator& rho,
                                     const std::string& slot) {
  if (ch.d_in() != 2 || ch.d_out() != 2) {
    throw std::invalid_argument("apply_to_slot: qubit channels only");
  }
  const std::size_t k = rho.slot_position(slot);
  const std::size_t n = rho.num_qubits();
  const std::size_t pre = std::size_t{1} << k;
  const std::size_t post = std::size_t{1} << (n - 1 - k);
  std::vector<ComplexMatrix> ops;
  for (const auto& op : ch.kraus_ops()) {
    ops.push_back(tensor_product(tensor_product(ComplexMatrix::identity(pre), op),
                                 ComplexMatrix::identity(post)));
  }
  return KrausChannel(std::move(ops)).apply(rho);
}

}  // namespace qgrav
