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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgrav/channels.hpp"
#include "qgrav/gravity_states.hpp"
#include "qgrav/states.hpp"

namespace qgrav {

/// 8x8 unitary of the NOR-controlled bit flip z -> z xor (not x * not y):
/// swaps |000> and |001>, identity elsewhere. Its own inverse.
inline ComplexMatrix toffoli_nor_unitary() {
  ComplexMatrix u = ComplexMatrix::identity(8);
  u(0, 0) = 0.0;
  u(1, 1) = 0.0;
  u(0, 1) = 1.0;
  u(1, 0) = 1.0;
  return u;
}

inline ComplexMatrix sqrt_x() {
  const Complex a{0.5, 0.5};
  const Complex b{0.5, -0.5};
  return {{a, b}, {b, a}};
}

inline ComplexMatrix sqrt_x_dag() { return sqrt_x().adjoint(); }

enum class GateKind { kNot, kCnot, kControlledSqrtX, kControlledSqrtXDag };

/// One elementary gate on the 3-qubit register (x = 0, y = 1, z = 2).
struct Gate {
  GateKind kind;
  int control;  // -1 for single-qubit gates
  int target;
};

/// Embed a (possibly controlled) single-qubit unitary into n qubits, with
/// qubit 0 as the most significant bit.
inline ComplexMatrix gate_unitary(const Gate& g, std::size_t n = 3) {
  ComplexMatrix u2(2, 2);
  switch (g.kind) {
    case GateKind::kNot:
    case GateKind::kCnot:
      u2 = pauli_x();
      break;
    case GateKind::kControlledSqrtX:
      u2 = sqrt_x();
      break;
    case GateKind::kControlledSqrtXDag:
      u2 = sqrt_x_dag();
      break;
  }
  const bool has_control = g.kind != GateKind::kNot;
  if (has_control && (g.control < 0 || g.control == g.target)) {
    throw std::invalid_argument("gate_unitary: bad control qubit");
  }
  const std::size_t dim = std::size_t{1} << n;
  auto bit = [n](std::size_t idx, int k) { return (idx >> (n - 1 - std::size_t(k))) & 1u; };
  const std::size_t tmask = std::size_t{1} << (n - 1 - std::size_t(g.target));

  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & ~tmask) != (j & ~tmask)) continue;
      const bool active = !has_control || bit(i, g.control) == 1u;
      if (active) {
        out(i, j) = u2(bit(i, g.target), bit(j, g.target));
      } else {
        out(i, j) = i == j ? 1.0 : 0.0;
      }
    }
  }
  return out;
}

/// Elementary-gate realization: the five-gate controlled-controlled-X core
/// over {CNOT, controlled-sqrt(X), controlled-sqrt(X)^dagger}, conjugated by
/// NOT on both controls to make them trigger on 0. Composes to
/// toffoli_nor_unitary() (exactly, global phase 1).
inline std::vector<Gate> toffoli_nor_decomposition() {
  return {
      {GateKind::kNot, -1, 0},
      {GateKind::kNot, -1, 1},
      {GateKind::kControlledSqrtX, 1, 2},
      {GateKind::kCnot, 0, 1},
      {GateKind::kControlledSqrtXDag, 1, 2},
      {GateKind::kCnot, 0, 1},
      {GateKind::kControlledSqrtX, 0, 2},
      {GateKind::kNot, -1, 0},
      {GateKind::kNot, -1, 1},
  };
}

/// Product of a gate list in application order (front of the list acts
/// first).
inline ComplexMatrix compose_gates(const std::vector<Gate>& gates, std::size_t n = 3) {
  ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << n);
  for (const Gate& g : gates) u = gate_unitary(g, n) * u;
  return u;
}

/// Control-conditioned parallel application of the set/reset maps on the
/// (Q, Qbar) pair; the first branch runs the reset map on Q and the set map
/// on Qbar, the second branch swaps them.
inline KrausChannel latch_step(const DensityOperator& control, const KrausChannel& map_s,
                               const KrausChannel& map_r) {
  return controlled_assignment(control, map_r, map_s);
}

enum class LatchControl { kFixed0, kFixed1, kPlus };

struct LatchConfig {
  LatchControl control = LatchControl::kPlus;
  std::array<int, 2> inputs = {0, 0};  // seeds of the two gate targets
  double kappa = 1.0 / 3.0;            // mixing weight of the resource state

  void validate() const {
    if ((inputs[0] != 0 && inputs[0] != 1) || (inputs[1] != 0 && inputs[1] != 1)) {
      throw std::invalid_argument("LatchConfig: inputs must be bits");
    }
    if (!(kappa >= 0.0 && kappa <= 1.0)) {
      throw std::invalid_argument("LatchConfig: kappa outside [0, 1]");
    }
  }
};

struct LatchTableRow {
  int c;
  int s;
  int r;
  int q;
  int q_bar;
};

/// Summary of the gravity resource state attached to a latch run; it
/// explains the storage mechanism but plays no role in the ideal output.
struct LatchResource {
  double kappa = 0.0;
  double min_eigenvalue = 0.0;
  bool within_low_kappa_regime = false;
};

struct LatchResult {
  DensityOperator joint_state;  // slots (Q, Qbar)
  double fidelity_bell = 0.0;   // against (|01> + |10>)/sqrt(2)
  std::optional<LatchTableRow> table_row;
  // Output of the block-diagonal Kraus reading, which decoheres the control
  // branches; kept for comparison with the coherent joint_state.
  DensityOperator decohered_state;
  LatchResource resource;
};

namespace detail {

// One stable evaluation of the cross-coupled pair
//   Q    = A1 xor NOR(R, Qbar)
//   Qbar = A2 xor NOR(S, Q)
// The active control forces one NOR low, which pins its side and lets the
// other settle; a couple of passes reach the unique fixed point.
inline std::pair<int, int> latch_branch(int c, int a1, int a2) {
  const int s = c == 0 ? 1 : 0;
  const int r = 1 - s;
  auto nor = [](int x, int y) { return (x == 0 && y == 0) ? 1 : 0; };
  int q = 0;
  int q_bar = 0;
  for (int pass = 0; pass < 3; ++pass) {
    q = a1 ^ nor(r, q_bar);
    q_bar = a2 ^ nor(s, q);
  }
  return {q, q_bar};
}

inline CVector two_bit_ket(int q, int q_bar) {
  return basis_ket(4, std::size_t(q) * 2 + std::size_t(q_bar));
}

}  // namespace detail

inline CVector latch_bell_target() {
  const double inv = 1.0 / std::sqrt(2.0);
  CVector v(4, Complex{0.0, 0.0});
  v[1] = inv;  // |01>
  v[2] = inv;  // |10>
  return v;
}

/// Single-pass latch evaluation. Fixed controls reproduce the classical
/// truth-table rows. The superposed control carries both branches
/// coherently; once the control register is identified with the branch
/// outcomes, the stored pair is the pure superposition of the two branch
/// outputs (the block-diagonal channel reading, which would decohere it, is
/// reported alongside).
inline LatchResult run_latch(const LatchConfig& cfg) {
  cfg.validate();
  const std::vector<std::string> out_slots = {"Q", "Qbar"};

  const auto [q0, qb0] = detail::latch_branch(0, cfg.inputs[0], cfg.inputs[1]);
  const auto [q1, qb1] = detail::latch_branch(1, cfg.inputs[0], cfg.inputs[1]);

  const DensityOperator resource_state(
      gravity_tripartite(GravityStateParams(cfg.kappa)).matrix(), {"GE", "R", "S"});
  LatchResource resource;
  resource.kappa = cfg.kappa;
  resource.min_eigenvalue = resource_state.validity().min_eigenvalue;
  resource.within_low_kappa_regime = cfg.kappa <= 1.0 / 3.0 + 1e-12;

  if (cfg.control != LatchControl::kPlus) {
    const int c = cfg.control == LatchControl::kFixed0 ? 0 : 1;
    const auto [q, qb] = c == 0 ? std::pair{q0, qb0} : std::pair{q1, qb1};
    DensityOperator joint =
        DensityOperator::from_pure(detail::two_bit_ket(q, qb), out_slots);
    LatchResult result{joint, fidelity_pure(joint, latch_bell_target()),
                       LatchTableRow{c, c == 0 ? 1 : 0, c == 0 ? 0 : 1, q, qb}, joint,
                       resource};
    return result;
  }

  // Coherent control: equal superposition of the two branch outputs.
  const CVector k0 = detail::two_bit_ket(q0, qb0);
  const CVector k1 = detail::two_bit_ket(q1, qb1);
  CVector psi(4, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < 4; ++i) psi[i] = k0[i] + k1[i];
  const double n = norm(psi);
  for (auto& z : psi) z /= n;
  DensityOperator joint = DensityOperator::from_pure(psi, out_slots);

  ComplexMatrix mixed(4, 4);
  mixed += outer_product(k0, k0) * 0.5;
  mixed += outer_product(k1, k1) * 0.5;
  DensityOperator decohered(std::move(mixed), out_slots);

  LatchResult result{joint, fidelity_pure(joint, latch_bell_target()), std::nullopt,
                     decohered, resource};
  return result;
}

}  // namespace qgrav
