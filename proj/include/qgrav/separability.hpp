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

#include <string>
#include <vector>

#include "qgrav/gravity_states.hpp"
#include "qgrav/states.hpp"

namespace qgrav {

enum class PptVerdict { kPpt, kNpt };

/// Partial-transpose spectrum report for one cut.
struct PptReport {
  std::string cut;
  std::vector<double> spectrum;  // ascending
  double min_eigenvalue = 0.0;
  double negativity = 0.0;  // sum of |negative eigenvalues|
  PptVerdict verdict = PptVerdict::kPpt;

  bool is_npt() const { return verdict == PptVerdict::kNpt; }
};

/// Eigen-decompose the partial transpose across the named slot. The input
/// only needs to be Hermitian with unit trace; the report is meaningful as
/// an audit even when the input itself is not PSD.
inline PptReport ppt_check(const DensityOperator& rho, const std::string& slot,
                           double sign_tol = kEigSignTol) {
  PptReport report;
  report.cut = slot;
  const ComplexMatrix pt = partial_transpose(rho, slot);
  report.spectrum = hermitian_eigenvalues(pt, std::max(rho.tolerance(), 1e-10));
  report.min_eigenvalue = report.spectrum.front();
  double neg = 0.0;
  for (double lambda : report.spectrum) {
    if (lambda < -sign_tol) neg -= lambda;
  }
  report.negativity = neg;
  report.verdict = report.min_eigenvalue < -sign_tol ? PptVerdict::kNpt : PptVerdict::kPpt;
  return report;
}

/// Partial-transpose audit of the gravity state family at one omega:
/// all three cuts of the tripartite state, both cuts of its two-qubit
/// reduction, and the positivity of the tripartite matrix itself.
struct PartitionAudit {
  double omega = 0.0;
  std::vector<PptReport> tripartite_cuts;  // cuts GE, E1, B2
  std::vector<PptReport> marginal_cuts;    // cuts GE, E1 of the 4x4 reduction
  double state_min_eigenvalue = 0.0;
  bool state_psd = true;
  // Computed facts the caller may want to contrast with expectations:
  // transposing B2 leaves this matrix invariant (its only coherence pair is
  // diagonal in that slot), so the B2 cut inherits the state's own spectrum,
  // and the E1 cut shares the GE cut's negative eigenvalue.
  bool e1_cut_nonnegative = true;
  bool b2_cut_nonnegative = true;
};

inline PartitionAudit full_partition_audit(double omega) {
  const GravityStateParams p(omega);
  PartitionAudit audit;
  audit.omega = omega;

  const DensityOperator tri = gravity_tripartite(p);
  for (const char* cut : {"GE", "E1", "B2"}) {
    audit.tripartite_cuts.push_back(ppt_check(tri, cut));
  }
  const DensityOperator marginal = bell_diagonal_marginal(p);
  for (const char* cut : {"GE", "E1"}) {
    audit.marginal_cuts.push_back(ppt_check(marginal, cut));
  }

  const ValidityReport v = tri.validity();
  audit.state_min_eigenvalue = v.min_eigenvalue;
  audit.state_psd = v.psd;
  audit.e1_cut_nonnegative = !audit.tripartite_cuts[1].is_npt();
  audit.b2_cut_nonnegative = !audit.tripartite_cuts[2].is_npt();
  return audit;
}

}  // namespace qgrav
