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

// qgrav: command-line front end. Subcommands mirror the analysis surface:
//   state    gravity state family matrices, spectra and validity
//   ppt      partial-transpose audit of every cut
//   sweep    correlation measures over an omega range (CSV)
//   game     process-matrix guessing game
//   channel  two-Kraus channel family diagnostics
//   latch    SR-latch simulation
//
// Exit codes: 0 success, 2 flag/domain validation failure, 1 internal error.
// The QGRAV_TOL environment variable overrides the eigenvalue sign tolerance
// used for PSD/PPT verdicts.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgrav/qgrav.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace qgrav;

double sign_tolerance() {
  if (const char* env = std::getenv("QGRAV_TOL")) {
    try {
      const double tol = std::stod(env);
      if (tol > 0.0) return tol;
    } catch (const std::exception&) {
      throw std::invalid_argument("QGRAV_TOL is not a number");
    }
    throw std::invalid_argument("QGRAV_TOL must be positive");
  }
  return kEigSignTol;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Json state_block(const DensityOperator& rho, double tol) {
  const auto eig = hermitian_eigenvalues(rho.matrix());
  const ValidityReport v = rho.validity();
  return Json{{"slots", rho.slots()},
              {"matrix", matrix_to_json(rho.matrix())},
              {"eigenvalues", eig},
              {"validity",
               Json{{"hermiticity_error", v.hermiticity_error},
                    {"trace_error", v.trace_error},
                    {"min_eigenvalue", v.min_eigenvalue},
                    {"psd", v.min_eigenvalue >= -tol}}}};
}

Json ppt_report_to_json(const PptReport& r) {
  return Json{{"cut", r.cut},
              {"min_eigenvalue", r.min_eigenvalue},
              {"negativity", r.negativity},
              {"verdict", r.is_npt() ? "NPT" : "PPT"},
              {"spectrum", r.spectrum}};
}

void emit(const Json& j) { std::fputs((j.dump(2) + "\n").c_str(), stdout); }

int cmd_state(double omega) {
  const double tol = sign_tolerance();
  const GravityStateParams p(omega);
  Json out{{"omega", omega},
           {"within_low_omega_regime", p.within_low_omega_regime()},
           {"tripartite", state_block(gravity_tripartite(p), tol)},
           {"marginal", state_block(bell_diagonal_marginal(p), tol)}};
  emit(out);
  return 0;
}

int cmd_ppt(double omega) {
  const double tol = sign_tolerance();
  const GravityStateParams p(omega);
  const DensityOperator tri = gravity_tripartite(p);
  const DensityOperator marginal = bell_diagonal_marginal(p);

  Json tri_cuts = Json::array();
  for (const char* cut : {"GE", "E1", "B2"}) {
    tri_cuts.push_back(ppt_report_to_json(ppt_check(tri, cut, tol)));
  }
  Json marginal_cuts = Json::array();
  for (const char* cut : {"GE", "E1"}) {
    marginal_cuts.push_back(ppt_report_to_json(ppt_check(marginal, cut, tol)));
  }
  const ValidityReport v = tri.validity();
  Json out{
      {"omega", omega},
      {"state",
       Json{{"min_eigenvalue", v.min_eigenvalue}, {"psd", v.min_eigenvalue >= -tol}}},
      {"tripartite_cuts", std::move(tri_cuts)},
      {"marginal_cuts", std::move(marginal_cuts)},
      {"note",
       "the remote-output transpose leaves this matrix invariant, and the "
       "local-environment cut shares the gravity cut's negative eigenvalue"}};
  emit(out);
  return 0;
}

int cmd_sweep(double omega_min, double omega_max, std::size_t steps) {
  const auto rows = figure4_sweep(omega_min, omega_max, steps);
  std::fputs("omega,mutual_info,classical_corr,discord,coherent_info,coherent_info_abs\n",
             stdout);
  for (const auto& r : rows) {
    std::printf("%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.omega, r.mutual_info,
                r.classical_corr, r.discord, r.coherent_info, r.coherent_info_abs);
  }
  return 0;
}

int cmd_game() {
  const ProcessMatrix w = build_ocb_process();
  const auto v = w.validate();
  Json out{{"game_value", ocb_game_value(w)},
           {"psd_min_eigenvalue", v.min_eigenvalue},
           {"trace", w.matrix.trace().real()},
           {"normalization_max_error", normalization_max_error(w, 50, 0x51c0ffee)}};
  emit(out);
  return 0;
}

int cmd_channel(double u, double v) {
  const AntiDegradableParams p(u, v);
  const KrausChannel ch = anti_degradable_channel(p);
  const auto t = transfer_matrix(ch);

  // Closed-form identities the transfer matrix must satisfy.
  const double l1 = p.lambda1(), l2 = p.lambda2(), l3 = p.lambda3(), t3 = p.t3();
  double identity_error = std::abs(l3 - l1 * l2);
  identity_error = std::max(identity_error,
                            std::abs(t3 * t3 - (1.0 - l1 * l1) * (1.0 - l2 * l2)));
  for (int sign : {+1, -1}) {
    const double lhs = (l1 + sign * l2) * (l1 + sign * l2);
    const double rhs = (1.0 + sign * l3) * (1.0 + sign * l3) - t3 * t3;
    identity_error = std::max(identity_error, std::abs(lhs - rhs));
  }
  const double expected[4][4] = {
      {1, 0, 0, 0}, {0, l1, 0, 0}, {0, 0, l2, 0}, {t3, 0, 0, l3}};
  double transfer_error = 0.0;
  Json t_json = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) {
      row.push_back(t[i][j]);
      transfer_error = std::max(transfer_error, std::abs(t[i][j] - expected[i][j]));
    }
    t_json.push_back(std::move(row));
  }

  Json kraus = Json::array();
  for (const auto& op : ch.kraus_ops()) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < op.rows(); ++i)
      for (std::size_t j = 0; j < op.cols(); ++j)
        entries.push_back(Json::array({op(i, j).real(), op(i, j).imag()}));
    kraus.push_back(std::move(entries));
  }

  Json out{{"u", u},
           {"v", v},
           {"lambda", Json::array({l1, l2, l3})},
           {"t3", t3},
           {"anti_degradable", p.anti_degradable()},
           {"anti_degradable_alt_form", p.anti_degradable_alt_form()},
           {"identities_ok", identity_error <= 1e-12 && transfer_error <= 1e-12},
           {"transfer_matrix", std::move(t_json)},
           {"channel", Json{{"d_in", ch.d_in()}, {"d_out", ch.d_out()},
                            {"kraus", std::move(kraus)}}}};
  emit(out);
  return 0;
}

int cmd_latch(const std::string& control, const std::string& inputs, double kappa) {
  LatchConfig cfg;
  if (control == "0") {
    cfg.control = LatchControl::kFixed0;
  } else if (control == "1") {
    cfg.control = LatchControl::kFixed1;
  } else if (control == "plus") {
    cfg.control = LatchControl::kPlus;
  } else {
    throw std::invalid_argument("latch: control must be one of 0, 1, plus");
  }
  if (inputs.size() != 2 || (inputs[0] != '0' && inputs[0] != '1') ||
      (inputs[1] != '0' && inputs[1] != '1')) {
    throw std::invalid_argument("latch: inputs must be two bits, e.g. 00");
  }
  cfg.inputs = {inputs[0] - '0', inputs[1] - '0'};
  cfg.kappa = kappa;

  const LatchResult result = run_latch(cfg);
  const PptReport ppt = ppt_check(result.joint_state, "Q", sign_tolerance());

  Json out{{"control", control},
           {"inputs", inputs},
           {"kappa", cfg.kappa}};
  if (result.table_row) {
    out["table_row"] = Json{{"C", result.table_row->c},
                            {"S", result.table_row->s},
                            {"R", result.table_row->r},
                            {"Q", result.table_row->q},
                            {"Qbar", result.table_row->q_bar}};
  } else {
    out["joint_state"] = matrix_to_json(result.joint_state.matrix());
    out["decohered_state"] = matrix_to_json(result.decohered_state.matrix());
  }
  out["fidelity_bell"] = result.fidelity_bell;
  out["negativity"] = ppt.negativity;
  out["resource"] = Json{{"kappa", result.resource.kappa},
                         {"min_eigenvalue", result.resource.min_eigenvalue},
                         {"within_low_kappa_regime",
                          result.resource.within_low_kappa_regime}};
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-information numerics for the gravity state family"};
  app.require_subcommand(1);

  double omega = 1.0 / 3.0;
  auto* state = app.add_subcommand("state", "state family matrices and validity");
  state->add_option("--omega", omega, "mixing weight in [0, 1]")->required();

  double ppt_omega = 1.0 / 3.0;
  auto* ppt = app.add_subcommand("ppt", "partial-transpose audit of every cut");
  ppt->add_option("--omega", ppt_omega, "mixing weight in [0, 1]")->required();

  double omega_min = 0.01, omega_max = 1.0 / 3.0;
  std::size_t steps = 100;
  auto* sweep = app.add_subcommand("sweep", "correlation measures over omega (CSV)");
  sweep->add_option("--omega-min,--omega_min", omega_min,
                    "lower endpoint (exclusive of 0)")
      ->required();
  sweep->add_option("--omega-max,--omega_max", omega_max, "upper endpoint (at most 1/3)")
      ->required();
  sweep->add_option("--steps", steps, "row count (at least 2)")->required();

  auto* game = app.add_subcommand("game", "process-matrix guessing game");

  double u = 0.0, v = 0.0;
  auto* channel = app.add_subcommand("channel", "two-Kraus channel diagnostics");
  channel->add_option("--u", u, "first angle (radians)")->required();
  channel->add_option("--v", v, "second angle (radians)")->required();

  std::string control = "plus", inputs = "00";
  double kappa = 1.0 / 3.0;
  auto* latch = app.add_subcommand("latch", "SR-latch simulation");
  latch->add_option("--control", control, "0, 1 or plus")->required();
  latch->add_option("--inputs", inputs, "two bits, e.g. 00")->required();
  latch->add_option("--kappa", kappa, "resource mixing weight in [0, 1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (state->parsed()) return cmd_state(omega);
    if (ppt->parsed()) return cmd_ppt(ppt_omega);
    if (sweep->parsed()) return cmd_sweep(omega_min, omega_max, steps);
    if (game->parsed()) return cmd_game();
    if (channel->parsed()) return cmd_channel(u, v);
    if (latch->parsed()) return cmd_latch(control, inputs, kappa);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 1;
}
