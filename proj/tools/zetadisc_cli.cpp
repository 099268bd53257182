// Copyright 2026 The zetadisc Authors
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

#include <CLI11.hpp>
#include <iostream>

#include "zetadisc/cli.hpp"

namespace {

using namespace zetadisc;
using namespace zetadisc::cli;

void add_model_options(CLI::App* sub, HydrogenParams& model) {
  sub->add_option("--mass", model.m, "Electron mass m")->capture_default_str();
  sub->add_option("--coupling", model.q, "Electric coupling q")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discretized vacuum expectation values and their zeta-regularization"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.set_config("--config", "", "TOML key = value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  std::string out_dir = ".";
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", common.seed, "Seed for restarts and sampling")->capture_default_str();
  app.add_flag("--check", common.check, "Exit with code 4 when the acceptance check fails");

  HydrogenConvergenceConfig conv;
  auto* conv_cmd = app.add_subcommand("hydrogen-convergence", "Vacuum energy sweep and exponential fit");
  conv_cmd->configurable();
  conv_cmd->add_option("--mode", conv.mode, "dimension or qubits")
      ->check(CLI::IsMember({"dimension", "qubits"}))
      ->capture_default_str();
  conv_cmd->add_option("--n-list", conv.n_list, "Dimensions; the last one is the reference")
      ->delimiter(',');
  conv_cmd->add_option("--q-max", conv.q_max, "Largest qubit count (reference) in qubit mode")
      ->capture_default_str();
  add_model_options(conv_cmd, conv.model);

  VqeConfig vqe;
  auto* vqe_cmd = app.add_subcommand("vqe", "Warm-started variational eigensolver, Q = 1..q-max");
  vqe_cmd->configurable();
  vqe_cmd->add_option("--q-max", vqe.q_max, "Largest qubit count")->capture_default_str();
  vqe_cmd->add_option("--layers", vqe.layers, "Ansatz depth L")->capture_default_str();
  vqe_cmd->add_option("--optimizer", vqe.optimizer, "cg or sweep")
      ->check(CLI::IsMember({"cg", "sweep"}))
      ->capture_default_str();
  vqe_cmd->add_option("--sweeps", vqe.sweeps, "Loops over all parameters (sweep)")->capture_default_str();
  vqe_cmd->add_option("--cg-tol", vqe.cg_tol, "Gradient-norm tolerance (cg)")->capture_default_str();
  vqe_cmd->add_option("--fd-step", vqe.fd_step, "Central-difference step (cg)")->capture_default_str();
  vqe_cmd->add_option("--max-iterations", vqe.max_iterations, "Iteration cap per attempt")
      ->capture_default_str();
  vqe_cmd->add_option("--restarts", vqe.restarts, "Seeded restarts after a stall")->capture_default_str();
  vqe_cmd->add_option("--shots", vqe.shots, "Shots per Pauli term for sampled energies (0 = off)")
      ->capture_default_str();
  add_model_options(vqe_cmd, vqe.model);

  ZetaConfig zeta;
  auto* zeta_cmd = app.add_subcommand("zeta", "Gauge ratios, free-field and Fock-space ratios");
  zeta_cmd->configurable();
  zeta_cmd->add_option("--n-list", zeta.n_list, "Dimensions for the ratio scan")->delimiter(',');
  zeta_cmd->add_option("--observable", zeta.observable, "H or position")
      ->check(CLI::IsMember({"H", "position"}))
      ->capture_default_str();
  zeta_cmd->add_option("--re-min", zeta.re_min)->capture_default_str();
  zeta_cmd->add_option("--re-max", zeta.re_max)->capture_default_str();
  zeta_cmd->add_option("--re-count", zeta.re_count)->capture_default_str();
  zeta_cmd->add_option("--im-min", zeta.im_min)->capture_default_str();
  zeta_cmd->add_option("--im-max", zeta.im_max)->capture_default_str();
  zeta_cmd->add_option("--im-count", zeta.im_count)->capture_default_str();
  zeta_cmd->add_option("--exclusion-radius", zeta.exclusion_radius)->capture_default_str();
  zeta_cmd->add_option("--freefield-n-max", zeta.freefield_n_max)->capture_default_str();
  zeta_cmd->add_option("--freefield-t", zeta.freefield_t, "Evolution times")->delimiter(',');
  zeta_cmd->add_option("--freefield-x", zeta.freefield_x, "Spatial period X")->capture_default_str();
  zeta_cmd->add_option("--fock-t", zeta.fock_t)->capture_default_str();
  zeta_cmd->add_option("--fock-cutoff", zeta.fock_cutoff)->capture_default_str();
  add_model_options(zeta_cmd, zeta.model);

  PauliExportConfig pauli;
  auto* pauli_cmd = app.add_subcommand("pauli-export", "Pauli coefficients of the hydrogen H_Q as CSV");
  pauli_cmd->configurable();
  pauli_cmd->add_option("--qubits", pauli.qubits, "Qubit counts")->delimiter(',');
  add_model_options(pauli_cmd, pauli.model);

  LemmaProbeConfig probes;
  auto* probe_cmd = app.add_subcommand("lemma-probes", "Strong and trace-norm convergence probes");
  probe_cmd->configurable();
  probe_cmd->add_option("--n-ref", probes.n_ref, "Reference grid for strong probes")->capture_default_str();
  probe_cmd->add_option("--n-list", probes.n_list)->delimiter(',');
  probe_cmd->add_option("--schatten-n-ref", probes.schatten_n_ref)->capture_default_str();
  probe_cmd->add_option("--schatten-n-list", probes.schatten_n_list)->delimiter(',');
  probe_cmd->add_option("--sobolev-s", probes.sobolev_s, "Exponent s of the weight (1+k^2)^s")
      ->capture_default_str();
  add_model_options(probe_cmd, probes.model);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }
  common.out = out_dir;

  try {
    if (*conv_cmd) return cmd_hydrogen_convergence(conv, common, std::cout);
    if (*vqe_cmd) return cmd_vqe(vqe, common, std::cout);
    if (*zeta_cmd) return cmd_zeta(zeta, common, std::cout);
    if (*pauli_cmd) return cmd_pauli_export(pauli, common, std::cout);
    if (*probe_cmd) return cmd_lemma_probes(probes, common, std::cout);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidArgument ? kConfigError : kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kConfigError;
}
