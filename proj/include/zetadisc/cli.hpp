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

#pragma once

// Experiment drivers behind the zetadisc command-line tool. Each command
// writes its artifacts into an output directory and returns an exit code.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zetadisc/zetadisc.hpp"

#ifndef ZETADISC_VERSION
#define ZETADISC_VERSION "0.0.0"
#endif

namespace zetadisc::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericFailure = 3, kCheckFailure = 4 };

inline constexpr const char* kToolName = "zetadisc";
inline constexpr const char* kToolVersion = ZETADISC_VERSION;

struct Common {
  std::filesystem::path out = ".";
  std::uint64_t seed = 1;
  bool check = false;
};

/// FNV-1a over the bytes of s.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Provenance block shared by every artifact: tool, version, config hash and
/// the effective configuration itself.
inline Json header_block(const std::string& command, const Json& config) {
  Json h;
  h["tool"] = kToolName;
  h["version"] = kToolVersion;
  h["command"] = command;
  h["config_hash"] = to_hex(fnv1a(config.dump()));
  h["config"] = config;
  return h;
}

inline std::vector<std::string> csv_preamble(const Json& header) {
  return {std::string("tool ") + kToolName + " " + kToolVersion,
          "command " + header["command"].get<std::string>(),
          "config_hash " + header["config_hash"].get<std::string>()};
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / name, std::ios::binary);
  if (!os) throw Error(ErrorKind::InvalidArgument, "cannot write " + (dir / name).string());
  return os;
}

inline void write_json(const std::filesystem::path& dir, const std::string& name, const Json& j) {
  open_output(dir, name) << j.dump(2) << '\n';
}

inline auto hydrogen_elements(const HydrogenParams& p) {
  p.validate();
  return [p](std::int64_t l, std::int64_t k) { return hydrogen_element(l, k, p); };
}

inline auto position_elements() {
  return [](std::int64_t l, std::int64_t k) { return position_element(l, k); };
}

inline auto identity_elements() {
  return [](std::int64_t l, std::int64_t k) { return Complex(l == k ? 1.0 : 0.0); };
}

inline bool within_relative(double value, double target, double tol) {
  return std::abs(value - target) <= tol * std::abs(target);
}

// ---------------------------------------------------------------------------
// hydrogen-convergence
// ---------------------------------------------------------------------------

struct HydrogenConvergenceConfig {
  std::string mode = "dimension";  ///< "dimension" or "qubits"
  std::vector<std::int64_t> n_list = [] {
    std::vector<std::int64_t> v;
    for (std::int64_t n = 50; n <= 1050; n += 50) v.push_back(n);
    return v;
  }();
  int q_max = 12;
  HydrogenParams model{};

  Json to_json() const {
    return Json{{"mode", mode}, {"n_list", n_list}, {"q_max", q_max},
                {"mass", model.m}, {"coupling", model.q}};
  }
};

inline constexpr double kDimensionRateTarget = 0.00644;
inline constexpr double kQubitRateTarget = 1.92;
inline constexpr double kRateTolerance = 0.15;

struct ConvergenceOutcome {
  ConvergenceSeries series;
  std::vector<double> errors;
  bool fitted = false;
  ExponentialFit fit;
  std::string warning;
};

/// Vacuum energies along the sweep. The last entry is the reference and is
/// left out of the fit.
inline ConvergenceOutcome hydrogen_convergence(const HydrogenConvergenceConfig& cfg) {
  std::vector<std::int64_t> abscissa;
  std::vector<Index> dims;
  if (cfg.mode == "dimension") {
    abscissa = cfg.n_list;
    for (std::int64_t n : abscissa) dims.push_back(n);
  } else if (cfg.mode == "qubits") {
    if (cfg.q_max < 2 || cfg.q_max > 13) {
      throw Error(ErrorKind::InvalidArgument, "q_max must be in [2, 13]");
    }
    for (int q = 1; q <= cfg.q_max; ++q) {
      abscissa.push_back(q);
      dims.push_back(Index{1} << q);
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "mode must be 'dimension' or 'qubits'");
  }
  if (abscissa.size() < 2) throw Error(ErrorKind::InvalidArgument, "sweep needs >= 2 points");

  const auto element = hydrogen_elements(cfg.model);
  ConvergenceOutcome out;
  out.series.abscissa = abscissa;
  for (Index n : dims) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimensions must be >= 1");
    out.series.values.push_back(vacuum_state(project_operator(element, n)).energy);
  }
  out.series.reference = out.series.values.back();
  out.errors = relative_errors(out.series);

  std::vector<double> x, e;
  for (std::size_t i = 0; i + 1 < abscissa.size(); ++i) {
    x.push_back(static_cast<double>(abscissa[i]));
    e.push_back(out.errors[i]);
  }
  try {
    out.fit = fit_exponential(x, e);
    out.fitted = true;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::DegenerateFit && err.kind() != ErrorKind::DimensionMismatch) {
      throw;
    }
    out.warning = err.what();
  }
  return out;
}

inline int cmd_hydrogen_convergence(const HydrogenConvergenceConfig& cfg, const Common& common,
                                    std::ostream& log) {
  const ConvergenceOutcome r = hydrogen_convergence(cfg);
  const Json header = header_block("hydrogen-convergence", cfg.to_json());

  std::ofstream csv = open_output(common.out, "convergence.csv");
  for (const std::string& line : csv_preamble(header)) csv << "# " << line << '\n';
  csv << "abscissa,energy,rel_error\n";
  for (std::size_t i = 0; i < r.errors.size(); ++i) {
    csv << r.series.abscissa[i] << ',' << fmt(r.series.values[i]) << ',' << fmt(r.errors[i])
        << '\n';
  }

  Json fit;
  fit["header"] = header;
  if (r.fitted) {
    fit["a"] = r.fit.a;
    fit["b"] = r.fit.b;
    fit["r_squared"] = r.fit.r_squared;
  } else {
    fit["a"] = nullptr;
    fit["b"] = nullptr;
    fit["r_squared"] = nullptr;
    fit["warning"] = r.warning;
    log << "warning: " << r.warning << '\n';
  }
  fit["reference"] = r.series.reference;
  fit["reference_abscissa"] = r.series.abscissa.back();
  write_json(common.out, "fit.json", fit);

  if (r.fitted) log << "fit: a = " << fmt(r.fit.a) << ", b = " << fmt(r.fit.b) << '\n';
  if (common.check) {
    const double target = cfg.mode == "dimension" ? kDimensionRateTarget : kQubitRateTarget;
    const bool ok = r.fitted && within_relative(r.fit.b, target, kRateTolerance);
    log << (ok ? "check passed" : "check FAILED") << ": b vs " << target << " +-15%\n";
    if (!ok) return kCheckFailure;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// vqe
// ---------------------------------------------------------------------------

struct VqeConfig {
  int q_max = 5;
  int layers = kDefaultLayers;
  std::string optimizer = "cg";  ///< "cg" or "sweep"
  int sweeps = 3;
  double cg_tol = 1e-9;
  double fd_step = 1e-6;
  int max_iterations = 20000;
  int restarts = 5;
  std::int64_t shots = 0;
  HydrogenParams model{};

  OptimizerConfig optimizer_config(std::uint64_t seed) const {
    OptimizerConfig c;
    if (optimizer == "cg") {
      c.kind = OptimizerKind::conjugate_gradient;
    } else if (optimizer == "sweep") {
      c.kind = OptimizerKind::coordinate_sweep;
    } else {
      throw Error(ErrorKind::InvalidArgument, "optimizer must be 'cg' or 'sweep'");
    }
    c.sweeps = sweeps;
    c.cg_tol = cg_tol;
    c.fd_step = fd_step;
    c.max_iterations = max_iterations;
    c.restarts = restarts;
    c.seed = seed;
    c.validate();
    return c;
  }

  Json to_json(std::uint64_t seed) const {
    return Json{{"q_max", q_max},       {"layers", layers},
                {"optimizer", optimizer}, {"sweeps", sweeps},
                {"cg_tol", cg_tol},     {"fd_step", fd_step},
                {"max_iterations", max_iterations}, {"restarts", restarts},
                {"shots", shots},       {"seed", seed},
                {"mass", model.m},      {"coupling", model.q}};
  }
};

inline constexpr int kMaxVqeQubits = 12;
inline constexpr double kVqeTolerance = 1e-6;
inline constexpr double kSweepTolerance = 1e-4;

inline int cmd_vqe(const VqeConfig& cfg, const Common& common, std::ostream& log) {
  if (cfg.q_max < 1 || cfg.q_max > kMaxVqeQubits) {
    throw Error(ErrorKind::InvalidArgument, "q_max must be in [1, 12]");
  }
  if (cfg.shots < 0) throw Error(ErrorKind::InvalidArgument, "shots must be >= 0");
  const OptimizerConfig opt = cfg.optimizer_config(common.seed);
  const auto element = hydrogen_elements(cfg.model);
  std::vector<PauliCoefficients> chain;
  for (int q = 1; q <= cfg.q_max; ++q) {
    chain.push_back(decompose(project_operator(element, Index{1} << q)));
  }
  const std::vector<MinimizeResult> results = warm_start_chain(chain, cfg.layers, opt);

  const Json header = header_block("vqe", cfg.to_json(common.seed));
  Json doc;
  doc["header"] = header;
  Json rows = Json::array();
  bool ok = true;
  const double tol = cfg.optimizer == "cg" ? kVqeTolerance : kSweepTolerance;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const MinimizeResult& r = results[i];
    const int q = static_cast<int>(i) + 1;
    Json row;
    row["qubits"] = q;
    row["exact_minimum"] = r.exact_minimum;
    row["vqe_energy"] = r.energy;
    row["deviation"] = r.energy - r.exact_minimum;
    row["iterations"] = r.trace.size();
    row["attempts"] = r.attempts;
    row["stalled"] = r.stalled;
    ok = ok && (r.energy - r.exact_minimum) <= tol;
    if (cfg.shots > 0) {
      const SampledEnergy s = sampled_energy(apply_ansatz({q, cfg.layers}, r.params), chain[i],
                                             cfg.shots, common.seed + std::uint64_t(q));
      row["sampled_energy"] = s.estimate;
      row["sampled_standard_error"] = s.standard_error;
      ok = ok && std::abs(s.estimate - r.energy) <= 3.0 * s.standard_error;
    }
    log << "Q=" << q << " exact " << fmt(r.exact_minimum) << " vqe " << fmt(r.energy)
        << " deviation " << fmt(r.energy - r.exact_minimum) << '\n';
    rows.push_back(std::move(row));
  }
  doc["results"] = std::move(rows);
  write_json(common.out, "vqe_results.json", doc);

  std::ofstream jsonl = open_output(common.out, "iterations.jsonl");
  jsonl << Json{{"header", header}}.dump() << '\n';
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const IterationRecord& rec : results[i].trace) {
      Json line;
      line["qubits"] = static_cast<int>(i) + 1;
      line["iteration"] = rec.iteration;
      line["energy"] = rec.energy;
      line["gradient_norm"] = rec.gradient_norm;
      line["params_hash"] = to_hex(rec.params_hash);
      jsonl << line.dump() << '\n';
    }
  }

  if (common.check) {
    log << (ok ? "check passed" : "check FAILED") << ": deviations <= " << tol << '\n';
    if (!ok) return kCheckFailure;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// zeta
// ---------------------------------------------------------------------------

struct ZetaConfig {
  std::vector<std::int64_t> n_list{8, 16, 32, 64, 128, 256, 512};
  std::string observable = "H";  ///< "H" or "position"
  double re_min = -1.0, re_max = 0.5;
  int re_count = 3;
  double im_min = -0.5, im_max = 0.5;
  int im_count = 3;
  double exclusion_radius = 0.1;
  int freefield_n_max = 5;
  std::vector<double> freefield_t{1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};
  double freefield_x = 1.0;
  double fock_t = 1e6;
  int fock_cutoff = 40;
  HydrogenParams model{};

  Json to_json() const {
    return Json{{"n_list", n_list},
                {"observable", observable},
                {"re_min", re_min}, {"re_max", re_max}, {"re_count", re_count},
                {"im_min", im_min}, {"im_max", im_max}, {"im_count", im_count},
                {"exclusion_radius", exclusion_radius},
                {"freefield_n_max", freefield_n_max},
                {"freefield_t", freefield_t},
                {"freefield_x", freefield_x},
                {"fock_t", fock_t},
                {"fock_cutoff", fock_cutoff},
                {"mass", model.m}, {"coupling", model.q}};
  }
};

inline constexpr double kFockBound = 1e-5;

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline int cmd_zeta(const ZetaConfig& cfg, const Common& common, std::ostream& log) {
  if (cfg.observable != "H" && cfg.observable != "position") {
    throw Error(ErrorKind::InvalidArgument, "observable must be 'H' or 'position'");
  }
  std::vector<Index> n_list(cfg.n_list.begin(), cfg.n_list.end());
  const auto h_element = hydrogen_elements(cfg.model);
  const ZGrid full =
      ZGrid::rectangle(cfg.re_min, cfg.re_max, cfg.re_count, cfg.im_min, cfg.im_max, cfg.im_count);

  // Zeros of every denominator on the grid, then the scan on what is left.
  std::vector<Complex> zeros;
  for (Index n : n_list) {
    for (const Complex& z : denominator_zero_scan(project_operator(h_element, n), full)) {
      if (std::find(zeros.begin(), zeros.end(), z) == zeros.end()) zeros.push_back(z);
    }
  }
  const ZGrid grid = full.excluding(zeros, cfg.exclusion_radius);
  const RatioScan scan =
      cfg.observable == "H"
          ? ratio_convergence_scan(h_element, h_element, grid, n_list)
          : ratio_convergence_scan(h_element, position_elements(), grid, n_list);

  const Json header = header_block("zeta", cfg.to_json());
  std::ofstream csv = open_output(common.out, "zeta_grid.csv");
  for (const std::string& line : csv_preamble(header)) csv << "# " << line << '\n';
  csv << "n,z_re,z_im,ratio_re,ratio_im\n";
  for (std::size_t i = 0; i < scan.n_list.size(); ++i) {
    for (std::size_t p = 0; p < scan.z_points.size(); ++p) {
      csv << scan.n_list[i] << ',' << fmt(scan.z_points[p].real()) << ','
          << fmt(scan.z_points[p].imag()) << ',' << fmt(scan.ratios[i][p].real()) << ','
          << fmt(scan.ratios[i][p].imag()) << '\n';
    }
  }

  Json scan_doc;
  scan_doc["header"] = header;
  scan_doc["n_list"] = scan.n_list;
  scan_doc["per_step_residual"] = scan.per_step_residual;
  Json per_z = Json::array();
  for (std::size_t p = 0; p < scan.z_points.size(); ++p) {
    per_z.push_back(Json{{"z", complex_json(scan.z_points[p])},
                         {"residual", scan.per_z_residual[p]}});
  }
  scan_doc["per_z_residual"] = std::move(per_z);
  Json zero_list = Json::array();
  for (const Complex& z : zeros) zero_list.push_back(complex_json(z));
  scan_doc["denominator_zeros"] = std::move(zero_list);
  Json excluded = Json::array();
  for (const Complex& z : scan.excluded) excluded.push_back(complex_json(z));
  scan_doc["excluded"] = std::move(excluded);
  scan_doc["decreasing"] = scan.decreasing();
  write_json(common.out, "zeta_scan.json", scan_doc);

  // Free field: ratio against the closed form N (z+3) / (iT) at z = 0.
  Json ff;
  ff["header"] = header;
  Json ff_rows = Json::array();
  bool identity_ok = true;
  for (int n = 1; n <= cfg.freefield_n_max; ++n) {
    for (double t : cfg.freefield_t) {
      const Complex r = freefield_zeta_ratio({cfg.freefield_x, n, t, 0.0});
      const Complex closed = 3.0 * static_cast<double>(n) / Complex(0.0, t);
      identity_ok = identity_ok && std::abs(r - closed) <= 1e-12 * std::abs(closed);
      ff_rows.push_back(Json{{"N", n}, {"T", t}, {"ratio", complex_json(r)},
                             {"magnitude", std::abs(r)}, {"closed_form_magnitude", 3.0 * n / t}});
    }
  }
  ff["freefield"] = std::move(ff_rows);
  const FockZetaResult fock = fock_zeta_ratio(0.0, cfg.fock_t, cfg.fock_cutoff);
  ff["fock"] = Json{{"z", complex_json(0.0)},
                    {"T", cfg.fock_t},
                    {"cutoff", fock.cutoff},
                    {"ratio", complex_json(fock.ratio)},
                    {"magnitude", std::abs(fock.ratio)},
                    {"ratio_error_bound", fock.ratio_error_bound},
                    {"numerator_tail", fock.numerator_tail},
                    {"denominator_tail", fock.denominator_tail}};
  write_json(common.out, "freefield.json", ff);

  const bool fock_ok = std::abs(fock.ratio) + fock.ratio_error_bound <= kFockBound;
  log << "ratio scan " << (scan.decreasing() ? "decreasing" : "NOT decreasing") << ", "
      << zeros.size() << " denominator zeros\n";
  log << "fock |ratio| = " << fmt(std::abs(fock.ratio)) << " (bound "
      << fmt(fock.ratio_error_bound) << ")\n";
  if (common.check) {
    const bool ok = scan.decreasing() && identity_ok && fock_ok;
    log << (ok ? "check passed" : "check FAILED") << '\n';
    if (!ok) return kCheckFailure;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// pauli-export
// ---------------------------------------------------------------------------

struct PauliExportConfig {
  std::vector<int> qubits{1, 2, 3, 4, 5};
  HydrogenParams model{};

  Json to_json() const {
    return Json{{"qubits", qubits}, {"mass", model.m}, {"coupling", model.q}};
  }
};

inline std::string pauli_file_name(int q) { return "pauli_Q" + std::to_string(q) + ".csv"; }

inline int cmd_pauli_export(const PauliExportConfig& cfg, const Common& common,
                            std::ostream& log) {
  const auto element = hydrogen_elements(cfg.model);
  const Json header = header_block("pauli-export", cfg.to_json());
  bool ok = true;
  for (int q : cfg.qubits) {
    if (q < 1 || q > 10) throw Error(ErrorKind::InvalidArgument, "qubits must be in [1, 10]");
    const HermitianOperator h = project_operator(element, Index{1} << q);
    const PauliCoefficients c = decompose(h);
    std::ofstream os = open_output(common.out, pauli_file_name(q));
    write_pauli_csv(os, c, csv_preamble(header));
    const double err = max_abs(reconstruct(c).matrix() - h.matrix());
    ok = ok && err <= 1e-12 * h.max_abs();
    log << pauli_file_name(q) << ": " << c.coeffs.size() << " terms, round-trip error "
        << fmt(err) << '\n';
  }
  if (common.check) {
    log << (ok ? "check passed" : "check FAILED") << '\n';
    if (!ok) return kCheckFailure;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// lemma-probes
// ---------------------------------------------------------------------------

struct LemmaProbeConfig {
  std::int64_t n_ref = 2048;
  std::vector<std::int64_t> n_list{8, 16, 32, 64, 128, 256, 512};
  std::int64_t schatten_n_ref = 512;
  std::vector<std::int64_t> schatten_n_list{8, 16, 32, 64, 128, 256};
  double sobolev_s = 1.0;
  HydrogenParams model{};

  Json to_json() const {
    return Json{{"n_ref", n_ref},
                {"n_list", n_list},
                {"schatten_n_ref", schatten_n_ref},
                {"schatten_n_list", schatten_n_list},
                {"sobolev_s", sobolev_s},
                {"mass", model.m},
                {"coupling", model.q}};
  }
};

inline constexpr double kStrongDecay = 1e-3;
inline constexpr double kSchattenTolerance = 1e-10;

struct StrongProbeRow {
  std::string observable;
  ProbeResult result;
  double decay = 0.0;  ///< last residual / first residual
};

struct SchattenProbeRow {
  std::string name;
  ProbeResult result;
  std::vector<double> oracle;
  double max_abs_diff = 0.0;
};

struct LemmaProbeOutcome {
  std::vector<StrongProbeRow> strong;
  std::vector<SchattenProbeRow> schatten;
};

/// Strong probes of identity, position and H on the reference vacuum, and
/// Schatten probes of two diagonal operators with closed-form tails.
inline LemmaProbeOutcome lemma_probes(const LemmaProbeConfig& cfg) {
  const auto h_element = hydrogen_elements(cfg.model);
  const std::vector<Index> n_list(cfg.n_list.begin(), cfg.n_list.end());
  const CVector x = vacuum_state(project_operator(h_element, cfg.n_ref)).state;

  LemmaProbeOutcome out;
  auto add_strong = [&](const std::string& name, const ProbeResult& r) {
    out.strong.push_back({name, r, r.residuals.back() / r.residuals.front()});
  };
  add_strong("identity", strong_convergence_probe(identity_elements(), x, n_list));
  add_strong("position", strong_convergence_probe(position_elements(), x, n_list));
  add_strong("H", strong_convergence_probe(h_element, x, n_list));

  const std::vector<Index> s_list(cfg.schatten_n_list.begin(), cfg.schatten_n_list.end());
  const Index s_ref = cfg.schatten_n_ref;
  auto add_schatten = [&](const std::string& name, const ProbeResult& r, auto&& singular) {
    SchattenProbeRow row{name, r, {}, 0.0};
    for (std::size_t i = 0; i < s_list.size(); ++i) {
      // Sum over j > n of the known singular values, summed from the small end.
      double tail = 0.0;
      for (Index j = s_ref - 1; j >= s_list[i]; --j) tail += singular(j);
      row.oracle.push_back(tail);
      row.max_abs_diff = std::max(row.max_abs_diff, std::abs(tail - r.residuals[i]));
    }
    out.schatten.push_back(std::move(row));
  };

  auto inverse_square = [](std::int64_t l, std::int64_t k) {
    const double j = static_cast<double>(BasisOrdering::index_of_mode(k));
    return Complex(l == k ? 1.0 / ((j + 1.0) * (j + 1.0)) : 0.0);
  };
  add_schatten("inverse-square", schatten_convergence_probe(inverse_square, SobolevWeight{0.0}, s_ref, s_list),
               [](Index j) { return 1.0 / ((j + 1.0) * (j + 1.0)); });
  const SobolevWeight w{cfg.sobolev_s};
  add_schatten("sobolev-identity", schatten_convergence_probe(identity_elements(), w, s_ref, s_list),
               [&w](Index j) { return 1.0 / std::sqrt(w(BasisOrdering::mode_of_index(j))); });
  return out;
}

inline int cmd_lemma_probes(const LemmaProbeConfig& cfg, const Common& common, std::ostream& log) {
  const LemmaProbeOutcome r = lemma_probes(cfg);
  Json doc;
  doc["header"] = header_block("lemma-probes", cfg.to_json());
  bool ok = true;
  Json strong = Json::array();
  for (const StrongProbeRow& row : r.strong) {
    const bool pass = row.decay < kStrongDecay;
    ok = ok && pass;
    strong.push_back(Json{{"observable", row.observable},
                          {"n_list", row.result.n_list},
                          {"residuals", row.result.residuals},
                          {"decay", row.decay},
                          {"monotone", row.result.monotone()},
                          {"below_threshold", pass}});
    log << "strong " << row.observable << ": last/first = " << fmt(row.decay)
        << (pass ? "" : "  (above 1e-3)") << '\n';
  }
  doc["strong"] = std::move(strong);
  Json schatten = Json::array();
  for (const SchattenProbeRow& row : r.schatten) {
    const bool pass = row.max_abs_diff <= kSchattenTolerance;
    ok = ok && pass;
    schatten.push_back(Json{{"case", row.name},
                            {"n_list", row.result.n_list},
                            {"residuals", row.result.residuals},
                            {"oracle", row.oracle},
                            {"max_abs_diff", row.max_abs_diff}});
    log << "schatten " << row.name << ": max |residual - oracle| = " << fmt(row.max_abs_diff)
        << '\n';
  }
  doc["schatten"] = std::move(schatten);
  write_json(common.out, "lemma_probes.json", doc);
  if (common.check) {
    log << (ok ? "check passed" : "check FAILED") << '\n';
    if (!ok) return kCheckFailure;
  }
  return kOk;
}

}  // namespace zetadisc::cli
