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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "zetadisc/pauli.hpp"
#include "zetadisc/spectral.hpp"

namespace zetadisc {

/// Hardware-efficient circuit on Q qubits: L+1 blocks of R_y(theta) R_z(phi)
/// on every qubit, with a CZ chain (q, q+1) after each of the first L blocks.
/// Parameters are stored block by block, qubit by qubit, as (theta, phi).
struct AnsatzSpec {
  int qubits = 1;
  int layers = 1;

  void validate() const {
    if (qubits < 1 || qubits > 20) throw Error(ErrorKind::InvalidArgument, "qubits out of range");
    if (layers < 1) throw Error(ErrorKind::InvalidArgument, "layers must be >= 1");
  }
  std::size_t param_count() const { return std::size_t(2 * qubits * (layers + 1)); }
  std::size_t param_index(int block, int qubit) const {
    return std::size_t(2 * (block * qubits + qubit));
  }
  std::size_t gate_count() const {
    return param_count() + std::size_t((qubits - 1) * layers);
  }
};

/// Unit-norm amplitudes over 2^Q basis states; qubit n is bit n of the index.
class Statevector {
 public:
  explicit Statevector(int qubits) : qubits_(qubits), amps_(CVector::Zero(Index{1} << qubits)) {
    amps_(0) = 1.0;
  }
  Statevector(int qubits, CVector amps) : qubits_(qubits), amps_(std::move(amps)) {
    if (amps_.size() != (Index{1} << qubits)) {
      throw Error(ErrorKind::DimensionMismatch, "amplitude count is not 2^Q");
    }
    if (std::abs(amps_.norm() - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidArgument, "state is not normalized");
    }
  }

  int qubits() const noexcept { return qubits_; }
  Index dim() const noexcept { return amps_.size(); }
  const CVector& amplitudes() const noexcept { return amps_; }

  /// Applies the 2x2 unitary u = [[u00, u01], [u10, u11]] to one qubit.
  void apply(int qubit, Complex u00, Complex u01, Complex u10, Complex u11) {
    const Index stride = Index{1} << qubit;
    for (Index base = 0; base < dim(); base += 2 * stride) {
      for (Index i = base; i < base + stride; ++i) {
        const Complex a0 = amps_(i);
        const Complex a1 = amps_(i + stride);
        amps_(i) = u00 * a0 + u01 * a1;
        amps_(i + stride) = u10 * a0 + u11 * a1;
      }
    }
  }

  void ry(int qubit, double theta) {
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    apply(qubit, c, -s, s, c);
  }

  void rz(int qubit, double phi) {
    const Complex e = std::polar(1.0, -0.5 * phi);
    const Index stride = Index{1} << qubit;
    for (Index i = 0; i < dim(); ++i) amps_(i) *= (i & stride) ? std::conj(e) : e;
  }

  void cz(int a, int b) {
    const Index mask = (Index{1} << a) | (Index{1} << b);
    for (Index i = 0; i < dim(); ++i) {
      if ((i & mask) == mask) amps_(i) = -amps_(i);
    }
  }

 private:
  int qubits_;
  CVector amps_;
};

inline Statevector apply_ansatz(const AnsatzSpec& spec, std::span<const double> params) {
  spec.validate();
  if (params.size() != spec.param_count()) {
    throw Error(ErrorKind::ParamLengthMismatch,
                "expected " + std::to_string(spec.param_count()) + " parameters, got " +
                    std::to_string(params.size()));
  }
  Statevector psi(spec.qubits);
  for (int block = 0; block <= spec.layers; ++block) {
    for (int q = 0; q < spec.qubits; ++q) {
      const std::size_t p = spec.param_index(block, q);
      psi.ry(q, params[p]);
      psi.rz(q, params[p + 1]);
    }
    if (block < spec.layers) {
      for (int q = 0; q + 1 < spec.qubits; ++q) psi.cz(q, q + 1);
    }
  }
  return psi;
}

/// <psi| sum_q c_q S^q |psi>, term by term.
inline double energy(const Statevector& state, const PauliCoefficients& c) {
  if (state.qubits() != c.qubits || c.coeffs.size() != (std::size_t{1} << (2 * c.qubits))) {
    throw Error(ErrorKind::DimensionMismatch, "state and coefficients disagree on qubit count");
  }
  const CVector& psi = state.amplitudes();
  const std::uint64_t dim = std::uint64_t(state.dim());
  double total = 0.0;
  for (std::uint64_t q = 0; q < c.coeffs.size(); ++q) {
    if (c.coeffs[q] == 0.0) continue;
    const PauliWord w(c.qubits, q);
    const std::uint64_t flips = w.flip_mask();
    Complex term(0.0);
    for (std::uint64_t j = 0; j < dim; ++j) {
      const std::uint64_t k = j ^ flips;
      term += std::conj(psi(Index(j))) * w.element(j, k) * psi(Index(k));
    }
    total += c.coeffs[q] * term.real();
  }
  return total;
}

// ---------------------------------------------------------------------------
// Random numbers: 64-bit Mersenne twister, portable transforms.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal by Box-Muller (one value per call).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Optimizers
// ---------------------------------------------------------------------------

enum class OptimizerKind { coordinate_sweep, conjugate_gradient };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::conjugate_gradient;
  int sweeps = 3;
  double cg_tol = 1e-9;      ///< gradient-norm convergence threshold
  double fd_step = 1e-6;     ///< central-difference step
  int max_iterations = 20000;
  int restarts = 5;          ///< extra seeded attempts after a stall
  double restart_spread = 0.3;
  std::uint64_t seed = 1;

  void validate() const {
    if (sweeps < 1) throw Error(ErrorKind::InvalidArgument, "sweeps must be >= 1");
    if (!(cg_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "cg_tol must be > 0");
    if (!(fd_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "fd_step must be > 0");
    if (max_iterations < 1 || restarts < 0) {
      throw Error(ErrorKind::InvalidArgument, "iteration and restart counts must be positive");
    }
  }
};

struct IterationRecord {
  int iteration = 0;
  double energy = 0.0;
  double gradient_norm = 0.0;
  std::uint64_t params_hash = 0;
};

/// FNV-1a over the IEEE-754 bytes of the parameters.
inline std::uint64_t hash_params(std::span<const double> params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double p : params) {
    std::uint64_t bits;
    std::memcpy(&bits, &p, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// One JSON object per line: iteration, energy, gradient_norm, params_hash.
inline std::string to_json_line(const IterationRecord& r) {
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "{\"iteration\":%d,\"energy\":%.17g,\"gradient_norm\":%.17g,\"params_hash\":\"%s\"}",
                r.iteration, r.energy, r.gradient_norm, to_hex(r.params_hash).c_str());
  return buf;
}

struct MinimizeResult {
  std::vector<double> params;
  double energy = 0.0;
  double exact_minimum = 0.0;
  std::vector<IterationRecord> trace;
  bool stalled = false;  ///< true if even the best attempt did not converge
  int attempts = 0;
};

/// Dense-matrix energy evaluator for the optimizer loops. Agrees with
/// energy(state, c) to rounding.
class EnergyObjective {
 public:
  EnergyObjective(const AnsatzSpec& spec, const PauliCoefficients& c)
      : spec_(spec), hamiltonian_(reconstruct(c).matrix()) {
    spec.validate();
    if (spec.qubits != c.qubits) {
      throw Error(ErrorKind::DimensionMismatch, "ansatz and coefficients disagree on qubit count");
    }
  }

  double operator()(std::span<const double> params) const {
    const Statevector state = apply_ansatz(spec_, params);
    const CVector& psi = state.amplitudes();
    return psi.dot(hamiltonian_ * psi).real();
  }

  /// Central differences with step h.
  std::vector<double> gradient(std::vector<double> params, double h) const {
    std::vector<double> g(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double p0 = params[i];
      params[i] = p0 + h;
      const double fp = (*this)(params);
      params[i] = p0 - h;
      const double fm = (*this)(params);
      params[i] = p0;
      g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
  }

  const AnsatzSpec& spec() const noexcept { return spec_; }
  const CMatrix& hamiltonian() const noexcept { return hamiltonian_; }

 private:
  AnsatzSpec spec_;
  CMatrix hamiltonian_;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Attempt {
  std::vector<double> params;
  double energy = 0.0;
  bool converged = false;
  std::vector<IterationRecord> trace;
};

struct LineMinimum {
  double alpha = 0.0;
  double value = 0.0;
  bool decreased = false;
};

// Backtracks from alpha0 until the Armijo condition holds, expands to bracket
// the minimum along the ray and refines it by parabolic interpolation with
// golden-section fallback.
template <typename Phi>
LineMinimum line_minimize(Phi&& phi, double f0, double slope, double alpha0) {
  constexpr double kGolden = 0.3819660112501051;
  double b = alpha0;
  double fb = phi(b);
  while (fb > f0 + 1e-4 * b * slope && b > 1e-16) {
    b *= 0.5;
    fb = phi(b);
  }
  if (!(fb < f0)) return {};
  double a = 0.0, fa = f0;
  double c = 2.0 * b, fc = phi(c);
  for (int grow = 0; fc < fb && grow < 30; ++grow) {
    a = b;
    fa = fb;
    b = c;
    fb = fc;
    c = 2.0 * c;
    fc = phi(c);
  }
  for (int refine = 0; refine < 12 && (c - a) > 1e-12 * (1.0 + b); ++refine) {
    const double p = (b - a) * (fb - fc);
    const double q = (b - c) * (fb - fa);
    double u = b - ((b - a) * p - (b - c) * q) / (2.0 * (p - q));
    if (!std::isfinite(u) || u <= a || u >= c || std::abs(u - b) < 1e-14 * (1.0 + b)) {
      u = (c - b > b - a) ? b + kGolden * (c - b) : b - kGolden * (b - a);
    }
    const double fu = phi(u);
    if (fu < fb) {
      if (u > b) {
        a = b;
        fa = fb;
      } else {
        c = b;
        fc = fb;
      }
      b = u;
      fb = fu;
    } else if (u > b) {
      c = u;
      fc = fu;
    } else {
      a = u;
      fa = fu;
    }
  }
  return {b, fb, true};
}

// Polak-Ribiere (PR+) conjugate gradients with central-difference gradients.
// Falls back to steepest descent when successive gradients are far from
// orthogonal (Powell's restart test).
inline Attempt run_cg(const EnergyObjective& f, std::vector<double> x, const OptimizerConfig& cfg,
                      int iteration_offset) {
  Attempt out;
  double fx = f(x);
  std::vector<double> g = f.gradient(x, cfg.fd_step);
  std::vector<double> d(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i];
  double step = 1.0;
  int stagnant = 0;
  std::vector<double> trial(x.size());
  auto phi = [&](double alpha) {
    for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + alpha * d[i];
    return f(trial);
  };

  for (int it = 0; it < cfg.max_iterations; ++it) {
    const double gnorm = std::sqrt(dot(g, g));
    out.trace.push_back({iteration_offset + it, fx, gnorm, hash_params(x)});
    if (gnorm < cfg.cg_tol) {
      out.converged = true;
      break;
    }
    double slope = dot(g, d);
    if (slope >= 0.0) {
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = -g[i];
      slope = -gnorm * gnorm;
    }
    const double dnorm = std::sqrt(dot(d, d));
    const LineMinimum lm = line_minimize(phi, fx, slope, std::min(2.0 * step, 1.0) / dnorm);
    if (!lm.decreased) {
      // No decrease along d: the gradient is at its finite-difference floor.
      out.converged = gnorm < 1e3 * cfg.cg_tol;
      break;
    }
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += lm.alpha * d[i];
    const double decrease = fx - lm.value;
    fx = lm.value;
    step = lm.alpha * dnorm;
    stagnant = decrease <= 1e-15 * std::max(1.0, std::abs(fx)) ? stagnant + 1 : 0;
    if (stagnant >= 20) {
      out.converged = gnorm < 1e3 * cfg.cg_tol;
      break;
    }
    std::vector<double> g_new = f.gradient(x, cfg.fd_step);
    double beta = 0.0;
    const double gg = dot(g, g);
    if (gg > 0.0) {
      double num = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) num += g_new[i] * (g_new[i] - g[i]);
      beta = std::max(0.0, num / gg);
    }
    if (std::abs(dot(g_new, g)) >= 0.2 * dot(g_new, g_new)) beta = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = -g_new[i] + beta * d[i];
    g = std::move(g_new);
  }
  out.params = std::move(x);
  out.energy = fx;
  return out;
}

// Sequential single-parameter minimization. The energy is a + b cos t + c sin t
// in each rotation angle, so three evaluations locate the exact minimum.
inline Attempt run_sweep(const EnergyObjective& f, std::vector<double> x, const OptimizerConfig& cfg,
                         int iteration_offset) {
  Attempt out;
  double fx = f(x);
  int it = 0;
  out.trace.push_back({iteration_offset + it++, fx, 0.0, hash_params(x)});
  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double p0 = x[i];
      const double e0 = fx;
      x[i] = p0 + std::numbers::pi / 2.0;
      const double ep = f(x);
      x[i] = p0 - std::numbers::pi / 2.0;
      const double em = f(x);
      const double candidate =
          p0 - std::numbers::pi / 2.0 - std::atan2(2.0 * e0 - ep - em, ep - em);
      x[i] = std::remainder(candidate, 2.0 * std::numbers::pi);
      const double fc = f(x);
      if (fc <= fx) {
        fx = fc;
      } else {
        x[i] = p0;
      }
    }
    out.trace.push_back({iteration_offset + it++, fx, 0.0, hash_params(x)});
  }
  out.params = std::move(x);
  out.energy = fx;
  out.converged = true;
  return out;
}

}  // namespace detail

/// Exact minimal eigenvalue of sum_q c_q S^q.
inline double exact_minimum(const PauliCoefficients& c) {
  const HermitianOperator h = reconstruct(c);
  return h.dim() <= 512 ? eig_hermitian(h).eigenvalues(0)
                        : smallest_eigenpair(h, 1e-13).value;
}

/// Minimizes the ansatz energy from `initial`. A stalled conjugate-gradient
/// run is retried from seeded perturbations of `initial`; the best attempt is
/// returned.
inline MinimizeResult minimize(const AnsatzSpec& spec, const PauliCoefficients& c,
                               const OptimizerConfig& cfg, std::span<const double> initial) {
  cfg.validate();
  if (initial.size() != spec.param_count()) {
    throw Error(ErrorKind::ParamLengthMismatch,
                "initial vector has " + std::to_string(initial.size()) + " entries, expected " +
                    std::to_string(spec.param_count()));
  }
  const EnergyObjective f(spec, c);
  MinimizeResult out;
  out.exact_minimum = exact_minimum(c);

  detail::Attempt best;
  bool have_best = false;
  const int attempts = cfg.kind == OptimizerKind::conjugate_gradient ? 1 + cfg.restarts : 1;
  for (int a = 0; a < attempts; ++a) {
    std::vector<double> start(initial.begin(), initial.end());
    if (a > 0) {
      Rng rng(cfg.seed + std::uint64_t(a));
      for (double& p : start) p += cfg.restart_spread * rng.normal();
    }
    const int offset = static_cast<int>(out.trace.size());
    detail::Attempt run = cfg.kind == OptimizerKind::conjugate_gradient
                              ? detail::run_cg(f, std::move(start), cfg, offset)
                              : detail::run_sweep(f, std::move(start), cfg, offset);
    out.trace.insert(out.trace.end(), run.trace.begin(), run.trace.end());
    out.attempts = a + 1;
    if (!have_best || run.energy < best.energy) {
      best = std::move(run);
      have_best = true;
    }
    if (best.converged) break;
  }
  out.params = std::move(best.params);
  out.energy = best.energy;
  out.stalled = !best.converged;
  const double margin = 1e-9 * std::max(1.0, std::abs(out.exact_minimum));
  if (out.energy < out.exact_minimum - margin) {
    throw Error(ErrorKind::ConvergenceFailure,
                "variational bound violated: " + std::to_string(out.energy) + " < " +
                    std::to_string(out.exact_minimum));
  }
  return out;
}

/// Lifts parameters from Q to Q+1 qubits at the same depth. The new qubit is
/// the most significant one and starts with zero angles, so it stays in |0>
/// and the lifted state is the old state embedded in the nested basis.
inline std::vector<double> warm_start_embed(std::span<const double> params,
                                            const AnsatzSpec& from, const AnsatzSpec& to) {
  if (to.qubits != from.qubits + 1 || to.layers != from.layers) {
    throw Error(ErrorKind::SpecMismatch, "warm start needs one extra qubit at equal depth");
  }
  if (params.size() != from.param_count()) {
    throw Error(ErrorKind::ParamLengthMismatch, "parameter count does not match source ansatz");
  }
  std::vector<double> out(to.param_count(), 0.0);
  for (int block = 0; block <= from.layers; ++block) {
    for (int q = 0; q < from.qubits; ++q) {
      out[to.param_index(block, q)] = params[from.param_index(block, q)];
      out[to.param_index(block, q) + 1] = params[from.param_index(block, q) + 1];
    }
  }
  return out;
}

/// Default ansatz depth for the warm-started hydrogen chain.
inline constexpr int kDefaultLayers = 6;

/// Minimizes each Hamiltonian of `chain` (qubit counts 1, 2, ... in order),
/// starting the first from zero angles and every later one from the lifted
/// optimum of its predecessor.
inline std::vector<MinimizeResult> warm_start_chain(std::span<const PauliCoefficients> chain,
                                                    int layers, const OptimizerConfig& cfg) {
  std::vector<MinimizeResult> out;
  std::vector<double> params;
  AnsatzSpec previous{};
  for (const PauliCoefficients& c : chain) {
    const AnsatzSpec spec{c.qubits, layers};
    if (!out.empty() && c.qubits != previous.qubits + 1) {
      throw Error(ErrorKind::SpecMismatch, "chain qubit counts must increase by one");
    }
    params = out.empty() ? std::vector<double>(spec.param_count(), 0.0)
                         : warm_start_embed(params, previous, spec);
    out.push_back(minimize(spec, c, cfg, params));
    params = out.back().params;
    previous = spec;
  }
  return out;
}

struct SampledEnergy {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Shot-sampled energy: every non-identity Pauli term is measured `shots`
/// times after rotating its support into the computational basis.
inline SampledEnergy sampled_energy(const Statevector& state, const PauliCoefficients& c,
                                    std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw Error(ErrorKind::InvalidArgument, "shots must be >= 1");
  if (state.qubits() != c.qubits) {
    throw Error(ErrorKind::DimensionMismatch, "state and coefficients disagree on qubit count");
  }
  Rng rng(seed);
  SampledEnergy out;
  double variance = 0.0;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  std::vector<double> cdf(std::size_t(state.dim()));
  for (std::uint64_t q = 0; q < c.coeffs.size(); ++q) {
    if (c.coeffs[q] == 0.0) continue;
    if (q == 0) {
      out.estimate += c.coeffs[0];
      continue;
    }
    const PauliWord w(c.qubits, q);
    Statevector rotated = state;
    std::uint64_t support = 0;
    for (int n = 0; n < c.qubits; ++n) {
      switch (w.digit(n)) {
        case 1:  // Hadamard maps the sigma^1 eigenbasis to the computational one
          rotated.apply(n, inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
          break;
        case 2:  // H S^dagger
          rotated.apply(n, inv_sqrt2, Complex(0.0, -inv_sqrt2), inv_sqrt2, Complex(0.0, inv_sqrt2));
          break;
        default:
          break;
      }
      if (w.digit(n) != 0) support |= std::uint64_t{1} << n;
    }
    double acc = 0.0;
    for (Index i = 0; i < rotated.dim(); ++i) {
      acc += std::norm(rotated.amplitudes()(i));
      cdf[std::size_t(i)] = acc;
    }
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t s = 0; s < shots; ++s) {
      const double u = rng.uniform() * acc;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      const auto outcome = std::uint64_t(it - cdf.begin());
      const double eig = (std::popcount(outcome & support) % 2 == 0) ? 1.0 : -1.0;
      sum += eig;
      sum_sq += eig * eig;
    }
    const double n = double(shots);
    const double mean = sum / n;
    const double var = shots > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    out.estimate += c.coeffs[q] * mean;
    variance += c.coeffs[q] * c.coeffs[q] * var / n;
  }
  out.standard_error = std::sqrt(variance);
  return out;
}

}  // namespace zetadisc
