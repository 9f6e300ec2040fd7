#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sigmafrac/fde.hpp"
#include "sigmafrac/fracderiv.hpp"
#include "sigmafrac/kernels.hpp"
#include "sigmafrac/l1reg.hpp"
#include "sigmafrac/optimizer.hpp"
#include "sigmafrac/transforms.hpp"

// The verification suite: every property in the operator catalog (2.1-2.11)
// is checked numerically at desk scale and classified as confirmed,
// confirmed-with-correction, or refuted-as-printed. Statuses are data, not
// test failures; the CLI serializes them into the JSON report.

namespace sigmafrac {

struct TheoremCheck {
  std::string id;
  std::string name;
  std::string convention;
  std::string status;  // confirmed | confirmed-with-correction | refuted-as-printed
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;
};

struct SuiteConfig {
  Convention convention = Convention::FullMass;
  std::uint64_t seed = 42;
  QuadConfig quad{1e-11, 1e-11, 16384};
};

namespace frozen {
// Calibration values frozen from the pre-build extended-precision runs.
inline constexpr double kFgdStagnationDistance = 0.24222197624571514;
inline constexpr double kFgdStepRegression = 1.1588750977006077;
inline constexpr double kClosedFormMaxResidual = 0.25718476962033175;
inline constexpr double kSigDerivSinHalf = 0.72410623805214622;
}  // namespace frozen

namespace detail {

// splitmix64: platform-stable deterministic stream for seeded sweeps
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline const char* kConfirmed = "confirmed";
inline const char* kCorrected = "confirmed-with-correction";
inline const char* kRefuted = "refuted-as-printed";

}  // namespace detail

/// 2.1 Reduction to the classical derivative: f = sin on [0, 1], the error
/// |D^alpha f - cos(1)| must fall strictly through alpha = 0.9, 0.99, 0.999.
inline TheoremCheck check_reduction(const SuiteConfig& cfg) {
  TheoremCheck c{"2.1", "reduction-to-classical", to_string(cfg.convention), "", {}, {}};
  auto fp = [](double s) { return std::cos(s); };
  const double target = std::cos(1.0);
  std::array<double, 3> alphas{0.9, 0.99, 0.999};
  std::array<double, 3> errs{};
  double last_value = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    FractionalOrder ord(alphas[i], cfg.convention);
    last_value = sig_deriv(fp, 0.0, 1.0, ord, cfg.quad).value;
    errs[i] = std::fabs(last_value - target);
    c.metrics.emplace_back("err_alpha_" + std::to_string(alphas[i]).substr(0, 5), errs[i]);
  }
  const double ratio = last_value / target;
  c.metrics.emplace_back("limit_ratio_at_0.999", ratio);
  const bool decreasing = errs[0] > errs[1] && errs[1] > errs[2];
  if (cfg.convention == Convention::FullMass) {
    c.status = (decreasing && errs[2] <= 5e-3) ? detail::kConfirmed : detail::kRefuted;
  } else {
    // half-mass normalization halves the limit; the printed claim (limit =
    // f'(t)) does not hold under it
    c.status = std::fabs(ratio - 0.5) < 5e-3 ? detail::kRefuted : detail::kConfirmed;
    c.notes.push_back("half-mass normalization: limit is f'(t)/2, not f'(t)");
  }
  return c;
}

/// 2.2 Commutation with the classical derivative for f'(a) = 0, plus the
/// boundary-term formula when the hypothesis is violated.
inline TheoremCheck check_commutation(const SuiteConfig& cfg) {
  TheoremCheck c{"2.2", "commutation", to_string(cfg.convention), "", {}, {}};
  struct Case { double a, t, alpha; };
  const std::array<Case, 3> cases{{{0.0, 1.0, 0.5}, {0.0, 2.0, 0.7}, {1.0, 3.0, 0.9}}};
  QuadConfig tight{1e-12, 1e-12, 16384};
  double worst = 0.0;
  for (const auto& k : cases) {
    FractionalOrder ord(k.alpha, cfg.convention);
    auto fp = [&](double s) { return 2.0 * (s - k.a); };
    auto fpp = [](double) { return 2.0; };
    const CommutationResult r = commutation_residual(fp, fpp, k.a, k.t, ord, tight);
    worst = std::max(worst, r.residual);
  }
  c.metrics.emplace_back("max_residual", worst);
  // violated hypothesis: f = t has f'(a) = 1, the residual must equal the
  // boundary term C1 sech2((a-t)/(1-alpha))
  FractionalOrder ord(0.5, cfg.convention);
  auto one = [](double) { return 1.0; };
  auto zero = [](double) { return 0.0; };
  const CommutationResult b = commutation_residual(one, zero, 0.0, 1.0, ord, tight);
  const double gap = std::fabs(b.residual - std::fabs(b.boundary_term));
  c.metrics.emplace_back("boundary_term_gap", gap);
  c.status = (worst <= 1e-5 && gap <= 1e-5) ? detail::kConfirmed : detail::kRefuted;
  if (!b.hypothesis_ok)
    c.notes.push_back("nonzero f'(a) case flagged; residual matches the boundary term");
  return c;
}

/// 2.3 Memory principle: 20 seeded (t, L, alpha) draws on f = sin (C0 = 1),
/// truncation error against the printed bound, plus the length/bound
/// consistency defect.
inline TheoremCheck check_memory(const SuiteConfig& cfg) {
  TheoremCheck c{"2.3", "memory-principle", to_string(cfg.convention), "", {}, {}};
  detail::SplitMix64 rng(cfg.seed);
  auto fp = [](double s) { return std::cos(s); };
  int failures = 0;
  double worst_slack = 1e300;
  for (int i = 0; i < 20; ++i) {
    const double t = 0.5 + 2.5 * rng.u01();
    const double L = 0.05 + 1.95 * rng.u01();
    const double alpha = 0.1 + 0.85 * rng.u01();
    const double pad = 0.1 + 2.9 * rng.u01();
    FractionalOrder ord(alpha, cfg.convention);
    const double full = sig_deriv(fp, t - L - pad, t, ord, cfg.quad).value;
    const double trunc = sig_deriv_truncated(fp, t, L, ord, cfg.quad).value;
    const double bound = truncation_error_bound(L, 1.0, ord);
    const double slack = bound - std::fabs(full - trunc);
    worst_slack = std::min(worst_slack, slack);
    if (slack < -1e-10) ++failures;
  }
  c.metrics.emplace_back("cases_failed", failures);
  c.metrics.emplace_back("worst_slack", worst_slack);
  FractionalOrder half(0.5, cfg.convention);
  const double eps = 1e-6;
  const double defect =
      std::fabs(truncation_error_bound(sig_memory_length(eps, 1.0, half), 1.0, half) - eps);
  c.metrics.emplace_back("length_bound_defect_at_1e-6", defect);
  c.status = (failures == 0 && defect <= 1e-12) ? detail::kConfirmed : detail::kRefuted;
  return c;
}

/// 2.4 l1 smoothing: the tanh ramp saturates to the convention's value as
/// alpha -> 1 (1 full mass, 1/2 half mass) and differentiates the log-cosh
/// antiderivative at second order.
inline TheoremCheck check_l1_smoothing(const SuiteConfig& cfg) {
  TheoremCheck c{"2.4", "l1-smoothing", to_string(cfg.convention), "", {}, {}};
  const double a0 = 1e-3;
  const double x = a0 + 0.5;
  L1Config full{1.0, a0, FractionalOrder(0.9999, Convention::FullMass)};
  L1Config half{1.0, a0, FractionalOrder(0.9999, Convention::PaperHalfMass)};
  const double sat_full = smoothed_abs_grad(x, full);
  const double sat_half = smoothed_abs_grad(x, half);
  c.metrics.emplace_back("saturation_full_mass", sat_full);
  c.metrics.emplace_back("saturation_half_mass", sat_half);
  // finite differences of the antiderivative reproduce the gradient at O(h^2)
  L1Config mid{1.0, a0, FractionalOrder(0.5, cfg.convention)};
  const double x0 = 0.7;
  auto fd = [&](double h) {
    return (smoothed_abs_antideriv(x0 + h, mid) - smoothed_abs_antideriv(x0 - h, mid)) /
           (2.0 * h);
  };
  const double g = smoothed_abs_grad(x0, mid);
  const double e1 = std::fabs(fd(1e-2) - g);
  const double e2 = std::fabs(fd(1e-3) - g);
  const double order = std::log10(e1 / e2);
  c.metrics.emplace_back("fd_order", order);
  const bool ok = std::fabs(sat_full - 1.0) <= 1e-6 && std::fabs(sat_half - 0.5) <= 1e-6 &&
                  order > 1.7;
  c.status = ok ? detail::kConfirmed : detail::kRefuted;
  c.notes.push_back("printed 1/2(2H-1) limit corresponds to the half-mass normalization; "
                    "full mass saturates to the classical subgradient");
  return c;
}

/// 2.5 Mittag-Leffler bound on 12 seeded grid cases. `holds` uses the stated
/// bound C1 E(t-a); the proof's final display (k >= 1 tail) is also checked
/// and fails on short intervals.
inline TheoremCheck check_ml_bound(const SuiteConfig& cfg) {
  TheoremCheck c{"2.5", "mittag-leffler-bound", to_string(cfg.convention), "", {}, {}};
  struct Case { double g, e, a, t, alpha; };
  std::vector<Case> grid;
  for (double g : {1.0, 2.0})
    for (double e : {1.0, 2.0})
      for (double a : {0.25, 0.5})
        for (double t : {1.0, 1.5})
          for (double alpha : {0.3, 0.5, 0.7, 0.9}) grid.push_back({g, e, a, t, alpha});
  detail::SplitMix64 rng(cfg.seed);
  for (std::size_t i = grid.size(); i > 1; --i)
    std::swap(grid[i - 1], grid[static_cast<std::size_t>(rng.u01() * static_cast<double>(i))]);
  grid.resize(12);
  // pinned exponential exemplar: a short interval where the proof's tail
  // bound is known to fail while the stated bound holds
  grid.push_back({1.0, 1.0, 0.5, 1.0, 0.5});

  int stmt_fail = 0, tail_fail = 0;
  double worst_margin = 1e300;
  for (const auto& k : grid) {
    MLParams p(k.g, k.e);
    FractionalOrder ord(k.alpha, cfg.convention);
    const MlBoundResult r = ml_bound_check(p, k.a, k.t, ord, cfg.quad);
    if (!r.holds) ++stmt_fail;
    if (!r.holds_proof_tail) ++tail_fail;
    worst_margin = std::min(worst_margin, r.rhs - r.lhs);
  }
  c.metrics.emplace_back("statement_failures", stmt_fail);
  c.metrics.emplace_back("proof_tail_failures", tail_fail);
  c.metrics.emplace_back("worst_statement_margin", worst_margin);
  if (stmt_fail > 0)
    c.status = detail::kRefuted;
  else if (tail_fail > 0) {
    c.status = detail::kCorrected;
    c.notes.push_back("stated bound holds; the proof's final k>=1 tail bound fails on "
                      "short intervals");
  } else {
    c.status = detail::kConfirmed;
  }
  return c;
}

/// 2.6(a) finite-window maximal bound on three nonnegative test functions.
inline TheoremCheck check_maximal(const SuiteConfig& cfg) {
  TheoremCheck c{"2.6a", "maximal-function-bound", to_string(cfg.convention), "", {}, {}};
  int failures = 0;
  double worst_slack = 1e300;
  auto run = [&](auto fprime, double T, double t, double alpha) {
    FractionalOrder ord(alpha, cfg.convention);
    const MaximalBoundResult r = maximal_bound_check(fprime, T, t, ord, cfg.quad);
    if (!r.holds) ++failures;
    worst_slack = std::min(worst_slack, r.rhs - r.lhs);
  };
  auto quad_fp = [](double s) { return 2.0 * s; };                       // f = t^2
  auto sabs_fp = [](double s) { return s / std::sqrt(s * s + 1e-4); };   // smoothed |t|
  auto wave_fp = [](double s) { return std::cos(s); };                   // f = 2 + sin t
  for (double alpha : {0.3, 0.7}) {
    run(quad_fp, 1.0, 1.0, alpha);
    run(sabs_fp, 1.0, 0.5, alpha);
    run(wave_fp, 1.0, 1.0, alpha);
  }
  c.metrics.emplace_back("cases_failed", failures);
  c.metrics.emplace_back("worst_slack", worst_slack);
  c.status = failures == 0 ? detail::kConfirmed : detail::kRefuted;
  c.notes.push_back("maximal function read as the centered average at 0 over radii <= T");
  return c;
}

/// 2.7(a) Laplace: corrected T1 against the quadrature oracle and the
/// full multiplier identity on two test functions.
inline TheoremCheck check_laplace(const SuiteConfig& cfg) {
  TheoremCheck c{"2.7a", "laplace-transform", to_string(cfg.convention), "", {}, {}};
  double worst = 0.0;
  for (double s : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const LaplacePoint p(s);
    const double oracle = laplace_numeric(sech2, p, cfg.quad).value.real();
    worst = std::max(worst, std::fabs(oracle - t1_multiplier(p).real()));
  }
  c.metrics.emplace_back("max_abs_diff_corrected", worst);
  const LaplacePoint two(2.0);
  const double paper_gap =
      std::fabs(t1_multiplier_paper(two).real() - laplace_numeric(sech2, two, cfg.quad).value.real());
  c.metrics.emplace_back("paper_form_gap_at_s2", paper_gap);

  auto id_f = [](double t) { return t; };
  auto id_fp = [](double) { return 1.0; };
  const double r1 =
      verify_laplace_identity(id_fp, id_f, FractionalOrder(0.5, cfg.convention),
                              two, cfg.quad).residual;
  auto sat_f = [](double t) { return 1.0 - std::exp(-t); };
  auto sat_fp = [](double t) { return std::exp(-t); };
  const double r2 =
      verify_laplace_identity(sat_fp, sat_f, FractionalOrder(0.7, cfg.convention),
                              LaplacePoint(1.0), cfg.quad).residual;
  c.metrics.emplace_back("identity_residual_linear", r1);
  c.metrics.emplace_back("identity_residual_saturating", r2);

  if (worst <= 1e-8 && r1 <= 1e-6 && r2 <= 1e-6) {
    c.status = detail::kCorrected;
    c.notes.push_back("constant term of T1 enters with the opposite sign from the "
                      "printed form; corrected form matches the oracle");
  } else {
    c.status = detail::kRefuted;
  }
  return c;
}

/// 2.7(b) Fourier: w T2(w) against the oracle and the multiplier identity for
/// a Gaussian under the pinned convention.
inline TheoremCheck check_fourier(const SuiteConfig& cfg) {
  TheoremCheck c{"2.7b", "fourier-transform", to_string(cfg.convention), "", {}, {}};
  double worst = 0.0;
  for (double w : {0.25, 0.5, 1.0, 2.0}) {
    const FourierPoint p(w);
    const double oracle = fourier_numeric(sech2, p, cfg.quad).value.real();
    worst = std::max(worst, std::fabs(oracle - w * t2_multiplier(p)));
  }
  c.metrics.emplace_back("max_abs_diff", worst);
  auto gauss = [](double t) { return std::exp(-t * t); };
  auto gauss_fp = [](double t) { return -2.0 * t * std::exp(-t * t); };
  const FourierIdentityResult r = verify_fourier_identity(
      gauss_fp, gauss, FractionalOrder(0.5, cfg.convention), FourierPoint(1.0), cfg.quad);
  c.metrics.emplace_back("identity_residual_pinned", r.residual_pinned);
  c.metrics.emplace_back("identity_residual_paper_form", r.residual_paper);
  if (worst <= 1e-6 && r.residual_pinned <= 1e-5) {
    c.status = detail::kCorrected;
    c.notes.push_back("identity holds under the pinned unitary convention for the "
                      "bilateral operator; the printed multiplier differs by i sqrt(2 pi) "
                      "and carries an argument typo");
  } else {
    c.status = detail::kRefuted;
  }
  return c;
}

/// 2.8 Sandwich bounds on monotone test functions.
inline TheoremCheck check_sandwich(const SuiteConfig& cfg) {
  TheoremCheck c{"2.8", "sandwich-bounds", to_string(cfg.convention), "", {}, {}};
  double worst_violation = 0.0;
  int crashes = 0;
  auto run = [&](auto fprime, double alpha) {
    FractionalOrder ord(alpha, cfg.convention);
    try {
      const SandwichBounds b = sandwich_bounds(fprime, 0.0, 1.0, ord, cfg.quad);
      worst_violation = std::max({worst_violation, b.lower - b.mid, b.mid - b.upper,
                                  b.upper - b.cap});
    } catch (const ordering_error&) {
      ++crashes;
    }
  };
  for (double alpha : {0.3, 0.5, 0.8}) {
    run([](double) { return 1.0; }, alpha);             // f = t
    run([](double s) { return 2.0 * s; }, alpha);       // f = t^2
    run([](double s) { return std::exp(s); }, alpha);   // f = e^t
  }
  c.metrics.emplace_back("worst_violation", worst_violation);
  c.metrics.emplace_back("ordering_errors", crashes);
  c.status = (crashes == 0 && worst_violation <= 1e-8) ? detail::kConfirmed : detail::kRefuted;
  return c;
}

/// 2.9 The claimed closed-form solution of D^alpha f = G: residual checker.
/// Expected finding: the claim does not satisfy the equation (large residual).
inline TheoremCheck check_closed_form(const SuiteConfig& cfg) {
  TheoremCheck c{"2.9", "integral-equation-closed-form", to_string(cfg.convention), "", {}, {}};
  FractionalOrder ord(0.5, cfg.convention);
  auto g = [](double t) { return t; };
  const ClosedFormResidual r = thm29_residual(g, 0.0, 0.0, 1.0, 2000, ord, cfg.quad);
  c.metrics.emplace_back("max_residual", r.max_residual);
  c.metrics.emplace_back("frozen_reference", frozen::kClosedFormMaxResidual);
  c.status = r.max_residual >= 0.01 ? detail::kRefuted : detail::kConfirmed;
  if (c.status == detail::kRefuted)
    c.notes.push_back("claimed solution g/C1 + f(0) does not satisfy the equation; "
                      "residual is far above discretization error");
  return c;
}

/// 2.10 Unique solvability in the contraction regime: gate behavior and
/// manufactured-solution recovery through the Picard sweep.
inline TheoremCheck check_picard(const SuiteConfig& cfg) {
  TheoremCheck c{"2.10", "fixed-point-solvability", to_string(cfg.convention), "", {}, {}};
  FractionalOrder ord(0.5, cfg.convention);
  const ContractionCheck pass = contraction_check(0.5, ord);
  const ContractionCheck fail = contraction_check(2.0, ord);
  c.metrics.emplace_back("gate_value_c0_0.5", pass.value);
  c.metrics.emplace_back("gate_value_c0_2", fail.value);

  // manufactured solution f(t) = t^2 on [0,1]: operator image in closed form
  const double w = ord.width();
  const double c1 = c1_constant(ord);
  auto image = [&](double t) { return c1 * 2.0 * w * w * log_cosh(t / w); };
  auto rhs = [&](double t, double, double) { return image(t); };
  const PicardResult pr = picard_solve(rhs, 0.0, 1.0, 2000, 0.0, ord, 0.5, 50, 1e-12);
  double recovery = 0.0;
  for (std::size_t i = 0; i < pr.nodes.size(); ++i)
    recovery = std::max(recovery, std::fabs(pr.f[i] - pr.nodes[i] * pr.nodes[i]));
  c.metrics.emplace_back("manufactured_recovery_error", recovery);
  c.metrics.emplace_back("sweeps", pr.sweeps);
  c.metrics.emplace_back("condition_estimate", pr.condition_estimate);

  bool gate_ok = pass.ok && !fail.ok;
  if (cfg.convention == Convention::PaperHalfMass) gate_ok = pass.ok;  // c0 < 2 regime
  c.status = (gate_ok && pr.converged && recovery <= 1e-4) ? detail::kConfirmed
                                                           : detail::kRefuted;
  return c;
}

/// 2.11 Fractional gradient descent on (t-2)^2: termination, the Cauchy step
/// ratio, and distance to the critical point against the frozen calibration
/// run (the method stagnates short of t* = 2).
inline TheoremCheck check_descent(const SuiteConfig& cfg) {
  TheoremCheck c{"2.11", "fractional-gradient-descent", to_string(cfg.convention), "", {}, {}};
  auto f = [](double t) { return (t - 2.0) * (t - 2.0); };
  auto fp = [](double t) { return 2.0 * (t - 2.0); };
  DescentConfig dc(0.1, FractionalOrder(0.9, cfg.convention));
  dc.t_init = 0.0;
  dc.t_prev_init = -0.1;
  const DescentTrace tr = fgd_run(f, fp, dc, cfg.quad);

  double tmin = dc.t_init, tmax = dc.t_init;
  for (double t : tr.iterates) {
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  const double lip = 2.0 * std::max(std::fabs(tmin - 2.0), std::fabs(tmax - 2.0));
  const double bound = dc.mu * c1_constant(dc.order) * lip + 0.05;
  double max_ratio = 0.0;
  for (std::size_t k = 2; k + 1 < tr.steps.size(); ++k)
    if (tr.steps[k] > 0.0) max_ratio = std::max(max_ratio, tr.steps[k + 1] / tr.steps[k]);

  const double dist = std::fabs(tr.final_iterate() - 2.0);
  c.metrics.emplace_back("final_distance", dist);
  c.metrics.emplace_back("iterations", static_cast<double>(tr.steps.size()));
  c.metrics.emplace_back("max_step_ratio", max_ratio);
  c.metrics.emplace_back("step_ratio_bound", bound);
  c.metrics.emplace_back("frozen_reference_distance", frozen::kFgdStagnationDistance);

  const bool sane = tr.termination != Termination::Diverged && max_ratio <= bound;
  if (!sane) {
    c.status = detail::kRefuted;
  } else if (dist <= 1e-2) {
    c.status = detail::kConfirmed;
  } else if (cfg.convention == Convention::FullMass &&
             std::fabs(dist - frozen::kFgdStagnationDistance) <=
                 0.2 * frozen::kFgdStagnationDistance) {
    c.status = detail::kCorrected;
    c.notes.push_back("iteration is Cauchy and terminates, but stagnates at the frozen "
                      "calibration distance from the critical point");
  } else {
    c.status = detail::kCorrected;
    c.notes.push_back("terminates short of the critical point; distance recorded");
  }
  return c;
}

inline std::vector<TheoremCheck> run_theorem_suite(const SuiteConfig& cfg,
                                                   const std::vector<std::string>& only = {}) {
  using Runner = TheoremCheck (*)(const SuiteConfig&);
  static const std::pair<const char*, Runner> all[] = {
      {"2.1", &check_reduction},   {"2.2", &check_commutation},
      {"2.3", &check_memory},      {"2.4", &check_l1_smoothing},
      {"2.5", &check_ml_bound},    {"2.6a", &check_maximal},
      {"2.7a", &check_laplace},    {"2.7b", &check_fourier},
      {"2.8", &check_sandwich},    {"2.9", &check_closed_form},
      {"2.10", &check_picard},     {"2.11", &check_descent},
  };
  auto selected = [&](const char* id) {
    if (only.empty()) return true;
    for (const auto& o : only)
      if (o == id || (o == "2.6" && std::string(id) == "2.6a") ||
          (o == "2.7" && (std::string(id) == "2.7a" || std::string(id) == "2.7b")))
        return true;
    return false;
  };
  std::vector<TheoremCheck> out;
  for (const auto& [id, fn] : all)
    if (selected(id)) out.push_back(fn(cfg));
  return out;
}

}  // namespace sigmafrac
