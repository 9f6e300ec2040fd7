#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmafrac/fracderiv.hpp"
#include "sigmafrac/l1reg.hpp"

namespace sigmafrac {

enum class Termination { StepTol, GradTol, MaxIter, Diverged };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::StepTol: return "StepTol";
    case Termination::GradTol: return "GradTol";
    case Termination::MaxIter: return "MaxIter";
    case Termination::Diverged: return "Diverged";
  }
  return "?";
}

// per-step event flags recorded in the trace
enum StepFlag : unsigned {
  kFlagOrientationSwap = 1u,  // previous iterate sat above the current one
  kFlagFloorWindow = 2u,      // degenerate interval replaced by the floor window
  kFlagQuadrature = 4u,       // quadrature did not meet its tolerance
  kFlagL1 = 8u,               // smoothed l1 term contributed to the step
};

struct DescentConfig {
  double mu;
  FractionalOrder order;
  int max_iter = 10000;
  double step_tol = 1e-12;
  double grad_tol = 1e-12;
  double t_init = 0.0;
  std::optional<double> t_prev_init{};  // default: t0 - 0.1 * max(1, |t0|)

  DescentConfig(double mu_, FractionalOrder order_) : mu(mu_), order(order_) {
    if (!(mu > 0.0 && mu < 1.0))
      throw std::invalid_argument("DescentConfig: learning rate mu must lie in (0, 1)");
  }
  void validate() const {
    if (max_iter < 1) throw std::invalid_argument("DescentConfig: max_iter must be >= 1");
    if (!(step_tol > 0.0) || !(grad_tol > 0.0))
      throw std::invalid_argument("DescentConfig: tolerances must be positive");
  }
  double prev_init() const {
    return t_prev_init ? *t_prev_init : t_init - 0.1 * std::max(1.0, std::fabs(t_init));
  }
};

/// Full history of a scalar run. steps[k] = |iterates[k+1] - iterates[k]|.
struct DescentTrace {
  std::vector<double> iterates;
  std::vector<double> steps;
  std::vector<double> objective;
  std::vector<double> grad_proxy;  // derivative value that drove step k
  std::vector<unsigned> flags;     // StepFlag bitmask per step
  Termination termination = Termination::MaxIter;
  double final_iterate() const { return iterates.back(); }
};

struct FgdStepResult {
  double t_next;
  double deriv;  // the operator value the step used
  unsigned flags;
};

/// One update  t_{k+1} = t_k - mu * D^alpha_{t_{k-1}} f(t_k).
///
/// The operator integrates over the oriented interval between the two
/// iterates (kernel centered at t_k), so an overshooting previous iterate
/// still produces a step that opposes f'. A degenerate interval is replaced
/// by a floor window of width 1e-8 and flagged.
template <class F>
FgdStepResult fgd_step(F&& fprime, double t_k, double t_km1, const DescentConfig& cfg,
                       const QuadConfig& q = QuadConfig{}) {
  if (cfg.order.classical())
    throw std::invalid_argument("fgd_step: requires alpha < 1");
  unsigned flags = 0;
  double lo = std::min(t_km1, t_k);
  double hi = std::max(t_km1, t_k);
  if (t_km1 > t_k) flags |= kFlagOrientationSwap;
  if (lo == hi) {
    lo = t_k - 1e-8;
    hi = t_k;
    flags |= kFlagFloorWindow;
  }
  const double w = cfg.order.width();
  auto integrand = [&](double s) { return fprime(s) * sech2((s - t_k) / w); };
  // kernel sits at whichever endpoint is the current iterate
  const QuadResult r = detail::integrate_endpoint_kernel(
      integrand, lo, hi, /*near_right=*/t_k >= hi, 45.0 * w, q);
  if (!r.converged) flags |= kFlagQuadrature;
  const double deriv = c1_constant(cfg.order) * r.value;
  return FgdStepResult{t_k - cfg.mu * deriv, deriv, flags};
}

namespace detail {

inline bool diverged(double t) { return !(std::fabs(t) <= 1e12); }

}  // namespace detail

/// Scalar sigmoidal fractional gradient descent with full trace capture.
template <class F, class FP>
DescentTrace fgd_run(F&& f, FP&& fprime, const DescentConfig& cfg,
                     const QuadConfig& q = QuadConfig{}) {
  cfg.validate();
  DescentTrace tr;
  double t_prev = cfg.prev_init();
  double t_cur = cfg.t_init;
  tr.iterates.push_back(t_cur);
  tr.objective.push_back(f(t_cur));
  for (int k = 0; k < cfg.max_iter; ++k) {
    if (std::fabs(fprime(t_cur)) < cfg.grad_tol) {
      tr.termination = Termination::GradTol;
      return tr;
    }
    const FgdStepResult st = fgd_step(fprime, t_cur, t_prev, cfg, q);
    tr.grad_proxy.push_back(st.deriv);
    tr.flags.push_back(st.flags);
    tr.steps.push_back(std::fabs(st.t_next - t_cur));
    t_prev = t_cur;
    t_cur = st.t_next;
    tr.iterates.push_back(t_cur);
    tr.objective.push_back(f(t_cur));
    if (detail::diverged(t_cur)) {
      tr.termination = Termination::Diverged;
      return tr;
    }
    if (tr.steps.back() < cfg.step_tol) {
      tr.termination = Termination::StepTol;
      return tr;
    }
  }
  tr.termination = Termination::MaxIter;
  return tr;
}

/// Classical gradient-descent baseline with the same trace format.
template <class F, class FP>
DescentTrace gd_run(F&& f, FP&& fprime, const DescentConfig& cfg) {
  cfg.validate();
  DescentTrace tr;
  double t_cur = cfg.t_init;
  tr.iterates.push_back(t_cur);
  tr.objective.push_back(f(t_cur));
  for (int k = 0; k < cfg.max_iter; ++k) {
    const double g = fprime(t_cur);
    if (std::fabs(g) < cfg.grad_tol) {
      tr.termination = Termination::GradTol;
      return tr;
    }
    const double t_next = t_cur - cfg.mu * g;
    tr.grad_proxy.push_back(g);
    tr.flags.push_back(0);
    tr.steps.push_back(std::fabs(t_next - t_cur));
    t_cur = t_next;
    tr.iterates.push_back(t_cur);
    tr.objective.push_back(f(t_cur));
    if (detail::diverged(t_cur)) {
      tr.termination = Termination::Diverged;
      return tr;
    }
    if (tr.steps.back() < cfg.step_tol) {
      tr.termination = Termination::StepTol;
      return tr;
    }
  }
  tr.termination = Termination::MaxIter;
  return tr;
}

/// Vector run: one trace per coordinate plus shared objective history.
struct VectorDescentTrace {
  std::vector<DescentTrace> coordinates;
  std::vector<double> objective;
  Termination termination = Termination::MaxIter;
  std::vector<double> final_iterate() const {
    std::vector<double> x;
    x.reserve(coordinates.size());
    for (const auto& c : coordinates) x.push_back(c.iterates.back());
    return x;
  }
};

/// Coordinatewise fractional descent. Each coordinate j is updated with its
/// own previous iterate as the operator's lower limit; when an l1 penalty is
/// present, the closed-form smoothed gradient of lambda |x_j| is added to the
/// coordinate's fractional base gradient.
template <class F, class G>
VectorDescentTrace fgd_run_vector(F&& f, G&& grad, std::vector<double> x0,
                                  const DescentConfig& cfg,
                                  const std::optional<L1Config>& l1 = std::nullopt,
                                  const QuadConfig& q = QuadConfig{}) {
  cfg.validate();
  if (x0.empty()) throw std::invalid_argument("fgd_run_vector: dimension must be >= 1");
  const std::size_t dim = x0.size();
  const double lambda = l1 ? l1->lambda : 0.0;

  VectorDescentTrace tr;
  tr.coordinates.resize(dim);
  std::vector<double> x = x0;
  std::vector<double> x_prev(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    x_prev[j] = x[j] - 0.1 * std::max(1.0, std::fabs(x[j]));
    tr.coordinates[j].iterates.push_back(x[j]);
  }
  auto objective = [&](const std::vector<double>& v) {
    return l1_objective(f, std::span<const double>(v), lambda);
  };
  tr.objective.push_back(objective(x));

  for (int k = 0; k < cfg.max_iter; ++k) {
    // total (smoothed) gradient for the stopping rule
    double gmax = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      double gj = grad(x, j);
      if (l1) gj = smoothed_l1_grad(gj, x[j], *l1);
      gmax = std::max(gmax, std::fabs(gj));
    }
    if (gmax < cfg.grad_tol) {
      tr.termination = Termination::GradTol;
      break;
    }

    std::vector<double> x_next(dim);
    double step_max = 0.0;
    bool div = false;
    for (std::size_t j = 0; j < dim; ++j) {
      auto partial = [&](double s) {
        std::vector<double> y = x;
        y[j] = s;
        return grad(y, j);
      };
      FgdStepResult st = fgd_step(partial, x[j], x_prev[j], cfg, q);
      double deriv = st.deriv;
      if (l1) {
        deriv = smoothed_l1_grad(deriv, x[j], *l1);
        st.flags |= kFlagL1;
      }
      x_next[j] = x[j] - cfg.mu * deriv;
      auto& c = tr.coordinates[j];
      c.grad_proxy.push_back(deriv);
      c.flags.push_back(st.flags);
      c.steps.push_back(std::fabs(x_next[j] - x[j]));
      c.iterates.push_back(x_next[j]);
      step_max = std::max(step_max, c.steps.back());
      if (detail::diverged(x_next[j])) div = true;
    }
    x_prev = x;
    x = x_next;
    tr.objective.push_back(objective(x));
    if (div) {
      tr.termination = Termination::Diverged;
      break;
    }
    if (step_max < cfg.step_tol) {
      tr.termination = Termination::StepTol;
      break;
    }
  }
  for (auto& c : tr.coordinates) {
    c.termination = tr.termination;
    c.objective = tr.objective;
  }
  return tr;
}

/// Trace CSV: columns k, t_k, step, f_t, grad_proxy, flags. The last row has
/// no step/gradient (no step was taken from it).
inline void write_trace_csv(std::ostream& os, const DescentTrace& tr) {
  os << "k,t_k,step,f_t,grad_proxy,flags\n";
  char buf[160];
  for (std::size_t k = 0; k < tr.iterates.size(); ++k) {
    std::string flags;
    if (k < tr.flags.size()) {
      if (tr.flags[k] & kFlagOrientationSwap) flags += "swap|";
      if (tr.flags[k] & kFlagFloorWindow) flags += "floor|";
      if (tr.flags[k] & kFlagQuadrature) flags += "quad|";
      if (tr.flags[k] & kFlagL1) flags += "l1|";
      if (!flags.empty()) flags.pop_back();
    }
    if (k < tr.steps.size()) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%s\n", k,
                    tr.iterates[k], tr.steps[k], tr.objective[k], tr.grad_proxy[k],
                    flags.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,,%.17g,,\n", k, tr.iterates[k],
                    tr.objective[k]);
    }
    os << buf;
  }
}

}  // namespace sigmafrac
