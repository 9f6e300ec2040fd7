#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "sigmafrac/errors.hpp"
#include "sigmafrac/grid_function.hpp"
#include "sigmafrac/kernels.hpp"
#include "sigmafrac/quadrature.hpp"
#include "sigmafrac/special_functions.hpp"

namespace sigmafrac {

/// Outcome of a quadrature-backed derivative evaluation. err_estimate is an
/// a-posteriori quadrature estimate, not a truth bound.
struct DerivResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long n_evals = 0;
  Convention convention = Convention::FullMass;
  bool converged = true;
  bool grid_coarse = false;  // sampled-data path only
};

/// alpha = 1 branch: the operator reduces to the classical derivative, so we
/// just report the supplied f'(t).
template <class F>
DerivResult classical_branch(F&& fprime, double t,
                             Convention conv = Convention::FullMass) {
  return DerivResult{fprime(t), 0.0, 1, conv, true, false};
}

namespace detail {

// The causal kernels concentrate at one endpoint. On an interval much longer
// than the kernel reach, a sampler that never lands inside the support would
// silently report zero, so the support panel is integrated separately from
// the (essentially zero) remainder.
template <class G>
QuadResult integrate_endpoint_kernel(G&& g, double a, double b, bool near_right,
                                     double reach, const QuadConfig& q) {
  if (b - a <= reach) return integrate(g, a, b, q);
  const double cut = near_right ? b - reach : a + reach;
  QuadResult main_part = near_right ? integrate(g, cut, b, q) : integrate(g, a, cut, q);
  const QuadResult far = near_right ? integrate(g, a, cut, q) : integrate(g, cut, b, q);
  main_part.value += far.value;
  main_part.err_estimate += far.err_estimate;
  main_part.n_evals += far.n_evals;
  main_part.converged = main_part.converged && far.converged;
  return main_part;
}

}  // namespace detail

/// Sigmoidal derivative C1(alpha) * integral_a^t f'(s) sech2((s-t)/(1-alpha)) ds.
template <class F>
DerivResult sig_deriv(F&& fprime, double a, double t, const FractionalOrder& order,
                      const QuadConfig& q = QuadConfig{}) {
  if (!(a <= t)) throw std::invalid_argument("sig_deriv: need a <= t");
  if (order.classical()) return classical_branch(fprime, t, order.convention());
  if (a == t) return DerivResult{0.0, 0.0, 0, order.convention(), true, false};
  const double w = order.width();
  auto integrand = [&](double s) { return fprime(s) * sech2((s - t) / w); };
  // sech2(45) ~ 3e-39: everything beyond 45 widths is noise-level
  const QuadResult r = detail::integrate_endpoint_kernel(integrand, a, t, true, 45.0 * w, q);
  const double c1 = c1_constant(order);
  return DerivResult{c1 * r.value, c1 * r.err_estimate, r.n_evals,
                     order.convention(), r.converged, false};
}

/// Same integral restricted to the memory window [t-L, t].
template <class F>
DerivResult sig_deriv_truncated(F&& fprime, double t, double L,
                                const FractionalOrder& order,
                                const QuadConfig& q = QuadConfig{}) {
  if (!(L > 0.0)) throw std::invalid_argument("sig_deriv_truncated: need L > 0");
  return sig_deriv(std::forward<F>(fprime), t - L, t, order, q);
}

/// Caputo derivative (1/Gamma(1-alpha)) integral_a^t f'(s) (t-s)^{-alpha} ds.
/// The endpoint singularity is removed with the substitution u = (t-s)^{1-alpha},
/// which turns the integral into (1/Gamma(2-alpha)) integral_0^{(t-a)^{1-alpha}}
/// f'(t - u^{1/(1-alpha)}) du with a bounded integrand.
template <class F>
DerivResult caputo_deriv(F&& fprime, double a, double t, double alpha,
                         const QuadConfig& q = QuadConfig{}) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("caputo_deriv: alpha must lie in (0, 1)");
  if (!(a <= t)) throw std::invalid_argument("caputo_deriv: need a <= t");
  if (a == t) return DerivResult{};
  const double w = 1.0 - alpha;
  const double beta = 1.0 / w;
  const double upper = std::pow(t - a, w);
  auto integrand = [&](double u) { return fprime(t - std::pow(u, beta)); };
  const QuadResult r = integrate(integrand, 0.0, upper, q);
  const double pref = 1.0 / gamma_fn(2.0 - alpha);
  return DerivResult{pref * r.value, pref * r.err_estimate, r.n_evals,
                     Convention::FullMass, r.converged, false};
}

/// Caputo-Fabrizio derivative (M(alpha)/(1-alpha)) integral_a^t f'(s)
/// exp(-alpha (t-s)/(1-alpha)) ds.
template <class F>
DerivResult caputo_fabrizio_deriv(F&& fprime, double a, double t, double alpha,
                                  double m_alpha, const QuadConfig& q = QuadConfig{}) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("caputo_fabrizio_deriv: alpha must lie in (0, 1)");
  if (!(a <= t)) throw std::invalid_argument("caputo_fabrizio_deriv: need a <= t");
  if (a == t) return DerivResult{};
  const double w = 1.0 - alpha;
  const double rate = alpha / w;
  auto integrand = [&](double s) { return fprime(s) * std::exp(-rate * (t - s)); };
  const QuadResult r =
      detail::integrate_endpoint_kernel(integrand, a, t, true, 90.0 / rate, q);
  const double pref = m_alpha / w;
  return DerivResult{pref * r.value, pref * r.err_estimate, r.n_evals,
                     Convention::FullMass, r.converged, false};
}

/// Generic kernel operator of a KernelSpec: dispatches to the matching
/// evaluation path (the power kernel always goes through the
/// singularity-aware substitution).
template <class F>
DerivResult kernel_deriv(const KernelSpec& k, F&& fprime, double a, double t,
                         const QuadConfig& q = QuadConfig{}) {
  switch (k.family) {
    case KernelFamily::SigmoidalSech2:
      return sig_deriv(std::forward<F>(fprime), a, t, k.order, q);
    case KernelFamily::CaputoPower:
      return caputo_deriv(std::forward<F>(fprime), a, t, k.order.alpha(), q);
    case KernelFamily::CaputoFabrizioExp:
      return caputo_fabrizio_deriv(std::forward<F>(fprime), a, t, k.order.alpha(),
                                   k.m_alpha, q);
    case KernelFamily::Gaussian: {
      if (!(a <= t)) throw std::invalid_argument("kernel_deriv: need a <= t");
      auto integrand = [&](double s) { return fprime(s) * eval_kernel(k, t, s); };
      const QuadResult r =
          detail::integrate_endpoint_kernel(integrand, a, t, true, 14.0 * k.sigma, q);
      return DerivResult{r.value, r.err_estimate, r.n_evals, k.order.convention(),
                         r.converged, false};
    }
  }
  throw std::logic_error("kernel_deriv: unknown family");
}

/// Sampled-data sigmoidal derivative at grid node `index`: second-order finite
/// differences for f', composite trapezoid of the sampled product against the
/// sech2 kernel. Agrees with sig_deriv on smooth data to O(h^2).
inline DerivResult sig_deriv_sampled(const GridFunction& g, std::size_t index,
                                     const FractionalOrder& order) {
  const std::size_t n = g.n();
  if (index < 1 || index > n)
    throw std::invalid_argument("sig_deriv_sampled: index must lie in [1, n]");
  const bool coarse = n < 8;
  const std::vector<double> d = g.derivative_samples();
  if (order.classical())
    return DerivResult{d[index], 0.0, static_cast<long>(n + 1),
                       order.convention(), true, coarse};

  const double w = order.width();
  const double h = g.h();
  const double ti = g.node(index);
  auto product = [&](std::size_t j) { return d[j] * sech2((g.node(j) - ti) / w); };

  auto trap = [&](std::size_t stride) {
    // composite trapezoid over nodes {0, stride, 2*stride, ...} up to the
    // largest multiple <= index, then fine panels for any remainder
    double acc = 0.0;
    std::size_t j = 0;
    double prev = product(0);
    while (j + stride <= index) {
      const double cur = product(j + stride);
      acc += 0.5 * (prev + cur) * (h * static_cast<double>(stride));
      prev = cur;
      j += stride;
    }
    for (; j < index; ++j) acc += 0.5 * (product(j) + product(j + 1)) * h;
    return acc;
  };

  const double fine = trap(1);
  double err = 0.0;
  if (index >= 4) {
    const double coarse2 = trap(2);
    err = std::fabs(fine - coarse2) / 3.0;  // Richardson-style estimate
  } else {
    err = h * h * (std::fabs(fine) + 1.0);
  }
  const double c1 = c1_constant(order);
  return DerivResult{c1 * fine, c1 * err, static_cast<long>(index + 1),
                     order.convention(), true, coarse};
}

/// Memory length L >= (1-alpha) sqrt(|C1(alpha)| C0 / eps) guaranteeing a
/// truncation error of at most eps for |f'| <= C0.
inline double sig_memory_length(double eps, double c0, const FractionalOrder& order) {
  if (!(eps > 0.0) || !(c0 > 0.0))
    throw std::invalid_argument("sig_memory_length: eps and c0 must be positive");
  return order.width() * std::sqrt(std::fabs(c1_constant(order)) * c0 / eps);
}

/// Truncation error bound C1(alpha) C0 / (1 + (L/(1-alpha))^2).
inline double truncation_error_bound(double L, double c0, const FractionalOrder& order) {
  if (!(L >= 0.0) || !(c0 > 0.0))
    throw std::invalid_argument("truncation_error_bound: need L >= 0, c0 > 0");
  const double x = L / order.width();
  return c1_constant(order) * c0 / (1.0 + x * x);
}

/// Memory length for the Caputo comparison operator,
/// (M / (eps |Gamma(2-alpha)|))^{1/(alpha-1)}. The bound degenerates when the
/// ratio drops to 1 or below (a negative power of a number <= 1).
struct CaputoMemoryLength {
  double value;
  bool degenerate;
};

inline CaputoMemoryLength caputo_memory_length(double eps, double m, double alpha) {
  if (!(eps > 0.0) || !(m > 0.0))
    throw std::invalid_argument("caputo_memory_length: eps and m must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("caputo_memory_length: alpha must lie in (0, 1)");
  const double ratio = m / (eps * std::fabs(gamma_fn(2.0 - alpha)));
  return CaputoMemoryLength{std::pow(ratio, 1.0 / (alpha - 1.0)), ratio <= 1.0};
}

/// The four-term chain
///   integral f' e^{-x^2}  <=  sig_deriv / C1  <=  integral f' w^2/(w^2+lag^2)
///   <=  f(t) - f(a),     x = (s-t)/(1-alpha),
/// valid for f' >= 0 on [a, t].
struct SandwichBounds {
  double lower, mid, upper, cap;
};

template <class F>
SandwichBounds sandwich_bounds(F&& fprime, double a, double t,
                               const FractionalOrder& order,
                               const QuadConfig& q = QuadConfig{}) {
  if (!(a <= t)) throw std::invalid_argument("sandwich_bounds: need a <= t");
  const double w = order.width();
  auto gauss = [&](double s) {
    const double x = (s - t) / w;
    return fprime(s) * std::exp(-x * x);
  };
  auto lorentz = [&](double s) {
    const double lag = s - t;
    return fprime(s) * w * w / (w * w + lag * lag);
  };
  const QuadResult lo = integrate(gauss, a, t, q);
  const QuadResult up = integrate(lorentz, a, t, q);
  const QuadResult cp = integrate(fprime, a, t, q);
  const DerivResult dv = sig_deriv(fprime, a, t, order, q);
  const double mid = dv.value / c1_constant(order);

  const double slack = 10.0 * (q.abs_tol + lo.err_estimate + up.err_estimate +
                               cp.err_estimate + dv.err_estimate) +
                       1e-13 * std::max(1.0, std::fabs(cp.value));
  if (lo.value > mid + slack || mid > up.value + slack || up.value > cp.value + slack)
    throw ordering_error("sandwich_bounds: inequality chain violated (check f' >= 0)");
  return SandwichBounds{lo.value, mid, up.value, cp.value};
}

/// Residual of the commutation identity between the operator and the classical
/// derivative: |D^alpha(f')(t) - d/dt D^alpha(f)(t)|. With f'(a) != 0 the two
/// sides differ by the boundary term C1 f'(a) sech2((a-t)/(1-alpha)), which is
/// reported alongside.
struct CommutationResult {
  double residual;
  double boundary_term;
  bool hypothesis_ok;  // f'(a) = 0 as the identity requires
};

template <class F1, class F2>
CommutationResult commutation_residual(F1&& fprime, F2&& fsecond, double a, double t,
                                       const FractionalOrder& order,
                                       const QuadConfig& q = QuadConfig{}) {
  if (!(a < t)) throw std::invalid_argument("commutation_residual: need a < t");
  const double w = order.width();
  const double lhs = sig_deriv(fsecond, a, t, order, q).value;
  // outer derivative by central difference, step scaled to the kernel width
  const double h = w * 1e-3;
  const double gp = sig_deriv(fprime, a, t + h, order, q).value;
  const double gm = sig_deriv(fprime, a, t - h, order, q).value;
  const double rhs = (gp - gm) / (2.0 * h);
  const double fpa = fprime(a);
  const double boundary = c1_constant(order) * fpa * sech2((a - t) / w);
  return CommutationResult{std::fabs(lhs - rhs), boundary, std::fabs(fpa) <= 1e-10};
}

/// Mittag-Leffler growth bound: lhs = sig_deriv of E_{gamma,eta} over [a, t]
/// (termwise-differentiated series as the integrand). rhs is
/// C1(alpha) E_{gamma,eta}(t-a); rhs_proof_tail drops the k = 0 term. `holds`
/// refers to the full rhs; the tail variant is reported because it fails on
/// short intervals.
struct MlBoundResult {
  double lhs;
  double rhs;
  double rhs_proof_tail;
  bool holds;
  bool holds_proof_tail;
};

inline MlBoundResult ml_bound_check(const MLParams& p, double a, double t,
                                    const FractionalOrder& order,
                                    const QuadConfig& q = QuadConfig{}) {
  if (!(0.0 < a && a < t))
    throw std::invalid_argument("ml_bound_check: need 0 < a < t");
  auto eprime = [&](double s) { return mittag_leffler_deriv(p, s); };
  const DerivResult d = sig_deriv(eprime, a, t, order, q);
  const double c1 = c1_constant(order);
  const double tail = mittag_leffler_tail(p, t - a);
  const double full = tail + 1.0 / gamma_fn(p.eta_param);
  const double tol = 1e-9 * std::max(1.0, std::fabs(d.value)) + 10.0 * d.err_estimate;
  return MlBoundResult{d.value, c1 * full, c1 * tail, d.value <= c1 * full + tol,
                       d.value <= c1 * tail + tol};
}

/// Finite-window maximal-function bound: lhs = sig_deriv over [-t, t], rhs =
/// 2 T C1(alpha) sup_{0 < r <= T} (1/2r) integral_{-r}^{r} |f'|, the centered
/// maximal function at 0 scanned over a geometric radius grid.
struct MaximalBoundResult {
  double lhs;
  double rhs;
  double maximal_value;
  bool holds;
};

template <class F>
MaximalBoundResult maximal_bound_check(F&& fprime, double T, double t,
                                       const FractionalOrder& order,
                                       const QuadConfig& q = QuadConfig{}) {
  if (!(T > 0.0) || !(t > 0.0) || !(t <= T))
    throw std::invalid_argument("maximal_bound_check: need 0 < t <= T");
  auto absfp = [&](double s) { return std::fabs(fprime(s)); };
  double maximal = std::fabs(fprime(0.0));  // r -> 0 limit of the average
  double r = T;
  for (int j = 0; j < 48 && r > 1e-12 * T; ++j, r *= 0.5) {
    const double avg = integrate(absfp, -r, r, q).value / (2.0 * r);
    maximal = std::max(maximal, avg);
  }
  const DerivResult d = sig_deriv(fprime, -t, t, order, q);
  const double rhs = 2.0 * T * c1_constant(order) * maximal;
  const double tol = 1e-9 * std::max(1.0, std::fabs(rhs)) + 10.0 * d.err_estimate;
  return MaximalBoundResult{d.value, rhs, maximal, d.value <= rhs + tol};
}

}  // namespace sigmafrac
