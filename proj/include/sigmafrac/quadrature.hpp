#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sigmafrac {

/// Tolerances and subdivision budget for the adaptive integrator.
///
/// abs_tol has a floor of 1e-14 and max_subdivisions a cap of 1e6 so a
/// misconfigured caller cannot spin the engine forever.
struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4096;

  QuadConfig() = default;
  QuadConfig(double abs_tolerance, double rel_tolerance, int max_subdiv)
      : abs_tol(abs_tolerance), rel_tol(rel_tolerance), max_subdivisions(max_subdiv) {
    validate();
  }
  void validate() const {
    if (!(abs_tol >= 1e-14))
      throw std::invalid_argument("QuadConfig: abs_tol must be >= 1e-14");
    if (!(rel_tol >= 0.0))
      throw std::invalid_argument("QuadConfig: rel_tol must be >= 0");
    if (max_subdivisions < 1 || max_subdivisions > 1000000)
      throw std::invalid_argument("QuadConfig: max_subdivisions must be in [1, 1e6]");
  }
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long n_evals = 0;
  bool converged = true;
};

namespace detail {

// Kronrod-15 abscissae on [0,1] and weights; Gauss-7 shares the even-index
// abscissae (0, 2, 4, 6). Standard QUADPACK values.
inline constexpr double kGK15X[8] = {
    0.00000000000000000000000000000000000e+00,
    2.07784955007898467600689403773244913e-01,
    4.05845151377397166906606412076961463e-01,
    5.86087235467691130294144838258729598e-01,
    7.41531185599394439863864773280788407e-01,
    8.64864423359769072789712788640926201e-01,
    9.49107912342758524526189684047851262e-01,
    9.91455371120812639206854697526328517e-01,
};
inline constexpr double kGK15WK[8] = {
    2.09482141084727828012999174891714264e-01,
    2.04432940075298892414161999234649085e-01,
    1.90350578064785409913256402421013683e-01,
    1.69004726639267902826583426598550284e-01,
    1.40653259715525918745189590510237920e-01,
    1.04790010322250183839876322541518017e-01,
    6.30920926299785532907006631892042867e-02,
    2.29353220105292249637320080589695920e-02,
};
inline constexpr double kG7W[4] = {
    4.17959183673469387755102040816326531e-01,
    3.81830050505118944950369775488975134e-01,
    2.79705391489276667901467771423779582e-01,
    1.29484966168869693270611432679082018e-01,
};

struct Panel {
  double a, b;
  double value;
  double err;
};

struct PanelWorse {
  bool operator()(const Panel& p, const Panel& q) const { return p.err < q.err; }
};

// One Gauss-Kronrod 7-15 evaluation with the QUADPACK error heuristic.
template <class F>
Panel gk15(F& f, double a, double b) {
  const double hl = 0.5 * (b - a);
  const double c = 0.5 * (a + b);

  double fv[15];
  const double fc = f(c);
  fv[0] = fc;
  double resk = kGK15WK[0] * fc;
  double resg = kG7W[0] * fc;
  double resabs = kGK15WK[0] * std::fabs(fc);
  for (int i = 1; i < 8; ++i) {
    const double fp = f(c + hl * kGK15X[i]);
    const double fm = f(c - hl * kGK15X[i]);
    fv[2 * i - 1] = fp;
    fv[2 * i] = fm;
    resk += kGK15WK[i] * (fp + fm);
    resabs += kGK15WK[i] * (std::fabs(fp) + std::fabs(fm));
    if ((i & 1) == 0) resg += kG7W[i / 2] * (fp + fm);
  }
  const double reskh = 0.5 * resk;
  double resasc = kGK15WK[0] * std::fabs(fc - reskh);
  for (int i = 1; i < 8; ++i) {
    resasc += kGK15WK[i] *
              (std::fabs(fv[2 * i - 1] - reskh) + std::fabs(fv[2 * i] - reskh));
  }
  resasc *= std::fabs(hl);
  resabs *= std::fabs(hl);

  double err = std::fabs((resk - resg) * hl);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (round_floor > err) err = round_floor;

  return Panel{a, b, resk * hl, err};
}

}  // namespace detail

/// Adaptive integration of f over [a, b]: bisect the worst panel until the
/// summed Kronrod error estimate meets max(abs_tol, rel_tol * |value|) or the
/// panel budget runs out. Non-convergence is reported via the flag, with the
/// best available estimate.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadConfig& cfg = QuadConfig{}) {
  QuadResult out;
  if (a == b) return out;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelWorse> active;
  active.push(detail::gk15(f, a, b));
  out.n_evals = 15;
  double total = active.top().value;
  double total_err = active.top().err;
  int panels = 1;

  const double min_width = 16.0 * std::numeric_limits<double>::epsilon() * (b - a);
  double frozen_err = 0.0;  // panels too thin to split further

  while (true) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
    if (total_err + frozen_err <= tol) {
      out.converged = true;
      break;
    }
    if (panels >= cfg.max_subdivisions || active.empty()) {
      out.converged = false;
      break;
    }
    detail::Panel worst = active.top();
    active.pop();
    if (worst.b - worst.a < min_width) {
      frozen_err += worst.err;
      total_err -= worst.err;
      // value stays accounted inside `total`
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    detail::Panel left = detail::gk15(f, worst.a, mid);
    detail::Panel right = detail::gk15(f, mid, worst.b);
    out.n_evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    active.push(left);
    active.push(right);
    ++panels;
  }

  out.value = sign * total;
  out.err_estimate = total_err + frozen_err;
  return out;
}

}  // namespace sigmafrac
