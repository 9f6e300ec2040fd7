#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "sigmafrac/errors.hpp"
#include "sigmafrac/fracderiv.hpp"
#include "sigmafrac/kernels.hpp"
#include "sigmafrac/quadrature.hpp"

namespace sigmafrac {

/// Discretized sigmoidal operator on a uniform grid: lower-triangular weight
/// table W with (W f')_i ~ C1(alpha) integral_a^{t_i} f'(s) sech2((s-t_i)/(1-alpha)) ds,
/// the composite trapezoid rule applied to the sampled product. The kernel is
/// stationary (depends on i - j only), so one row of samples is stored.
///
/// Row 0 of the operator is the empty integral; the triangular system covers
/// rows 1..n and forward substitution needs a starting value f'(a) from the
/// caller (picard_solve estimates it as u'(a)/C1 by a one-sided difference).
class VolterraSystem {
 public:
  VolterraSystem(double a, double b, std::size_t n, FractionalOrder order)
      : a_(a), b_(b), n_(n), order_(order) {
    if (n_ < 8) throw std::invalid_argument("VolterraSystem: need n >= 8");
    if (!(b_ > a_)) throw std::invalid_argument("VolterraSystem: need b > a");
    if (order_.classical())
      throw std::invalid_argument("VolterraSystem: requires alpha < 1");
    h_ = (b_ - a_) / static_cast<double>(n_);
    c1h_ = c1_constant(order_) * h_;
    const double w = order_.width();
    kern_.resize(n_ + 1);
    for (std::size_t d = 0; d <= n_; ++d)
      kern_[d] = sech2(static_cast<double>(d) * h_ / w);
  }

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t n() const { return n_; }
  double h() const { return h_; }
  const FractionalOrder& order() const { return order_; }
  double node(std::size_t i) const { return a_ + static_cast<double>(i) * h_; }
  std::vector<double> nodes() const {
    std::vector<double> t(n_ + 1);
    for (std::size_t i = 0; i <= n_; ++i) t[i] = node(i);
    return t;
  }

  /// W_{ij} for 1 <= i <= n, 0 <= j <= i. Diagonal is C1 h sech2(0)/2 > 0.
  double weight(std::size_t i, std::size_t j) const {
    const double edge = (j == 0 || j == i) ? 0.5 : 1.0;
    return c1h_ * edge * kern_[i - j];
  }

  /// (W f')_i for i = 0..n; entry 0 is identically zero.
  std::vector<double> apply(std::span<const double> fprime) const {
    if (fprime.size() != n_ + 1)
      throw std::invalid_argument("VolterraSystem::apply: size mismatch");
    std::vector<double> u(n_ + 1, 0.0);
    for (std::size_t i = 1; i <= n_; ++i) {
      double acc = 0.5 * (kern_[i] * fprime[0] + kern_[0] * fprime[i]);
      for (std::size_t j = 1; j < i; ++j) acc += kern_[i - j] * fprime[j];
      u[i] = c1h_ * acc;
    }
    return u;
  }

  /// Forward substitution for W f' = u given the starting value f'(a).
  /// Exact inverse of apply() for data W produced itself.
  std::vector<double> solve(std::span<const double> u, double fprime0) const {
    if (u.size() != n_ + 1)
      throw std::invalid_argument("VolterraSystem::solve: size mismatch");
    std::vector<double> f(n_ + 1, 0.0);
    f[0] = fprime0;
    for (std::size_t i = 1; i <= n_; ++i) {
      double acc = 0.5 * kern_[i] * f[0];
      for (std::size_t j = 1; j < i; ++j) acc += kern_[i - j] * f[j];
      f[i] = (u[i] / c1h_ - acc) / (0.5 * kern_[0]);
    }
    return f;
  }

  /// 1-norm condition estimate of the square triangular part (rows/cols 1..n):
  /// exact ||W||_1, ||W^-1||_1 probed with a few solves. Grows as h shrinks
  /// (first-kind Volterra ill-conditioning), reported rather than hidden.
  double condition_estimate() const {
    double wnorm = 0.0;
    for (std::size_t j = 1; j <= n_; ++j) {
      double col = 0.0;
      for (std::size_t i = j; i <= n_; ++i) col += std::fabs(weight(i, j));
      wnorm = std::max(wnorm, col);
    }
    // ||W^-1||_1 lower-bounded by solve probes (||A||_1 = sup ||Av||_1/||v||_1,
    // attained at a coordinate vector)
    double inv_norm = 0.0;
    std::vector<double> u(n_ + 1, 0.0);
    auto probe = [&](auto fill) {
      for (std::size_t i = 1; i <= n_; ++i) u[i] = fill(i);
      std::vector<double> x = solve(u, 0.0);
      double s = 0.0, unorm = 0.0;
      for (std::size_t i = 1; i <= n_; ++i) {
        s += std::fabs(x[i]);
        unorm += std::fabs(u[i]);
      }
      if (unorm > 0.0) inv_norm = std::max(inv_norm, s / unorm);
    };
    probe([this](std::size_t i) { return i == n_ ? 1.0 : 0.0; });
    probe([](std::size_t i) { return i == 1 ? 1.0 : 0.0; });
    probe([](std::size_t i) { return (i & 1) ? 1.0 : -1.0; });
    return wnorm * inv_norm;
  }

 private:
  double a_, b_, h_ = 0.0, c1h_ = 0.0;
  std::size_t n_;
  FractionalOrder order_;
  std::vector<double> kern_;
};

inline VolterraSystem build_volterra(double a, double b, std::size_t n,
                                     FractionalOrder order) {
  return VolterraSystem(a, b, n, order);
}

/// Residual of the claimed closed-form solution f = g/C1 + f0 for the problem
/// D^alpha f = G with G(t) = integral_0^t g. Reports the largest node gap
/// |(W f')_i - G(t_i)| without asserting it small; the claim is under test.
struct ClosedFormResidual {
  double max_residual;
  std::vector<double> nodes;
  std::vector<double> operator_values;
  std::vector<double> g_integral;
};

template <class G>
ClosedFormResidual thm29_residual(G&& g, double f0, double a, double b, std::size_t n,
                                  const FractionalOrder& order,
                                  const QuadConfig& q = QuadConfig{}) {
  VolterraSystem sys(a, b, n, order);
  const double c1 = c1_constant(order);
  auto fhat = [&](double t) { return g(t) / c1 + f0; };
  GridFunction samples = GridFunction::sample(fhat, a, b, n);
  const std::vector<double> u = sys.apply(samples.derivative_samples());

  // G(t_i) = integral_0^{t_i} g: adaptive up to the grid start, then
  // cumulative trapezoid along the grid
  std::vector<double> gint(n + 1);
  double base = (a == 0.0) ? 0.0 : integrate(g, 0.0, a, q).value;
  gint[0] = base;
  for (std::size_t i = 1; i <= n; ++i)
    gint[i] = gint[i - 1] + 0.5 * (g(sys.node(i - 1)) + g(sys.node(i))) * sys.h();

  ClosedFormResidual out;
  out.nodes = sys.nodes();
  out.operator_values = u;
  out.g_integral = gint;
  out.max_residual = 0.0;
  for (std::size_t i = 0; i <= n; ++i)
    out.max_residual = std::max(out.max_residual, std::fabs(u[i] - gint[i]));
  return out;
}

/// Contraction quantity |(alpha-1) C1(alpha) c0| gating the fixed-point solve.
/// Under FullMass the prefactor is exactly 1 for every alpha, so the gate is
/// c0 < 1; under PaperHalfMass it is c0 < 2.
struct ContractionCheck {
  double value;
  bool ok;
};

inline ContractionCheck contraction_check(double c0, const FractionalOrder& order) {
  if (!(c0 > 0.0)) throw std::invalid_argument("contraction_check: c0 must be positive");
  const double v = std::fabs((order.alpha() - 1.0) * c1_constant(order) * c0);
  return ContractionCheck{v, v < 1.0};
}

/// Discretized Picard iteration for  D^alpha f = g(t, f, D^alpha f),
/// f(a) = f0. Alternating sweep: pointwise damped fixed point for
/// u = g(t, f, u), triangular solve W f' = u, cumulative trapezoid for f.
struct PicardResult {
  std::vector<double> nodes;
  std::vector<double> f;
  std::vector<double> u;
  std::vector<double> sweep_deltas;  // max-norm change of f per sweep
  int sweeps;
  bool converged;
  double contraction_value;
  double condition_estimate;
};

template <class RHS>
PicardResult picard_solve(RHS&& rhs, double a, double b, std::size_t n, double f0,
                          const FractionalOrder& order, double c0, int max_sweeps,
                          double tol) {
  const ContractionCheck gate = contraction_check(c0, order);
  if (!gate.ok)
    throw contraction_error("picard_solve: contraction condition violated, |(alpha-1) C1 c0| = " +
                            std::to_string(gate.value));
  if (max_sweeps < 1 || !(tol > 0.0))
    throw std::invalid_argument("picard_solve: need max_sweeps >= 1 and tol > 0");

  VolterraSystem sys(a, b, n, order);
  const double c1 = c1_constant(order);
  PicardResult out;
  out.nodes = sys.nodes();
  out.f.assign(n + 1, f0);
  out.u.assign(n + 1, 0.0);
  out.converged = false;
  out.sweeps = 0;
  out.contraction_value = gate.value;
  out.condition_estimate = sys.condition_estimate();

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    // (1) pointwise fixed point u = rhs(t, f, u), damped if it oscillates
    for (std::size_t i = 0; i <= n; ++i) {
      double u = out.u[i];
      double prev_delta = std::numeric_limits<double>::infinity();
      double damp = 1.0;
      for (int it = 0; it < 200; ++it) {
        const double next = rhs(out.nodes[i], out.f[i], u);
        const double delta = std::fabs(next - u);
        if (delta > prev_delta) damp = 0.5;
        u += damp * (next - u);
        if (delta < 1e-14 * (1.0 + std::fabs(u))) break;
        prev_delta = delta;
      }
      out.u[i] = u;
    }
    // (2) recover f' from the triangular system; f'(a) = u'(a)/C1 to O(h^2)
    const double fp0 =
        (-3.0 * out.u[0] + 4.0 * out.u[1] - out.u[2]) / (2.0 * sys.h() * c1);
    const std::vector<double> fp = sys.solve(out.u, fp0);
    // (3) rebuild f by cumulative trapezoid from f0
    std::vector<double> fnew(n + 1);
    fnew[0] = f0;
    for (std::size_t i = 1; i <= n; ++i)
      fnew[i] = fnew[i - 1] + 0.5 * (fp[i - 1] + fp[i]) * sys.h();

    double delta = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      delta = std::max(delta, std::fabs(fnew[i] - out.f[i]));
    out.f = std::move(fnew);
    out.sweep_deltas.push_back(delta);
    out.sweeps = sweep + 1;
    if (delta < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

/// Three-column CSV (t, f, u) for solver output.
inline void write_solution_csv(std::ostream& os, std::span<const double> t,
                               std::span<const double> f, std::span<const double> u) {
  os << "t,f,u\n";
  char buf[120];
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t[i], f[i], u[i]);
    os << buf;
  }
}

}  // namespace sigmafrac
