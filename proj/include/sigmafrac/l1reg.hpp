#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "sigmafrac/kernels.hpp"

namespace sigmafrac {

/// Configuration for the sigmoidally smoothed l1 penalty: weight lambda and
/// the operator's lower limit a (a > 0, which keeps the |s| kernel integral
/// on one side of the origin).
struct L1Config {
  double lambda;
  double a;
  FractionalOrder order;

  L1Config(double lambda_, double a_, FractionalOrder order_)
      : lambda(lambda_), a(a_), order(order_) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("L1Config: lambda must be >= 0");
    if (!(a > 0.0)) throw std::invalid_argument("L1Config: a must be positive");
    if (order.classical())
      throw std::invalid_argument("L1Config: smoothing requires alpha < 1");
  }
};

/// Smoothed gradient of lambda |x|:
///   lambda C1(alpha) (1-alpha) tanh((x-a)/(1-alpha)),
/// a tanh ramp of width 1-alpha. Under FullMass this is lambda tanh(...).
inline double smoothed_abs_grad(double x, const L1Config& c) {
  const double w = c.order.width();
  return c.lambda * c1_constant(c.order) * w * std::tanh((x - c.a) / w);
}

/// Antiderivative of smoothed_abs_grad in x (used by smoothness checks):
///   lambda C1(alpha) (1-alpha)^2 log cosh((x-a)/(1-alpha)).
inline double smoothed_abs_antideriv(double x, const L1Config& c) {
  const double w = c.order.width();
  return c.lambda * c1_constant(c.order) * w * w * log_cosh((x - c.a) / w);
}

/// base(x) + lambda * sum_k |x_k|.
template <class F>
double l1_objective(F&& base, std::span<const double> x, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("l1_objective: lambda must be >= 0");
  double penalty = 0.0;
  for (double v : x) penalty += std::fabs(v);
  return base(x) + lambda * penalty;
}

/// Coordinate gradient of the smoothed l1-regularized objective: the caller's
/// chosen gradient of the base term plus the smoothed penalty gradient.
inline double smoothed_l1_grad(double base_grad_j, double x_j, const L1Config& c) {
  return base_grad_j + smoothed_abs_grad(x_j, c);
}

}  // namespace sigmafrac
