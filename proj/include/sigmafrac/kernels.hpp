#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sigmafrac/special_functions.hpp"

namespace sigmafrac {

/// Normalization convention for C1(alpha).
///
/// FullMass (1/(1-alpha)) makes the one-sided alpha -> 1 limit equal f'(t);
/// PaperHalfMass (1/(2(1-alpha))) reproduces the 1/2 factors some closed
/// forms carry. Every result that depends on C1 records which one was used.
enum class Convention { FullMass, PaperHalfMass };

inline const char* to_string(Convention c) {
  return c == Convention::FullMass ? "full" : "paper";
}

/// Validated order alpha in (0, 1] with its normalization convention.
/// alpha = 1 is the distinguished classical branch; the kernel width
/// 1 - alpha is never used as a divisor there.
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha, Convention conv = Convention::FullMass)
      : alpha_(alpha), conv_(conv) {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha <= 1.0))
      throw std::invalid_argument("FractionalOrder: alpha must lie in (0, 1]");
  }
  double alpha() const { return alpha_; }
  Convention convention() const { return conv_; }
  bool classical() const { return alpha_ == 1.0; }
  double width() const {
    if (classical())
      throw std::domain_error("FractionalOrder: kernel width undefined at alpha = 1");
    return 1.0 - alpha_;
  }

 private:
  double alpha_;
  Convention conv_;
};

inline double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);  // overflow of cosh maps to 0, which is the right limit
}

// log(cosh(x)) without overflow
inline double log_cosh(double x) {
  const double ax = std::fabs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

/// C1(alpha): 1/(1-alpha) under FullMass, 1/(2(1-alpha)) under PaperHalfMass.
inline double c1_constant(const FractionalOrder& order) {
  if (order.classical())
    throw std::domain_error("c1_constant: invalid at alpha = 1 (classical branch bypasses C1)");
  const double w = order.width();
  return order.convention() == Convention::FullMass ? 1.0 / w : 0.5 / w;
}

enum class KernelFamily { SigmoidalSech2, CaputoPower, CaputoFabrizioExp, Gaussian };

inline const char* to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::SigmoidalSech2: return "sigmoidal";
    case KernelFamily::CaputoPower: return "caputo";
    case KernelFamily::CaputoFabrizioExp: return "caputo-fabrizio";
    case KernelFamily::Gaussian: return "gaussian";
  }
  return "?";
}

/// One kernel of the generic operator  integral_a^t K(t-s, alpha) f'(s) ds.
///
/// The power and exponential kernels carry their own normalization
/// (1/Gamma(1-alpha) resp. M(alpha)/(1-alpha)); the sech2 kernel is bare and
/// is paired with C1(alpha) by the operator that integrates it.
struct KernelSpec {
  KernelFamily family;
  FractionalOrder order;
  double sigma;    // Gaussian width; defaults to (1-alpha)/sqrt(2)
  double m_alpha;  // Caputo-Fabrizio normalization M(alpha)

  explicit KernelSpec(KernelFamily fam, FractionalOrder ord, double sig = 0.0,
                      double m = 1.0)
      : family(fam), order(ord), sigma(sig), m_alpha(m) {
    if (family == KernelFamily::Gaussian && sigma <= 0.0) {
      if (order.classical())
        throw std::invalid_argument("KernelSpec: Gaussian sigma required at alpha = 1");
      sigma = order.width() / std::numbers::sqrt2;
    }
    if (family == KernelFamily::Gaussian && !(sigma > 0.0))
      throw std::invalid_argument("KernelSpec: sigma must be positive");
    if (family == KernelFamily::CaputoFabrizioExp && !(m_alpha > 0.0))
      throw std::invalid_argument("KernelSpec: m_alpha must be positive");
  }
};

/// Kernel value K(t-s, alpha).
inline double eval_kernel(const KernelSpec& k, double t, double s) {
  const double lag = t - s;
  switch (k.family) {
    case KernelFamily::SigmoidalSech2:
      return sech2(lag / k.order.width());
    case KernelFamily::CaputoPower: {
      if (k.order.classical())
        throw std::domain_error("eval_kernel: power kernel needs alpha < 1");
      if (lag < 0.0)
        throw std::invalid_argument("eval_kernel: causal kernel needs s <= t");
      if (lag == 0.0)
        throw std::domain_error("eval_kernel: power kernel singular at s = t");
      return std::pow(lag, -k.order.alpha()) / gamma_fn(1.0 - k.order.alpha());
    }
    case KernelFamily::CaputoFabrizioExp: {
      const double w = k.order.width();
      if (lag < 0.0)
        throw std::invalid_argument("eval_kernel: causal kernel needs s <= t");
      return (k.m_alpha / w) * std::exp(-k.order.alpha() * lag / w);
    }
    case KernelFamily::Gaussian:
      return std::exp(-lag * lag / (2.0 * k.sigma * k.sigma)) /
             std::sqrt(2.0 * std::numbers::pi * k.sigma * k.sigma);
  }
  throw std::logic_error("eval_kernel: unknown family");
}

/// Closed form of  integral_a^t sech2((s-t)/(1-alpha)) ds
///               = (1-alpha) tanh((t-a)/(1-alpha)).
inline double sech2_antiderivative(const FractionalOrder& order, double a, double t) {
  if (!(a <= t)) throw std::invalid_argument("sech2_antiderivative: need a <= t");
  const double w = order.width();
  return w * std::tanh((t - a) / w);
}

}  // namespace sigmafrac
