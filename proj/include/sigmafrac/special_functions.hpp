#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sigmafrac/errors.hpp"

namespace sigmafrac {

namespace detail {

inline bool nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Lanczos approximation, g = 7, 9 terms.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczosC[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline double lanczos_sum(double z) {
  double a = kLanczosC[0];
  for (int i = 1; i < 9; ++i) a += kLanczosC[i] / (z + i);
  return a;
}

}  // namespace detail

/// Gamma function on the real line. Poles at 0, -1, -2, ... are rejected.
inline double gamma_fn(double x) {
  if (!std::isfinite(x)) throw std::domain_error("gamma_fn: argument must be finite");
  if (detail::nonpositive_integer(x))
    throw std::domain_error("gamma_fn: pole at x = " + std::to_string(x));
  if (x < 0.5) {
    // reflection through sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  const double t = z + detail::kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) *
         detail::lanczos_sum(z);
}

/// log Gamma for x > 0, safe where gamma_fn itself would overflow.
inline double lgamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("lgamma_fn: requires x > 0");
  if (x < 0.5) return std::log(gamma_fn(x));
  const double z = x - 1.0;
  const double t = z + detail::kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(detail::lanczos_sum(z));
}

namespace detail {

inline double real_part(double x) { return x; }
inline double real_part(const std::complex<double>& z) { return z.real(); }

// Digamma by upward recurrence into the asymptotic regime, with reflection
// for arguments left of 1/2. Works for double and complex<double>.
template <class T>
T digamma_core(T z) {
  T acc{};
  if (real_part(z) < 0.5) {
    const T piz = std::numbers::pi * z;
    acc -= std::numbers::pi * std::cos(piz) / std::sin(piz);
    z = 1.0 - z;
  }
  while (real_part(z) < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const T inv = 1.0 / z;
  const T inv2 = inv * inv;
  // Bernoulli tail B_2n / (2n z^{2n}) through n = 7
  const T tail =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 -
                                                      inv2 * (1.0 / 12.0)))))));
  return acc + std::log(z) - 0.5 * inv - tail;
}

}  // namespace detail

/// Digamma Psi(x) = Gamma'(x)/Gamma(x) on the real line.
inline double digamma_fn(double x) {
  if (!std::isfinite(x)) throw std::domain_error("digamma_fn: argument must be finite");
  if (detail::nonpositive_integer(x))
    throw std::domain_error("digamma_fn: pole at x = " + std::to_string(x));
  return detail::digamma_core(x);
}

/// Digamma for complex arguments (needed by the Laplace multiplier).
inline std::complex<double> digamma_fn(std::complex<double> z) {
  if (z.imag() == 0.0 && detail::nonpositive_integer(z.real()))
    throw std::domain_error("digamma_fn: pole at z = " + std::to_string(z.real()));
  return detail::digamma_core(z);
}

/// Parameters of the two-parameter Mittag-Leffler function E_{gamma,eta}.
struct MLParams {
  double gamma_param;
  double eta_param;
  MLParams(double g, double e) : gamma_param(g), eta_param(e) {
    if (!(g > 0.0) || !(e > 0.0))
      throw std::invalid_argument("MLParams: both parameters must be positive");
  }
};

namespace detail {

// Direct series with the stop rule: three consecutive terms below
// 1e-16 * |running sum|. Terms are formed in log space so Gamma growth
// cannot overflow intermediates. `kmin` lets callers drop leading terms.
inline double ml_series(const MLParams& p, double z, int kmin, bool weight_k) {
  double sum = 0.0;
  if (kmin == 0) {
    sum = weight_k ? 0.0 : 1.0 / gamma_fn(p.eta_param);
    kmin = 1;
  }
  if (z == 0.0) {
    if (weight_k && kmin <= 1) sum += 1.0 / gamma_fn(p.gamma_param + p.eta_param);
    return sum;
  }
  const double lz = std::log(std::fabs(z));
  int streak = 0;
  for (int k = kmin; k <= 10000; ++k) {
    double lmag = k * lz - lgamma_fn(p.gamma_param * k + p.eta_param);
    if (weight_k) lmag += std::log(static_cast<double>(k)) - lz;  // k * z^{k-1}
    double term = std::exp(lmag);
    const int power = weight_k ? k - 1 : k;  // z^{k-1} vs z^k
    if (z < 0.0 && (power & 1)) term = -term;
    sum += term;
    if (!std::isfinite(sum))
      throw non_convergence_error("mittag_leffler: series overflowed before settling");
    if (std::fabs(term) <= 1e-16 * std::fabs(sum)) {
      if (++streak >= 3) return sum;
    } else {
      streak = 0;
    }
  }
  throw non_convergence_error("mittag_leffler: series did not settle in 10000 terms");
}

}  // namespace detail

/// E_{gamma,eta}(z) by direct series; restricted to |z| <= 50 (series regime).
inline double mittag_leffler(const MLParams& p, double z) {
  if (!(std::fabs(z) <= 50.0))
    throw std::domain_error("mittag_leffler: |z| <= 50 required");
  return detail::ml_series(p, z, 0, false);
}

/// Termwise derivative E'_{gamma,eta}(z) = sum_{k>=1} k z^{k-1} / Gamma(gamma k + eta).
inline double mittag_leffler_deriv(const MLParams& p, double z) {
  if (!(std::fabs(z) <= 50.0))
    throw std::domain_error("mittag_leffler_deriv: |z| <= 50 required");
  return detail::ml_series(p, z, 0, true);
}

/// E_{gamma,eta}(z) with the k = 0 term dropped: sum_{k>=1} z^k / Gamma(gamma k + eta).
inline double mittag_leffler_tail(const MLParams& p, double z) {
  if (!(std::fabs(z) <= 50.0))
    throw std::domain_error("mittag_leffler_tail: |z| <= 50 required");
  return detail::ml_series(p, z, 1, false);
}

/// Closed form of the alternating series sum_{k>=0} (-1)^k / (s k + 1):
/// (Psi((s+1)/(2s)) - Psi(1/(2s))) / (2s), for s > 0.
inline double alt_series_digamma(double s) {
  if (!(s > 0.0)) throw std::domain_error("alt_series_digamma: s must be positive");
  return (digamma_fn((s + 1.0) / (2.0 * s)) - digamma_fn(1.0 / (2.0 * s))) / (2.0 * s);
}

}  // namespace sigmafrac
