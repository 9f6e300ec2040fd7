// Evaluate the sigmoidal derivative of sin on [0, 1] across orders and watch
// it approach the classical derivative cos(1), next to the Caputo and
// Caputo-Fabrizio comparison operators.
#include <cmath>
#include <cstdio>

#include "sigmafrac/fracderiv.hpp"

int main() {
  using namespace sigmafrac;
  auto fprime = [](double s) { return std::cos(s); };
  std::printf("%-8s %-14s %-14s %-14s\n", "alpha", "sigmoidal", "caputo", "caputo-fabrizio");
  for (double alpha : {0.3, 0.5, 0.7, 0.9, 0.99, 0.999}) {
    FractionalOrder order(alpha);
    const double sig = sig_deriv(fprime, 0.0, 1.0, order).value;
    const double cap = caputo_deriv(fprime, 0.0, 1.0, alpha).value;
    const double cf = caputo_fabrizio_deriv(fprime, 0.0, 1.0, alpha, 1.0).value;
    std::printf("%-8.3f %-14.8f %-14.8f %-14.8f\n", alpha, sig, cap, cf);
  }
  std::printf("classical cos(1) = %.8f\n", std::cos(1.0));
  return 0;
}
