// Fractional gradient descent on (t-2)^2 next to the classical baseline, and
// a one-dimensional lasso toy with the smoothed penalty.
#include <cstdio>

#include "sigmafrac/optimizer.hpp"

int main() {
  using namespace sigmafrac;
  auto f = [](double t) { return (t - 2.0) * (t - 2.0); };
  auto fp = [](double t) { return 2.0 * (t - 2.0); };

  DescentConfig frac(0.1, FractionalOrder(0.9));
  frac.t_init = 0.0;
  frac.t_prev_init = -0.1;
  const DescentTrace ft = fgd_run(f, fp, frac);
  std::printf("fractional: %zu steps, final t = %.6f, termination %s\n",
              ft.steps.size(), ft.final_iterate(), to_string(ft.termination));

  DescentConfig classical(0.1, FractionalOrder(1.0));
  classical.t_init = 0.0;
  const DescentTrace ct = gd_run(f, fp, classical);
  std::printf("classical:  %zu steps, final t = %.6f, termination %s\n",
              ct.steps.size(), ct.final_iterate(), to_string(ct.termination));

  L1Config l1(0.5, 1e-3, FractionalOrder(0.999));
  DescentConfig lcfg(0.1, FractionalOrder(0.999));
  lcfg.max_iter = 3000;
  auto base = [](std::span<const double> x) { return 0.5 * (x[0] - 3.0) * (x[0] - 3.0); };
  auto grad = [](const std::vector<double>& x, std::size_t) { return x[0] - 3.0; };
  const VectorDescentTrace vt = fgd_run_vector(base, grad, {0.0}, lcfg, l1);
  std::printf("lasso toy:  final x = %.6f (soft-threshold answer 2.5)\n",
              vt.final_iterate()[0]);
  return 0;
}
