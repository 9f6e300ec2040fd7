#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "oracle_support.hpp"
#include "sigmafrac/fde.hpp"

using namespace sigmafrac;

namespace {
const QuadConfig kTight{1e-12, 1e-12, 16384};
}

TEST_CASE("volterra weight table structure") {
  const VolterraSystem sys = build_volterra(0.0, 1.0, 64, FractionalOrder(0.5));
  const double c1h = c1_constant(FractionalOrder(0.5)) * sys.h();
  for (std::size_t i = 1; i <= 64; i += 7) {
    CHECK(sys.weight(i, i) == Approx(0.5 * c1h).epsilon(1e-15));  // C1 h sech2(0)/2
    CHECK(sys.weight(i, i) > 0.0);
  }
  CHECK_THROWS_AS(build_volterra(0.0, 1.0, 4, FractionalOrder(0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_volterra(0.0, 1.0, 64, FractionalOrder(1.0)),
                  std::invalid_argument);
}

TEST_CASE("volterra apply on simple data") {
  const FractionalOrder half(0.5);
  SECTION("zero derivative maps to zero") {
    const VolterraSystem sys = build_volterra(0.0, 1.0, 32, half);
    const std::vector<double> zero(33, 0.0);
    for (double u : sys.apply(zero)) CHECK(u == 0.0);
  }
  SECTION("unit derivative reproduces the closed form at every node") {
    const VolterraSystem sys = build_volterra(0.0, 1.0, 2000, half);
    const std::vector<double> one(2001, 1.0);
    const std::vector<double> u = sys.apply(one);
    for (std::size_t i = 0; i <= 2000; i += 97) {
      const double expect = c1_constant(half) * sech2_antiderivative(half, 0.0, sys.node(i));
      CHECK(u[i] == Approx(expect).margin(1e-5));
    }
  }
  SECTION("halving h quarters the node error on a quadratic") {
    auto max_err = [&](std::size_t n) {
      const VolterraSystem sys = build_volterra(0.0, 1.0, n, half);
      std::vector<double> fp(n + 1);
      for (std::size_t i = 0; i <= n; ++i) fp[i] = 2.0 * sys.node(i);
      const std::vector<double> u = sys.apply(fp);
      double worst = 0.0;
      const double w = half.width();
      for (std::size_t i = 0; i <= n; ++i) {
        const double exact = c1_constant(half) * 2.0 * w * w * log_cosh(sys.node(i) / w);
        worst = std::max(worst, std::fabs(u[i] - exact));
      }
      return worst;
    };
    const double ratio = max_err(1000) / max_err(2000);
    CHECK(ratio > 3.3);
    CHECK(ratio < 4.7);
  }
  SECTION("empirical order on smooth transcendental data") {
    const double exact = 0.72410623805214622;  // reference for f = sin at t = 1
    auto err = [&](std::size_t n) {
      const VolterraSystem sys = build_volterra(0.0, 1.0, n, half);
      std::vector<double> fp(n + 1);
      for (std::size_t i = 0; i <= n; ++i) fp[i] = std::cos(sys.node(i));
      return std::fabs(sys.apply(fp)[n] - exact);
    };
    CHECK(std::log2(err(500) / err(1000)) > 1.9);
    CHECK(std::log2(err(1000) / err(2000)) > 1.9);
  }
}

TEST_CASE("forward substitution inverts the triangular multiply exactly") {
  // algebraically an exact inverse; in floating point the defect is machine
  // epsilon amplified by the (reported) first-kind conditioning
  for (std::size_t n : {512u, 4096u}) {
    const VolterraSystem sys = build_volterra(0.0, 1.0, n, FractionalOrder(0.3));
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g[i] = std::sin(7.0 * sys.node(i)) + 0.4;
    const std::vector<double> u = sys.apply(g);
    const std::vector<double> back = sys.solve(u, g[0]);
    double worst = 0.0;
    for (std::size_t i = 0; i <= n; ++i) worst = std::max(worst, std::fabs(back[i] - g[i]));
    CHECK(worst <= (n <= 512 ? 1e-10 : 1e-8));
  }
}

TEST_CASE("condition estimate grows as the grid refines") {
  const double c500 = build_volterra(0.0, 1.0, 500, FractionalOrder(0.5)).condition_estimate();
  const double c2000 =
      build_volterra(0.0, 1.0, 2000, FractionalOrder(0.5)).condition_estimate();
  CHECK(c2000 > c500);
  CHECK(c500 > 1.0);
}

TEST_CASE("closed-form residual checker") {
  const FractionalOrder half(0.5);
  SECTION("zero forcing has zero residual") {
    const auto r = thm29_residual([](double) { return 0.0; }, 1.0, 0.0, 1.0, 128, half);
    CHECK(r.max_residual == Approx(0.0).margin(1e-12));
  }
  SECTION("linear forcing exposes the large residual") {
    const auto r = thm29_residual([](double t) { return t; }, 0.0, 0.0, 1.0, 2000, half,
                                  kTight);
    // continuous maximum frozen from the calibration run
    CHECK(r.max_residual == Approx(0.25718476962033175).margin(5e-4));
    CHECK(r.max_residual >= 0.01);
  }
  SECTION("constant forcing: the claimed solution is constant, so the operator "
          "output stays at zero while the forcing integral grows") {
    const double c = 2.0;
    const auto r = thm29_residual([&](double) { return c; }, 0.5, 0.0, 1.0, 256, half,
                                  kTight);
    CHECK(r.max_residual == Approx(c * 1.0).margin(1e-6));
  }
}

TEST_CASE("contraction gate") {
  const FractionalOrder full(0.5, Convention::FullMass);
  const FractionalOrder paper(0.5, Convention::PaperHalfMass);
  // full mass: |alpha-1| C1 = 1 for every alpha, gate is c0 < 1
  for (double alpha : {0.1, 0.5, 0.9}) {
    const auto c = contraction_check(0.5, FractionalOrder(alpha, Convention::FullMass));
    CHECK(c.value == Approx(0.5).epsilon(1e-14));
    CHECK(c.ok);
  }
  CHECK(contraction_check(0.5, full).ok);
  CHECK_FALSE(contraction_check(2.0, full).ok);
  CHECK_FALSE(contraction_check(1.0, full).ok);  // boundary is not strict contraction
  // half mass: factor 1/2, gate is c0 < 2
  CHECK(contraction_check(1.5, paper).ok);
  CHECK_FALSE(contraction_check(2.0, paper).ok);
  CHECK_THROWS_AS(contraction_check(0.0, full), std::invalid_argument);
}

TEST_CASE("picard iteration") {
  const FractionalOrder half(0.5);
  SECTION("zero right-hand side keeps the initial value") {
    const auto r = picard_solve([](double, double, double) { return 0.0; }, 0.0, 1.0, 64,
                                1.5, half, 0.1, 20, 1e-12);
    CHECK(r.converged);
    for (double f : r.f) CHECK(f == Approx(1.5).margin(1e-12));
    for (double u : r.u) CHECK(u == Approx(0.0).margin(1e-12));
  }
  SECTION("manufactured solution is recovered") {
    const double w = half.width();
    const double c1 = c1_constant(half);
    auto rhs = [&](double t, double, double) { return c1 * 2.0 * w * w * log_cosh(t / w); };
    const auto r = picard_solve(rhs, 0.0, 1.0, 2000, 0.0, half, 0.5, 50, 1e-12);
    REQUIRE(r.converged);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      worst = std::max(worst, std::fabs(r.f[i] - r.nodes[i] * r.nodes[i]));
    CHECK(worst <= 1e-4);
  }
  SECTION("recovery error decays at order >= 1.5") {
    const double w = half.width();
    const double c1 = c1_constant(half);
    auto rhs = [&](double t, double, double) { return c1 * 2.0 * w * w * log_cosh(t / w); };
    auto err = [&](std::size_t n) {
      const auto r = picard_solve(rhs, 0.0, 1.0, n, 0.0, half, 0.5, 50, 1e-12);
      double worst = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i)
        worst = std::max(worst, std::fabs(r.f[i] - r.nodes[i] * r.nodes[i]));
      return worst;
    };
    const double e500 = err(500), e1000 = err(1000), e2000 = err(2000);
    CHECK(std::log2(e500 / e1000) >= 1.5);
    CHECK(std::log2(e1000 / e2000) >= 1.5);
  }
  SECTION("genuinely coupled right-hand side recovers the manufactured solution") {
    // rhs depends on both f and u but keeps the manufactured fixed point:
    // rhs(t, f, u) = w(t) + 0.3 (u - w(t)) + 0.2 (f - t^2), Lipschitz 0.5
    const double w = half.width();
    const double c1 = c1_constant(half);
    auto image = [&](double t) { return c1 * 2.0 * w * w * log_cosh(t / w); };
    auto rhs = [&](double t, double f, double u) {
      return image(t) + 0.3 * (u - image(t)) + 0.2 * (f - t * t);
    };
    const auto r = picard_solve(rhs, 0.0, 1.0, 1000, 0.0, half, 0.5, 80, 1e-12);
    REQUIRE(r.converged);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      worst = std::max(worst, std::fabs(r.f[i] - r.nodes[i] * r.nodes[i]));
    CHECK(worst <= 5e-4);
  }
  SECTION("oscillating inner iteration is damped (half-mass gate admits it)") {
    // slope -1.5 in u: the naive pointwise iteration diverges, the damped one
    // contracts; admissible because the half-mass gate is c0 < 2
    const FractionalOrder paper(0.5, Convention::PaperHalfMass);
    const double w = paper.width();
    const double c1 = c1_constant(paper);
    auto image = [&](double t) { return c1 * 2.0 * w * w * log_cosh(t / w); };
    auto rhs = [&](double t, double, double u) {
      return image(t) - 1.5 * (u - image(t));
    };
    const auto r = picard_solve(rhs, 0.0, 1.0, 500, 0.0, paper, 1.5, 80, 1e-10);
    REQUIRE(r.converged);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      worst = std::max(worst, std::fabs(r.u[i] - image(r.nodes[i])));
    CHECK(worst <= 1e-8);  // inner fixed point reached despite oscillation
  }
  SECTION("self-coupled right-hand side converges in the contraction regime") {
    auto rhs = [](double, double f, double) { return 0.1 * f; };
    const auto r = picard_solve(rhs, 0.0, 1.0, 256, 1.0, half, 0.1, 50, 1e-10);
    CHECK(r.converged);
    CHECK(r.sweeps <= 50);
    // sweep deltas nonincreasing after the first sweep
    for (std::size_t s = 2; s < r.sweep_deltas.size(); ++s)
      CHECK(r.sweep_deltas[s] <= r.sweep_deltas[s - 1] * (1.0 + 1e-9));
  }
  SECTION("contraction violation throws before iterating") {
    CHECK_THROWS_AS(picard_solve([](double, double, double) { return 0.0; }, 0.0, 1.0, 64,
                                 0.0, half, 2.0, 20, 1e-10),
                    contraction_error);
  }
}
