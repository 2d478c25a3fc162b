#include <doctest.h>

#include <cmath>

#include "actk/ode.hpp"

using actk::ScaledParams;

namespace {

ScaledParams fig5(double k2) {
  ScaledParams sp;
  sp.V = 2000.0;
  sp.D = 0.01;
  sp.kappa_prime = {1.0, k2};
  return sp;
}

// Plain RK4 on the mean-field system, used only as a local check.
std::pair<double, double> rk4_flow(const ScaledParams& sp, double a1, double a2,
                                   double t_end, double h) {
  auto f = [&](double x, double y) { return actk::ode_rhs(sp, x, y); };
  for (double t = 0.0; t < t_end; t += h) {
    auto [k1x, k1y] = f(a1, a2);
    auto [k2x, k2y] = f(a1 + 0.5 * h * k1x, a2 + 0.5 * h * k1y);
    auto [k3x, k3y] = f(a1 + 0.5 * h * k2x, a2 + 0.5 * h * k2y);
    auto [k4x, k4y] = f(a1 + h * k3x, a2 + h * k3y);
    a1 += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
    a2 += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
  }
  return {a1, a2};
}

}  // namespace

TEST_CASE("reference fixed points") {
  struct Row {
    double k2, a1, a2;
  };
  for (const Row& r : {Row{1.001, 1801.96, 2198.04}, Row{1.01, 763.93, 3236.07},
                       Row{1.1, 97.5, 3902.5}}) {
    auto fp = actk::fixed_point(fig5(r.k2));
    CHECK(std::abs(fp.a1_star - r.a1) < 0.01);
    CHECK(std::abs(fp.a2_star - r.a2) < 0.01);
    CHECK(fp.stable);
  }
}

TEST_CASE("fixed point is an equilibrium with tiny residual") {
  auto sp = fig5(1.01);
  auto fp = actk::fixed_point(sp);
  auto [r1, r2] = actk::ode_rhs(sp, fp.a1_star, fp.a2_star);
  CHECK(std::abs(r1) < 1e-8);
  CHECK(std::abs(r2) < 1e-8);
  // mass conservation on the invariant line a1 + a2 = 2V
  CHECK(fp.a1_star + fp.a2_star == doctest::Approx(2 * sp.V).epsilon(1e-12));
}

TEST_CASE("symmetric system fixes the diagonal") {
  ScaledParams sp;
  sp.V = 100.0;
  sp.D = 0.5;
  sp.kappa_prime = {2.0, 2.0};
  auto fp = actk::fixed_point(sp);
  CHECK(fp.a1_star == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(fp.a2_star == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(fp.stable);
}

TEST_CASE("flow from a perturbed start converges to the fixed point") {
  auto sp = fig5(1.01);
  auto fp = actk::fixed_point(sp);
  auto [x, y] = rk4_flow(sp, fp.a1_star + 300.0, fp.a2_star - 300.0, 4000.0, 0.5);
  CHECK(std::abs(x - fp.a1_star) < 0.5);
  CHECK(std::abs(y - fp.a2_star) < 0.5);
}

TEST_CASE("scaled and unscaled right-hand sides agree") {
  auto sp = fig5(1.1);
  auto rp = sp.to_unscaled();
  auto [s1, s2] = actk::ode_rhs(sp, 120.0, 3880.0);
  auto [u1, u2] = actk::ode_rhs_unscaled(rp, 120.0, 3880.0);
  CHECK(s1 == doctest::Approx(u1).epsilon(1e-12));
  CHECK(s2 == doctest::Approx(u2).epsilon(1e-12));
}
