#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "actk/balance.hpp"
#include "actk/model.hpp"
#include "actk/specfun.hpp"
#include "actk/stationary.hpp"

using actk::BalanceEvaluator;
using actk::ReactionParams;
using actk::State;

namespace {

ReactionParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uk(0.2, 3.0), ul(0.5, 4.0), ud(0.2, 2.0);
  ReactionParams p;
  p.d = 2;
  p.kappa = {uk(rng), uk(rng)};
  p.lambda = {ul(rng), ul(rng)};
  p.delta = ud(rng);
  return p;
}

double rel_err(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-4});
  return std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("symmetric kappa annihilates the balance error") {
  ReactionParams p;
  p.d = 2;
  p.kappa = {1.3, 1.3};
  p.lambda = {2.0, 0.7};
  p.delta = 0.6;
  BalanceEvaluator ev(p);
  for (int n = 0; n <= 40; ++n)
    for (int a1 = 0; a1 <= n; ++a1) {
      State a{a1, n - a1};
      CHECK(std::abs(ev.direct(a).bstar) < 1e-10);
      CHECK(ev.closed_form(a) == 0.0);
    }
}

TEST_CASE("closed form matches the direct aggregates on random parameters") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 8; ++rep) {
    ReactionParams p = random_params(rng);
    BalanceEvaluator ev(p);
    for (int n = 0; n <= 35; ++n)
      for (int a1 = 0; a1 <= n; ++a1) {
        State a{a1, n - a1};
        double bd = ev.direct(a).bstar;
        double bc = ev.closed_form(a);
        CHECK(rel_err(bd, bc) < 1e-8);
      }
  }
}

TEST_CASE("direct aggregates agree with a generator application to tilde-Pi") {
  // Independent witness: (A* Pi~)(a) / Pi~(a) computed straight from the
  // transition rates, using unnormalized log-probabilities.
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 4; ++rep) {
    ReactionParams p = random_params(rng);
    const int N = 24;
    actk::Distribution tilde;
    for (int n = 0; n <= N + 1; ++n)
      for (int a1 = 0; a1 <= n; ++a1) {
        State s{a1, n - a1};
        tilde.log_prob.emplace(s, actk::log_tilde_Pi(p, s));
      }
    BalanceEvaluator ev(p);
    for (int n = 1; n <= N; ++n)
      for (int a1 = 0; a1 <= n; ++a1) {
        State a{a1, n - a1};
        double witness = actk::adjoint_apply(p, tilde, a) / tilde.prob(a);
        double bd = ev.direct(a).bstar;
        // the witness itself carries double cancellation error ~ rate * 1e-12
        double tol = 1e-7 * std::max(1.0, p.lambda_sum() + n * p.delta +
                                              (p.kappa[0] + p.kappa[1]) * n * n);
        CHECK(std::abs(witness - bd) < tol);
      }
  }
}

TEST_CASE("balance terms decompose consistently") {
  std::mt19937_64 rng(43);
  ReactionParams p = random_params(rng);
  BalanceEvaluator ev(p);
  for (int n = 1; n <= 20; ++n)
    for (int a1 = 0; a1 <= n; ++a1) {
      auto t = ev.direct(State{a1, n - a1});
      CHECK(t.bstar ==
            doctest::Approx(t.l_nm1 + t.l_n + t.l_np1 - t.r_n).epsilon(1e-7).scale(
                std::abs(t.r_n) + 1.0));
    }
}

TEST_CASE("scaled evaluation equals the unscaled closed form") {
  actk::ScaledParams sp;
  sp.V = 20.0;
  sp.D = 0.01;
  sp.kappa_prime = {1.0, 1.01};
  ReactionParams p = sp.to_unscaled();
  for (int n : {1, 7, 40, 63})
    for (int a1 = 0; a1 <= n; a1 += 3) {
      State a{a1, n - a1};
      CHECK(actk::bstar_scaled(sp, a) ==
            doctest::Approx(actk::bstar_closed_form(p, a)).epsilon(1e-12));
    }
}

TEST_CASE("hypergeometric ratios at n = 0 are unity") {
  std::mt19937_64 rng(44);
  ReactionParams p = random_params(rng);
  auto [rm, rp] = actk::hyp_ratios(p, 0);
  CHECK(rm == doctest::Approx(1.0));
  CHECK(rp > 0.0);
}

TEST_CASE("pi-shift ratio identities (six closed forms)") {
  std::mt19937_64 rng(45);
  std::uniform_int_distribution<int> ua(2, 18);
  for (int rep = 0; rep < 40; ++rep) {
    ReactionParams p = random_params(rng);
    // the closed forms below are written for z = kappa_1/kappa_2; relabel here
    // so they can be applied verbatim
    int a1 = ua(rng), a2 = ua(rng);
    if (p.kappa[0] > p.kappa[1]) {
      std::swap(p.kappa[0], p.kappa[1]);
      std::swap(p.lambda[0], p.lambda[1]);
      std::swap(a1, a2);
    }
    const int n = a1 + a2;
    auto alpha = actk::alpha_params(p);
    const double z = p.kappa[0] / p.kappa[1];
    auto F = [&](int m) {
      return actk::hyp2f1_terminating(m, alpha[0], 1.0 - alpha[1] - m, z).value();
    };
    const double f0_fp = F(n) / F(n - 1);
    const double f0_fm = F(n) / F(n + 1);
    auto pi = [&](int nn, int i) { return actk::log_tilde_pi_d2(p, nn, i); };
    auto ratio = [&](int nn, int i) { return std::exp(pi(nn, i) - pi(n, a1)); };

    CHECK(ratio(n - 1, a1 - 1) ==
          doctest::Approx(double(a1) / n * (n - 1 + alpha[1]) / (a1 - 1 + alpha[0]) /
                          z * f0_fp)
              .epsilon(1e-9));
    CHECK(ratio(n - 1, a1) ==
          doctest::Approx(double(a2) / n * (n - 1 + alpha[1]) / (a2 - 1 + alpha[1]) *
                          f0_fp)
              .epsilon(1e-9));
    CHECK(ratio(n, a1 + 1) ==
          doctest::Approx(double(a2) / (a1 + 1) * (a1 + alpha[0]) /
                          (a2 - 1 + alpha[1]) * z)
              .epsilon(1e-9));
    // the printed denominator of this identity is pi_n(a + e1 - e2), but the
    // right-hand side only matches the ratio to pi_n(a) itself
    CHECK(std::exp(pi(n, a1 - 1) - pi(n, a1)) ==
          doctest::Approx(double(a1) / (a2 + 1) * (a2 + alpha[1]) /
                          (a1 - 1 + alpha[0]) / z)
              .epsilon(1e-9));
    CHECK(ratio(n + 1, a1 + 1) ==
          doctest::Approx(double(n + 1) / (a1 + 1) * (a1 + alpha[0]) /
                          (n + alpha[1]) * z * f0_fm)
              .epsilon(1e-9));
    CHECK(ratio(n + 1, a1) ==
          doctest::Approx(double(n + 1) / (a2 + 1) * (a2 + alpha[1]) /
                          (n + alpha[1]) * f0_fm)
              .epsilon(1e-9));
  }
}
