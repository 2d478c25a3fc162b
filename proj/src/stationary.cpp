#include "actk/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "actk/specfun.hpp"

namespace actk {

namespace {

bool all_equal(const std::vector<double>& v) {
  for (double x : v)
    if (x != v.front()) return false;
  return true;
}

double log_binomial(int n, int k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

// Enumerates compositions of n into d parts, calling f(a) for each.
template <typename F>
void for_each_composition(int n, int d, F&& f) {
  State a;
  a.a.assign(static_cast<size_t>(d), 0);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == d - 1) {
      a[pos] = rem;
      f(a);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      a[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  rec(rec, 0, n);
}

size_t composition_count(int n, int d) {
  // C(n + d - 1, d - 1), saturating
  double c = 1.0;
  for (int i = 1; i <= d - 1; ++i) c *= static_cast<double>(n + i) / i;
  return c > 1e18 ? static_cast<size_t>(1e18) : static_cast<size_t>(c);
}

}  // namespace

double log_poisson_nu(double mu, int n) {
  if (!(mu > 0.0)) throw std::domain_error("log_poisson_nu: mu must be positive");
  if (n < 0) throw std::domain_error("log_poisson_nu: n must be non-negative");
  return n * std::log(mu) - mu - log_gamma(n + 1.0);
}

double log_dirmult(int n, const std::vector<double>& alpha, const State& a) {
  if (a.n() != n) throw std::invalid_argument("log_dirmult: sum a_i != n");
  if (alpha.size() != a.a.size())
    throw std::invalid_argument("log_dirmult: alpha size mismatch");
  double asum = 0.0;
  for (double x : alpha) asum += x;
  double lp = log_gamma(n + 1.0) + log_gamma(asum) - log_gamma(n + asum);
  for (size_t i = 0; i < alpha.size(); ++i) {
    lp += -log_gamma(a.a[i] + 1.0) + log_gamma(a.a[i] + alpha[i]) - log_gamma(alpha[i]);
  }
  return lp;
}

double log_partition_u(const std::vector<double>& alpha,
                       const std::vector<double>& kappa, int n, size_t cap) {
  const int d = static_cast<int>(kappa.size());
  if (n == 0) return 0.0;
  if (all_equal(kappa)) return n * std::log(kappa.front());  // u = kappa^n
  if (composition_count(n, d) > cap)
    throw std::length_error("log_partition_u: composition count exceeds cap");
  std::vector<double> logs;
  logs.reserve(composition_count(n, d));
  for_each_composition(n, d, [&](const State& a) {
    double lt = log_dirmult(n, alpha, a);
    for (int i = 0; i < d; ++i) lt += a[i] * std::log(kappa[static_cast<size_t>(i)]);
    logs.push_back(lt);
  });
  return log_sum_exp(logs);
}

double log_partition_u_d2(const std::vector<double>& alpha,
                          const std::vector<double>& kappa, int n) {
  if (alpha.size() != 2 || kappa.size() != 2)
    throw std::invalid_argument("log_partition_u_d2: d must be 2");
  if (n == 0) return 0.0;
  if (kappa[0] == kappa[1]) return n * std::log(kappa[0]);
  // u is invariant under a joint relabeling of (alpha_i, kappa_i).
  double a1 = alpha[0], a2 = alpha[1], k1 = kappa[0], k2 = kappa[1];
  if (k1 > k2) {
    std::swap(a1, a2);
    std::swap(k1, k2);
  }
  SignedLog f = hyp2f1_terminating(n, a1, 1.0 - a2 - n, k1 / k2);
  if (f.sign <= 0)
    throw std::domain_error("log_partition_u_d2: hypergeometric sum not positive");
  return log_gamma(a1 + a2) - log_gamma(n + a1 + a2) + log_gamma(a2 + n) -
         log_gamma(a2) + n * std::log(k2) + f.log_abs;
}

double log_moran_pi(int n, const std::vector<double>& alpha,
                    const std::vector<double>& kappa, const State& a) {
  double lp = log_dirmult(n, alpha, a);
  if (all_equal(kappa)) return lp;  // weights cancel against u = kappa^n
  for (size_t i = 0; i < kappa.size(); ++i) lp += a.a[i] * std::log(kappa[i]);
  return lp - log_partition_u(alpha, kappa, n);
}

double log_tilde_Pi(const ReactionParams& params, const State& a) {
  params.validate();
  const int n = a.n();
  return log_poisson_nu(params.poisson_mean(), n) +
         log_moran_pi(n, alpha_params(params), params.kappa, a);
}

double log_tilde_pi_d2(const ReactionParams& params, int n, int i) {
  params.validate();
  if (params.d != 2) throw std::invalid_argument("log_tilde_pi_d2: d must be 2");
  if (i < 0 || i > n) throw std::invalid_argument("log_tilde_pi_d2: i out of range");
  ReactionParams rp = params;
  int ii = i;
  if (rp.kappa[0] > rp.kappa[1]) {  // relabel so kappa_1/kappa_2 <= 1
    std::swap(rp.kappa[0], rp.kappa[1]);
    std::swap(rp.lambda[0], rp.lambda[1]);
    ii = n - i;
  }
  std::vector<double> alpha = alpha_params(rp);
  if (rp.kappa[0] == rp.kappa[1])
    return log_dirmult(n, alpha, State{ii, n - ii});
  const double z = rp.kappa[0] / rp.kappa[1];
  SignedLog f = hyp2f1_terminating(n, alpha[0], 1.0 - alpha[1] - n, z);
  if (f.sign <= 0)
    throw std::domain_error("log_tilde_pi_d2: hypergeometric sum not positive");
  return ii * std::log(z) + log_binomial(n, ii) + log_gamma(alpha[0] + ii) +
         log_gamma(alpha[1] + n - ii) - log_gamma(alpha[0]) -
         log_gamma(alpha[1] + n) - f.log_abs;
}

double log_tilde_pi_beta_binomial(const ScaledParams& sp, int n, int i) {
  sp.validate();
  if (sp.d() != 2)
    throw std::invalid_argument("log_tilde_pi_beta_binomial: d must be 2");
  if (i < 0 || i > n)
    throw std::invalid_argument("log_tilde_pi_beta_binomial: i out of range");
  const double a1 = sp.D * sp.V / (2.0 * sp.kappa_prime[0]);
  const double a2 = sp.D * sp.V / (2.0 * sp.kappa_prime[1]);
  const double lk1 = std::log(sp.kappa_prime[0]);
  const double lk2 = std::log(sp.kappa_prime[1]);
  auto log_num = [&](int j) {
    return j * lk1 + (n - j) * lk2 + log_binomial(n, j) +
           log_beta(j + a1, n - j + a2) - log_beta(a1, a2);
  };
  std::vector<double> logs(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) logs[static_cast<size_t>(j)] = log_num(j);
  return log_num(i) - log_sum_exp(logs);
}

std::vector<double> log_tilde_pi_row(const ReactionParams& params, int n) {
  if (params.d != 2) throw std::invalid_argument("log_tilde_pi_row: d must be 2");
  std::vector<double> alpha = alpha_params(params);
  const double lz = std::log(params.kappa[0]) - std::log(params.kappa[1]);
  std::vector<double> row(static_cast<size_t>(n) + 1);
  double lt = 0.0;
  row[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    lt += lz + std::log(static_cast<double>(n - i) / (i + 1)) +
          std::log(alpha[0] + i) - std::log(alpha[1] + n - i - 1);
    row[static_cast<size_t>(i) + 1] = lt;
  }
  double norm = log_sum_exp(row);
  for (double& v : row) v -= norm;
  return row;
}

RegimeLabel regime_classify(const ScaledParams& sp) {
  sp.validate();
  RegimeLabel rl{Regime::Flat, sp.D * sp.V, sp.d(), false};
  const double dd = static_cast<double>(rl.d);
  if (rl.dv == dd) {
    rl.value = Regime::Flat;
  } else if (std::abs(rl.dv - dd) < 1e-12) {
    rl.value = Regime::Flat;
    rl.near_equal_warning = true;
  } else {
    rl.value = rl.dv < dd ? Regime::BoundaryBimodal : Regime::InteriorUnimodal;
  }
  return rl;
}

int poisson_nmax(double mu, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0))
    throw std::invalid_argument("poisson_nmax: tail_tol must be in (0,1)");
  double log_term = -mu;  // log nu(0)
  double cum = std::exp(log_term);
  int n = 0;
  while (true) {
    // geometric tail bound once past the mode: tail(n) <= term(n+1)/(1 - r)
    double r = mu / (n + 2);
    if (n + 1 > mu && r < 1.0) {
      double bound = std::exp(log_term + std::log(mu) - std::log(n + 1.0)) / (1.0 - r);
      if (1.0 - cum < tail_tol && bound < tail_tol) return n;
    }
    ++n;
    log_term += std::log(mu) - std::log(static_cast<double>(n));
    cum += std::exp(log_term);
    if (n > 10'000'000) throw std::runtime_error("poisson_nmax: no convergence");
  }
}

Distribution build_distribution(const ReactionParams& params, double tail_tol,
                                size_t state_cap) {
  params.validate();
  const double mu = params.poisson_mean();
  const int n_max = poisson_nmax(mu, tail_tol);
  const int d = params.d;

  size_t nstates = 0;
  for (int n = 0; n <= n_max; ++n) nstates += composition_count(n, d);
  if (nstates > state_cap)
    throw std::length_error("build_distribution: state count exceeds cap");

  Distribution dist;
  dist.log_prob.reserve(nstates);
  double cum = 0.0;
  if (d == 2) {
    for (int n = 0; n <= n_max; ++n) {
      const double lnu = log_poisson_nu(mu, n);
      cum += std::exp(lnu);
      std::vector<double> row = log_tilde_pi_row(params, n);
      for (int i = 0; i <= n; ++i)
        dist.log_prob.emplace(State{i, n - i}, lnu + row[static_cast<size_t>(i)]);
    }
  } else {
    std::vector<double> alpha = alpha_params(params);
    for (int n = 0; n <= n_max; ++n) {
      const double lnu = log_poisson_nu(mu, n);
      cum += std::exp(lnu);
      const double lu = log_partition_u(alpha, params.kappa, n);
      for_each_composition(n, d, [&](const State& a) {
        double lp = log_dirmult(n, alpha, a) - lu;
        for (int i = 0; i < d; ++i)
          lp += a[i] * std::log(params.kappa[static_cast<size_t>(i)]);
        dist.log_prob.emplace(a, lnu + lp);
      });
    }
  }
  dist.truncation_tail_mass = std::max(0.0, 1.0 - cum);
  dist.normalize();
  return dist;
}

std::vector<State> distribution_modes(const Distribution& dist) {
  if (dist.log_prob.empty())
    throw std::invalid_argument("distribution_modes: empty distribution");
  std::vector<State> modes;
  for (const auto& [s, lp] : dist.log_prob) {
    const int d = s.d();
    bool is_mode = true;
    auto beats = [&](const State& nb) {
      auto it = dist.log_prob.find(nb);
      return it != dist.log_prob.end() && it->second > lp;
    };
    for (int i = 0; i < d && is_mode; ++i) {
      if (beats(s.shifted(i, +1))) is_mode = false;
      if (s[i] >= 1 && beats(s.shifted(i, -1))) is_mode = false;
      for (int j = 0; j < d && is_mode; ++j) {
        if (i == j || s[j] < 1) continue;
        if (beats(s.shifted(i, +1).shifted(j, -1))) is_mode = false;
      }
    }
    if (is_mode) modes.push_back(s);
  }
  std::sort(modes.begin(), modes.end(), [](const State& x, const State& y) {
    int nx = x.n(), ny = y.n();
    if (nx != ny) return nx < ny;
    return x < y;
  });
  return modes;
}

}  // namespace actk
