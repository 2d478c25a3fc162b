#include "actk/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "actk/specfun.hpp"

namespace actk {

void ReactionParams::validate() const {
  if (d < 2) throw std::invalid_argument("ReactionParams: d must be >= 2");
  if (static_cast<int>(kappa.size()) != d || static_cast<int>(lambda.size()) != d)
    throw std::invalid_argument("ReactionParams: kappa/lambda size mismatch");
  for (double k : kappa)
    if (!(k > 0.0)) throw std::invalid_argument("ReactionParams: kappa must be positive");
  for (double l : lambda)
    if (!(l > 0.0)) throw std::invalid_argument("ReactionParams: lambda must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("ReactionParams: delta must be positive");
}

void ScaledParams::validate() const {
  if (d() < 2) throw std::invalid_argument("ScaledParams: need at least 2 species");
  if (!(V > 0.0) || !(D > 0.0))
    throw std::invalid_argument("ScaledParams: V and D must be positive");
  for (double k : kappa_prime)
    if (!(k > 0.0)) throw std::invalid_argument("ScaledParams: kappa' must be positive");
}

ReactionParams ScaledParams::to_unscaled() const {
  validate();
  ReactionParams rp;
  rp.d = d();
  rp.kappa.resize(kappa_prime.size());
  for (size_t i = 0; i < kappa_prime.size(); ++i) rp.kappa[i] = kappa_prime[i] / V;
  rp.lambda.assign(kappa_prime.size(), D * V);
  rp.delta = D;
  return rp;
}

void MoranParams::validate() const {
  if (n < 1) throw std::invalid_argument("MoranParams: n must be positive");
  if (kappa.size() != p.size() || kappa.empty())
    throw std::invalid_argument("MoranParams: kappa/p size mismatch");
  for (double k : kappa)
    if (!(k > 0.0)) throw std::invalid_argument("MoranParams: kappa must be positive");
  if (!(v > 0.0)) throw std::invalid_argument("MoranParams: v must be positive");
  double ps = 0.0;
  for (double x : p) {
    if (x < 0.0) throw std::invalid_argument("MoranParams: p entries must be >= 0");
    ps += x;
  }
  if (std::abs(ps - 1.0) > 1e-12)
    throw std::invalid_argument("MoranParams: p must sum to 1");
}

void Distribution::normalize() {
  std::vector<double> logs;
  logs.reserve(log_prob.size());
  for (const auto& [s, lp] : log_prob) logs.push_back(lp);
  double total = log_sum_exp(logs);
  for (auto& [s, lp] : log_prob) lp -= total;
}

std::vector<State> Distribution::sorted_states() const {
  std::vector<State> out;
  out.reserve(log_prob.size());
  for (const auto& [s, lp] : log_prob) out.push_back(s);
  std::sort(out.begin(), out.end(), [](const State& x, const State& y) {
    int nx = x.n(), ny = y.n();
    if (nx != ny) return nx < ny;
    return x < y;
  });
  return out;
}

void enabled_transitions_into(const ReactionParams& params, const State& a,
                              std::vector<Transition>& out) {
  out.clear();
  const int d = params.d;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      double rate = params.kappa[static_cast<size_t>(i)] * a[i] * a[j];
      if (rate > 0.0) out.push_back({a.shifted(j, -1).shifted(i, +1), rate});
    }
  }
  for (int i = 0; i < d; ++i) {
    out.push_back({a.shifted(i, +1), params.lambda[static_cast<size_t>(i)]});
    double rate = params.delta * a[i];
    if (rate > 0.0) out.push_back({a.shifted(i, -1), rate});
  }
}

std::vector<Transition> enabled_transitions(const ReactionParams& params,
                                            const State& a) {
  std::vector<Transition> out;
  enabled_transitions_into(params, a, out);
  return out;
}

std::vector<double> alpha_params(const ReactionParams& params) {
  params.validate();
  double ls = params.lambda_sum();
  std::vector<double> alpha(static_cast<size_t>(params.d));
  for (int i = 0; i < params.d; ++i)
    alpha[static_cast<size_t>(i)] =
        params.delta * params.lambda[static_cast<size_t>(i)] /
        (params.kappa[static_cast<size_t>(i)] * ls);
  return alpha;
}

std::vector<Transition> moran_transitions(const MoranParams& mp, const State& a) {
  if (a.n() != mp.n)
    throw std::invalid_argument("moran_transitions: state not on E_n");
  std::vector<Transition> out;
  const int d = mp.d();
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      double rate = a[i] * (mp.kappa[static_cast<size_t>(j)] * a[j] / mp.n +
                            mp.v * mp.p[static_cast<size_t>(j)]);
      if (rate > 0.0) out.push_back({a.shifted(i, -1).shifted(j, +1), rate});
    }
  }
  return out;
}

double adjoint_apply(const ReactionParams& params, const Distribution& p,
                     const State& a) {
  const int d = params.d;
  auto lookup = [&p](const State& s) {
    auto it = p.log_prob.find(s);
    return it == p.log_prob.end() ? 0.0 : std::exp(it->second);
  };
  const double pa = lookup(a);

  double in = 0.0, out = 0.0;
  // Catalytic: source b = a + e_j - e_i reaches a via b -> b - e_j + e_i
  // at kappa_i b_i b_j; requires a_i >= 1 for b to lie in E.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      if (a[i] >= 1) {
        State b = a.shifted(j, +1).shifted(i, -1);
        in += params.kappa[static_cast<size_t>(i)] * (a[i] - 1) * (a[j] + 1) * lookup(b);
      }
      out += params.kappa[static_cast<size_t>(j)] * a[j] * a[i] * pa;
    }
  }
  for (int i = 0; i < d; ++i) {
    // Inflow into a from a - e_i; outflow into a from a + e_i.
    if (a[i] >= 1) in += params.lambda[static_cast<size_t>(i)] * lookup(a.shifted(i, -1));
    in += params.delta * (a[i] + 1) * lookup(a.shifted(i, +1));
    out += (params.lambda[static_cast<size_t>(i)] + params.delta * a[i]) * pa;
  }
  return in - out;
}

}  // namespace actk
