#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

namespace actk {

// State of the reaction network: non-negative molecule counts per species.
struct State {
  std::vector<int> a;

  State() = default;
  explicit State(std::vector<int> counts) : a(std::move(counts)) {}
  State(std::initializer_list<int> counts) : a(counts) {}

  int n() const { return std::accumulate(a.begin(), a.end(), 0); }
  int d() const { return static_cast<int>(a.size()); }
  int operator[](int i) const { return a[static_cast<size_t>(i)]; }
  int& operator[](int i) { return a[static_cast<size_t>(i)]; }

  bool operator==(const State& o) const { return a == o.a; }
  bool operator<(const State& o) const { return a < o.a; }

  State shifted(int i, int di) const {
    State s = *this;
    s[i] += di;
    return s;
  }
};

struct StateHash {
  size_t operator()(const State& s) const {
    size_t h = 0xcbf29ce484222325ull;
    for (int v : s.a) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Rates of the open autocatalytic network: catalysis kappa_i per ordered
// pair, per-species inflow lambda_i, shared per-molecule outflow delta.
struct ReactionParams {
  int d = 2;
  std::vector<double> kappa;
  std::vector<double> lambda;
  double delta = 1.0;

  void validate() const;
  double lambda_sum() const {
    return std::accumulate(lambda.begin(), lambda.end(), 0.0);
  }
  // Mean of the Poisson law of the total count.
  double poisson_mean() const { return lambda_sum() / delta; }
};

// (V, D, kappa') parametrization: kappa_i = kappa'_i / V, lambda_i = D V,
// delta = D, so alpha_i = D V / (d kappa'_i).
struct ScaledParams {
  double V = 1.0;
  double D = 1.0;
  std::vector<double> kappa_prime;

  void validate() const;
  int d() const { return static_cast<int>(kappa_prime.size()); }
  ReactionParams to_unscaled() const;
};

// Fixed-size Moran model with genic selection and parent-independent
// mutation.
struct MoranParams {
  int n = 1;
  std::vector<double> kappa;
  double v = 1.0;
  std::vector<double> p;

  void validate() const;
  int d() const { return static_cast<int>(kappa.size()); }
};

// Finite probability distribution over states, kept in log space.
struct Distribution {
  std::unordered_map<State, double, StateHash> log_prob;
  double truncation_tail_mass = 0.0;

  double prob(const State& s) const {
    auto it = log_prob.find(s);
    return it == log_prob.end() ? 0.0 : std::exp(it->second);
  }
  bool contains(const State& s) const { return log_prob.count(s) > 0; }
  size_t size() const { return log_prob.size(); }

  // Shifts log-probabilities so exp sums to exactly 1.
  void normalize();
  // States sorted by (n, lexicographic a).
  std::vector<State> sorted_states() const;
};

struct Transition {
  State target;
  double rate;
};

// All strictly positive-rate transitions out of `a`:
// catalytic a -> a - e_j + e_i at kappa_i a_i a_j (i != j),
// inflow a -> a + e_i at lambda_i, outflow a -> a - e_i at delta a_i.
std::vector<Transition> enabled_transitions(const ReactionParams& params,
                                            const State& a);
// Allocation-free variant for hot loops.
void enabled_transitions_into(const ReactionParams& params, const State& a,
                              std::vector<Transition>& out);

// alpha_i = delta lambda_i / (kappa_i sum_j lambda_j).
std::vector<double> alpha_params(const ReactionParams& params);

// Moran transitions a -> a - e_i + e_j at rate a_i (kappa_j a_j / n + v p_j).
std::vector<Transition> moran_transitions(const MoranParams& mp, const State& a);

// (A* p)(a): probability in-flow minus out-flow at state a, with states
// absent from p contributing zero.
double adjoint_apply(const ReactionParams& params, const Distribution& p,
                     const State& a);

}  // namespace actk
