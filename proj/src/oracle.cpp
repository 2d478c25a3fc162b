#include "actk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace actk {

namespace {

struct SparseChain {
  std::vector<State> states;
  std::unordered_map<State, size_t, StateHash> index;
  // Outgoing arcs in CSR form.
  std::vector<size_t> row_ptr;
  std::vector<size_t> col;
  std::vector<double> rate;
  std::vector<double> exit_rate;
};

void check_irreducible(const SparseChain& c) {
  const size_t n = c.states.size();
  std::vector<std::vector<size_t>> rev(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = c.row_ptr[i]; k < c.row_ptr[i + 1]; ++k)
      rev[c.col[k]].push_back(i);

  auto bfs = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::queue<size_t> q;
    q.push(0);
    seen[0] = 1;
    size_t count = 1;
    while (!q.empty()) {
      size_t i = q.front();
      q.pop();
      if (forward) {
        for (size_t k = c.row_ptr[i]; k < c.row_ptr[i + 1]; ++k)
          if (!seen[c.col[k]]) {
            seen[c.col[k]] = 1;
            ++count;
            q.push(c.col[k]);
          }
      } else {
        for (size_t j : rev[i])
          if (!seen[j]) {
            seen[j] = 1;
            ++count;
            q.push(j);
          }
      }
    }
    return count == n;
  };
  if (!bfs(true) || !bfs(false))
    throw std::runtime_error("oracle: truncated chain is not irreducible");
}

std::vector<double> solve_power(const SparseChain& c) {
  const size_t n = c.states.size();
  double max_rate = 0.0;
  for (double r : c.exit_rate) max_rate = std::max(max_rate, r);
  const double lam = 1.05 * max_rate;

  std::vector<double> p(n, 1.0 / n), next(n, 0.0);
  const size_t max_iters = 20'000'000 / std::max<size_t>(n, 1) * 64;
  for (size_t it = 0; it < max_iters; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (size_t i = 0; i < n; ++i) {
      next[i] += p[i] * (1.0 - c.exit_rate[i] / lam);
      const double pi_over = p[i] / lam;
      for (size_t k = c.row_ptr[i]; k < c.row_ptr[i + 1]; ++k)
        next[c.col[k]] += pi_over * c.rate[k];
    }
    double diff = 0.0, tot = 0.0;
    for (size_t i = 0; i < n; ++i) {
      diff = std::max(diff, std::abs(next[i] - p[i]));
      tot += next[i];
    }
    for (size_t i = 0; i < n; ++i) next[i] /= tot;
    p.swap(next);
    if (diff < 1e-14) return p;
  }
  throw std::runtime_error(
      "oracle: power iteration did not converge; consider use_sparse_lu");
}

std::vector<double> solve_lu(const SparseChain& c) {
  const size_t n = c.states.size();
  // Q^T p = 0 with row 0 replaced by the normalization constraint.
  std::vector<Eigen::Triplet<double>> trips;
  for (size_t i = 0; i < n; ++i) {
    if (i != 0) trips.emplace_back(static_cast<int>(i), static_cast<int>(i), -c.exit_rate[i]);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t k = c.row_ptr[i]; k < c.row_ptr[i + 1]; ++k)
      if (c.col[k] != 0)
        trips.emplace_back(static_cast<int>(c.col[k]), static_cast<int>(i), c.rate[k]);
  for (size_t j = 0; j < n; ++j) trips.emplace_back(0, static_cast<int>(j), 1.0);

  Eigen::SparseMatrix<double> A(static_cast<int>(n), static_cast<int>(n));
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<int>(n));
  b[0] = 1.0;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("oracle: sparse LU factorization failed");
  Eigen::VectorXd x = lu.solve(b);
  std::vector<double> p(n);
  double tot = 0.0;
  for (size_t i = 0; i < n; ++i) tot += x[static_cast<int>(i)];
  for (size_t i = 0; i < n; ++i) p[i] = x[static_cast<int>(i)] / tot;
  return p;
}

Distribution finish(const SparseChain& c, std::vector<double> p) {
  // Residual check: ||A* p||_inf small relative to the largest rate.
  double max_rate = 0.0;
  for (double r : c.exit_rate) max_rate = std::max(max_rate, r);
  std::vector<double> resid(p.size(), 0.0);
  for (size_t i = 0; i < p.size(); ++i) {
    resid[i] -= c.exit_rate[i] * p[i];
    for (size_t k = c.row_ptr[i]; k < c.row_ptr[i + 1]; ++k)
      resid[c.col[k]] += c.rate[k] * p[i];
  }
  double rmax = 0.0;
  for (double r : resid) rmax = std::max(rmax, std::abs(r));
  if (rmax > 1e-12 * max_rate)
    throw std::runtime_error("oracle: stationary residual exceeds tolerance");

  Distribution dist;
  dist.log_prob.reserve(p.size());
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) dist.log_prob.emplace(c.states[i], std::log(p[i]));
  dist.normalize();
  return dist;
}

template <typename TransFn>
SparseChain build_chain(std::vector<State> states, TransFn&& transitions) {
  SparseChain c;
  c.states = std::move(states);
  c.index.reserve(c.states.size());
  for (size_t i = 0; i < c.states.size(); ++i) c.index.emplace(c.states[i], i);
  c.row_ptr.push_back(0);
  for (const State& s : c.states) {
    double exit = 0.0;
    for (const Transition& tr : transitions(s)) {
      auto it = c.index.find(tr.target);
      if (it == c.index.end()) continue;  // truncated away
      c.col.push_back(it->second);
      c.rate.push_back(tr.rate);
      exit += tr.rate;
    }
    c.exit_rate.push_back(exit);
    c.row_ptr.push_back(c.col.size());
  }
  return c;
}

void enumerate_simplex(int n, int d, std::vector<State>& out) {
  State a;
  a.a.assign(static_cast<size_t>(d), 0);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == d - 1) {
      a[pos] = rem;
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      a[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  rec(rec, 0, n);
}

}  // namespace

Distribution stationary_truncated(const ReactionParams& params,
                                  const TruncationSpec& spec) {
  params.validate();
  if (spec.n_max < 1) throw std::invalid_argument("stationary_truncated: n_max < 1");

  std::vector<State> states;
  for (int n = 0; n <= spec.n_max; ++n) enumerate_simplex(n, params.d, states);
  if (states.size() > spec.state_cap)
    throw std::length_error("stationary_truncated: state count exceeds cap");

  // For this chain both policies remove exactly the inflow arcs leaving the
  // n_max shell; Reflect makes that explicit at the source.
  auto trans = [&](const State& s) {
    std::vector<Transition> out = enabled_transitions(params, s);
    if (spec.policy == ReflectPolicy::Reflect && s.n() == spec.n_max)
      std::erase_if(out, [&](const Transition& t) { return t.target.n() > spec.n_max; });
    return out;
  };
  SparseChain chain = build_chain(std::move(states), trans);
  check_irreducible(chain);
  std::vector<double> p = spec.use_sparse_lu ? solve_lu(chain) : solve_power(chain);
  return finish(chain, std::move(p));
}

Distribution moran_stationary_exact(const MoranParams& mp) {
  mp.validate();
  std::vector<State> states;
  enumerate_simplex(mp.n, mp.d(), states);
  if (states.size() > 100'000)
    throw std::length_error("moran_stationary_exact: simplex exceeds cap");
  SparseChain chain = build_chain(
      std::move(states), [&](const State& s) { return moran_transitions(mp, s); });
  check_irreducible(chain);
  return finish(chain, solve_power(chain));
}

}  // namespace actk
