#include "actk/ssa.hpp"

#include <cmath>
#include <stdexcept>

namespace actk {

namespace {
uint64_t splitmix64(uint64_t& x) {
  uint64_t z = (x += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Xoshiro256pp::Xoshiro256pp(uint64_t seed) {
  for (auto& s : s_) s = splitmix64(seed);
}

uint64_t Xoshiro256pp::next() {
  const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256pp::uniform() {
  // 53 random bits mapped to (0, 1]
  return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

void SimConfig::validate() const {
  if ((t_max > 0.0) == (max_events > 0))
    throw std::invalid_argument("SimConfig: exactly one of t_max/max_events must be set");
  if (burn_in < 0.0) throw std::invalid_argument("SimConfig: burn_in must be >= 0");
  if (t_max > 0.0 && burn_in >= t_max)
    throw std::invalid_argument("SimConfig: burn_in must be < t_max");
  for (int v : initial.a)
    if (v < 0) throw std::invalid_argument("SimConfig: initial counts must be >= 0");
}

OccupationMeasure gillespie_run(const ReactionParams& params, const SimConfig& cfg) {
  params.validate();
  cfg.validate();
  State a = cfg.initial;
  if (a.d() == 0) a.a.assign(static_cast<size_t>(params.d), 0);
  if (a.d() != params.d)
    throw std::invalid_argument("gillespie_run: initial state dimension mismatch");

  Xoshiro256pp rng(cfg.seed);
  OccupationMeasure occ;
  std::vector<Transition> trans;
  double t = 0.0;

  const bool by_time = cfg.t_max > 0.0;
  while (true) {
    if (by_time && t >= cfg.t_max) break;
    if (!by_time && occ.events >= cfg.max_events) break;

    enabled_transitions_into(params, a, trans);
    double total = 0.0;
    for (const auto& tr : trans) total += tr.rate;
    // total > 0 always: inflows are enabled in every state
    double tau = -std::log(rng.uniform()) / total;
    double t_end = t + tau;
    if (by_time && t_end > cfg.t_max) t_end = cfg.t_max;

    const double lo = std::max(t, cfg.burn_in);
    if (t_end > lo) occ.weights[a] += t_end - lo;

    if (by_time && t + tau >= cfg.t_max) {
      t = cfg.t_max;
      break;
    }
    t += tau;

    double u = rng.uniform() * total;
    double acc = 0.0;
    size_t pick = trans.size() - 1;
    for (size_t k = 0; k < trans.size(); ++k) {
      acc += trans[k].rate;
      if (u <= acc) {
        pick = k;
        break;
      }
    }
    a = trans[pick].target;
    ++occ.events;
  }
  occ.total_time = std::max(0.0, t - cfg.burn_in);
  return occ;
}

Distribution occupation_to_distribution(const OccupationMeasure& occ) {
  if (occ.weights.empty() || !(occ.total_time > 0.0))
    throw std::invalid_argument("occupation_to_distribution: empty measure");
  Distribution dist;
  dist.log_prob.reserve(occ.weights.size());
  for (const auto& [s, w] : occ.weights)
    if (w > 0.0) dist.log_prob.emplace(s, std::log(w));
  dist.normalize();
  return dist;
}

double tv_distance(const Distribution& p, const Distribution& q) {
  double acc = 0.0;
  for (const auto& [s, lp] : p.log_prob) acc += std::abs(std::exp(lp) - q.prob(s));
  for (const auto& [s, lq] : q.log_prob)
    if (!p.contains(s)) acc += std::exp(lq);
  return 0.5 * acc;
}

LumpedStats lumped_statistics(const OccupationMeasure& occ) {
  if (!(occ.total_time > 0.0))
    throw std::invalid_argument("lumped_statistics: total_time must be positive");
  LumpedStats st;
  double wsum = 0.0;
  for (const auto& [s, w] : occ.weights) {
    st.marginal[s.n()] += w;
    wsum += w;
  }
  for (auto& [n, w] : st.marginal) {
    w /= wsum;
    st.mean_n += n * w;
  }
  for (const auto& [n, w] : st.marginal)
    st.var_n += (n - st.mean_n) * (n - st.mean_n) * w;
  return st;
}

OccupationMeasure merge_occupations(const std::vector<OccupationMeasure>& runs) {
  OccupationMeasure out;
  for (const auto& r : runs) {
    for (const auto& [s, w] : r.weights) out.weights[s] += w;
    out.total_time += r.total_time;
    out.events += r.events;
  }
  return out;
}

}  // namespace actk
