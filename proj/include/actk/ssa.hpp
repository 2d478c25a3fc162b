#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "actk/model.hpp"

namespace actk {

// xoshiro256++ with splitmix64 seeding.  Replica streams use seed + index.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(uint64_t seed);
  uint64_t next();
  // Uniform in (0, 1].
  double uniform();

 private:
  uint64_t s_[4];
};

struct SimConfig {
  double t_max = 0.0;        // > 0: time-governed termination
  uint64_t max_events = 0;   // > 0: event-governed termination
  double burn_in = 0.0;      // simulated time discarded up front
  uint64_t seed = 0;
  State initial;

  void validate() const;
};

struct OccupationMeasure {
  std::unordered_map<State, double, StateHash> weights;  // time per state
  double total_time = 0.0;
  uint64_t events = 0;
};

OccupationMeasure gillespie_run(const ReactionParams& params, const SimConfig& cfg);

Distribution occupation_to_distribution(const OccupationMeasure& occ);

// 1/2 sum |p - q| over the union of supports.
double tv_distance(const Distribution& p, const Distribution& q);

struct LumpedStats {
  double mean_n = 0.0;
  double var_n = 0.0;
  std::map<int, double> marginal;  // time fraction per total count n
};

LumpedStats lumped_statistics(const OccupationMeasure& occ);

// Weight-additive merge of independent replica measures.
OccupationMeasure merge_occupations(const std::vector<OccupationMeasure>& runs);

}  // namespace actk
