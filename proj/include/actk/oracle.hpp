#pragma once

#include <cstddef>

#include "actk/model.hpp"

namespace actk {

enum class ReflectPolicy {
  DropOutflowing,  // transitions leaving {n <= n_max} removed
  Reflect,         // inflow disabled on the n = n_max shell
};

struct TruncationSpec {
  int n_max = 0;
  ReflectPolicy policy = ReflectPolicy::DropOutflowing;
  size_t state_cap = 100'000;
  bool use_sparse_lu = false;  // direct solve instead of power iteration
};

// Stationary distribution of the truncated open chain: solves A* p = 0,
// sum p = 1 on {a : sum a_i <= n_max}.  Throws on irreducibility failure,
// cap overflow, or non-convergence.
Distribution stationary_truncated(const ReactionParams& params,
                                  const TruncationSpec& spec);

// Exact stationary law of the finite Moran chain on E_n.
Distribution moran_stationary_exact(const MoranParams& mp);

}  // namespace actk
