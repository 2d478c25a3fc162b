#pragma once

#include <utility>

#include "actk/model.hpp"

namespace actk {

struct FixedPoint {
  double a1_star;
  double a2_star;
  bool stable;
};

// Right-hand side of the d = 2 mean-field system
//   da1/dt = (kappa_1 - kappa_2) a1 a2 + lambda_1 - delta a1
//   da2/dt = (kappa_2 - kappa_1) a1 a2 + lambda_2 - delta a2
// in the unscaled rates of sp.to_unscaled().
std::pair<double, double> ode_rhs(const ScaledParams& sp, double a1, double a2);

// Equilibrium on a1 + a2 = (lambda_1 + lambda_2) / delta, solved in closed
// form from the quadratic reduction and polished with one Newton step.
FixedPoint fixed_point(const ScaledParams& sp);

std::pair<double, double> ode_rhs_unscaled(const ReactionParams& rp, double a1,
                                           double a2);

}  // namespace actk
