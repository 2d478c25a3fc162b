#include "actk/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace actk {

std::pair<double, double> ode_rhs_unscaled(const ReactionParams& rp, double a1,
                                           double a2) {
  if (rp.d != 2) throw std::invalid_argument("ode_rhs: d must be 2");
  const double c = rp.kappa[0] - rp.kappa[1];
  return {c * a1 * a2 + rp.lambda[0] - rp.delta * a1,
          -c * a1 * a2 + rp.lambda[1] - rp.delta * a2};
}

std::pair<double, double> ode_rhs(const ScaledParams& sp, double a1, double a2) {
  return ode_rhs_unscaled(sp.to_unscaled(), a1, a2);
}

FixedPoint fixed_point(const ScaledParams& sp) {
  const ReactionParams rp = sp.to_unscaled();
  if (rp.d != 2) throw std::invalid_argument("fixed_point: d must be 2");
  const double c = rp.kappa[0] - rp.kappa[1];
  const double l1 = rp.lambda[0], l2 = rp.lambda[1], dl = rp.delta;
  const double S = (l1 + l2) / dl;

  double a1;
  if (c == 0.0) {
    a1 = l1 / dl;
  } else {
    // c a1^2 - (c S - delta) a1 - lambda_1 = 0, stable root formula
    const double B = -(c * S - dl);
    const double disc = B * B + 4.0 * c * l1;
    if (disc < 0.0) throw std::runtime_error("fixed_point: no real root");
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    const double r1 = q / c;
    const double r2 = -l1 / q;
    a1 = (r1 >= 0.0 && r1 <= S) ? r1 : r2;
    if (!(a1 >= 0.0 && a1 <= S))
      throw std::runtime_error("fixed_point: no root in [0, S]");
    // Newton polish on f(a1) = c a1 (S - a1) + lambda_1 - delta a1
    const double f = c * a1 * (S - a1) + l1 - dl * a1;
    const double fp = c * (S - 2.0 * a1) - dl;
    if (fp != 0.0) a1 -= f / fp;
  }
  const double a2 = S - a1;
  const double trace = c * (a2 - a1) - 2.0 * dl;
  const double det = dl * (dl + c * (a1 - a2));
  return {a1, a2, trace < 0.0 && det > 0.0};
}

}  // namespace actk
