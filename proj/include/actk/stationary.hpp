#pragma once

#include <cstdint>
#include <vector>

#include "actk/model.hpp"

namespace actk {

enum class Regime { BoundaryBimodal, Flat, InteriorUnimodal };

struct RegimeLabel {
  Regime value;
  double dv;
  int d;
  bool near_equal_warning = false;  // |DV - d| < 1e-12 but not exactly equal
};

// log of Poisson(mu) pmf at n.
double log_poisson_nu(double mu, int n);

// log Dirichlet-multinomial(n, alpha) pmf at a, sum a_i = n.
double log_dirmult(int n, const std::vector<double>& alpha, const State& a);

// log of the partition function u(alpha, kappa, n) = E[(sum kappa_i xi_i)^n],
// xi ~ Dirichlet-multinomial(n, alpha), via the explicit composition sum.
// Throws std::length_error if the composition count exceeds `cap`.
double log_partition_u(const std::vector<double>& alpha,
                       const std::vector<double>& kappa, int n,
                       size_t cap = 2'000'000);

// d = 2 hypergeometric form of log u; species are relabeled internally so
// kappa_1/kappa_2 <= 1.
double log_partition_u_d2(const std::vector<double>& alpha,
                          const std::vector<double>& kappa, int n);

// log of the selection-weighted law pi_n(a) on E_n (general d).
double log_moran_pi(int n, const std::vector<double>& alpha,
                    const std::vector<double>& kappa, const State& a);

// log of the proposed approximate stationary law: nu(n) * pi_n(a) with
// alpha = alpha_params(params), n = sum a_i.
double log_tilde_Pi(const ReactionParams& params, const State& a);

// d = 2 profile on i in {0..n} via the hypergeometric closed form.
double log_tilde_pi_d2(const ReactionParams& params, int n, int i);

// Same profile written with Beta functions under the (V, D, kappa')
// parametrization.
double log_tilde_pi_beta_binomial(const ScaledParams& sp, int n, int i);

// Normalized row {log pi_n(i)}_{i=0..n} for d = 2, evaluated by a stable
// term-ratio recurrence.  O(n) for the whole row.
std::vector<double> log_tilde_pi_row(const ReactionParams& params, int n);

RegimeLabel regime_classify(const ScaledParams& sp);

// Smallest n_max with Poisson(mu) tail mass above n_max below tail_tol,
// re-checked against the geometric tail bound.
int poisson_nmax(double mu, double tail_tol);

// Materializes tilde-Pi on {n <= n_max} with n_max from the Poisson tail.
// Throws std::length_error if the state count exceeds `state_cap`.
Distribution build_distribution(const ReactionParams& params, double tail_tol,
                                size_t state_cap = 5'000'000);

// Local maxima under the chain's 1-step neighborhood (+-e_i and e_i - e_j),
// reported in (n, lexicographic) order; ties all reported.
std::vector<State> distribution_modes(const Distribution& dist);

}  // namespace actk
