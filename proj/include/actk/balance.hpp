#pragma once

#include <utility>
#include <vector>

#include "actk/model.hpp"

namespace actk {

// The four aggregates of the d = 2 balance decomposition, each already
// divided by pi_n(a).
struct BalanceTerms {
  double r_n;
  double l_nm1;
  double l_n;
  double l_np1;
  double bstar;
};

// Evaluates B*(a) = A* tilde-Pi(a) / tilde-Pi(a) for d = 2, caching per-n
// quantities so grid sweeps stay cheap.
class BalanceEvaluator {
 public:
  explicit BalanceEvaluator(const ReactionParams& params);

  // Direct route: R/L aggregates from ratios of the defining pi_n formula,
  // with partition functions from the composition sum.
  BalanceTerms direct(const State& a);

  // Closed-form route: terminating-2F1 ratio expression.
  double closed_form(const State& a);

  // {F(-n,..)/F(1-n,..), F(-n,..)/F(-1-n,..)} at the chain's alpha and
  // z = kappa_1/kappa_2 (species relabeled so z <= 1).
  std::pair<double, double> hyp_ratios(int n);

 private:
  ReactionParams params_;       // relabeled so kappa_1 <= kappa_2
  bool swapped_ = false;        // species were relabeled
  std::vector<double> alpha_;   // for relabeled params
  std::vector<double> log_u_;   // composition-sum log u, grown on demand
  std::vector<double> log_f_;   // log 2F1(-n, a1; 1-a2-n; z), grown on demand

  double log_u(int n);
  double log_f(int n);
  double log_pi(int n, int a1);  // log pi_n via dirmult + weights - log u
};

BalanceTerms bstar_direct(const ReactionParams& params, const State& a);
double bstar_closed_form(const ReactionParams& params, const State& a);
double bstar_scaled(const ScaledParams& sp, const State& a);
std::pair<double, double> hyp_ratios(const ReactionParams& params, int n);

}  // namespace actk
