#include "actk/balance.hpp"

#include <cmath>
#include <stdexcept>

#include "actk/specfun.hpp"
#include "actk/stationary.hpp"

namespace actk {

BalanceEvaluator::BalanceEvaluator(const ReactionParams& params) : params_(params) {
  params_.validate();
  if (params_.d != 2)
    throw std::invalid_argument("BalanceEvaluator: d must be 2");
  if (params_.kappa[0] > params_.kappa[1]) {
    std::swap(params_.kappa[0], params_.kappa[1]);
    std::swap(params_.lambda[0], params_.lambda[1]);
    swapped_ = true;
  }
  alpha_ = alpha_params(params_);
}

double BalanceEvaluator::log_u(int n) {
  while (static_cast<int>(log_u_.size()) <= n)
    log_u_.push_back(log_partition_u(alpha_, params_.kappa,
                                     static_cast<int>(log_u_.size())));
  return log_u_[static_cast<size_t>(n)];
}

double BalanceEvaluator::log_f(int n) {
  const double z = params_.kappa[0] / params_.kappa[1];
  while (static_cast<int>(log_f_.size()) <= n) {
    SignedLog f = hyp2f1_terminating(static_cast<long>(log_f_.size()), alpha_[0],
                                     1.0 - alpha_[1] - static_cast<double>(log_f_.size()), z);
    if (f.sign <= 0)
      throw std::domain_error("BalanceEvaluator: hypergeometric sum not positive");
    log_f_.push_back(f.log_abs);
  }
  return log_f_[static_cast<size_t>(n)];
}

double BalanceEvaluator::log_pi(int n, int a1) {
  State a{a1, n - a1};
  double lp = log_dirmult(n, alpha_, a);
  if (params_.kappa[0] != params_.kappa[1]) {
    lp += a1 * std::log(params_.kappa[0]) + (n - a1) * std::log(params_.kappa[1]);
    lp -= log_u(n);
  }
  return lp;
}

BalanceTerms BalanceEvaluator::direct(const State& a_in) {
  if (a_in.d() != 2) throw std::invalid_argument("bstar_direct: d must be 2");
  const int a1 = swapped_ ? a_in[1] : a_in[0];
  const int a2 = swapped_ ? a_in[0] : a_in[1];
  const int n = a1 + a2;
  const double k1 = params_.kappa[0], k2 = params_.kappa[1];
  const double l1 = params_.lambda[0], l2 = params_.lambda[1];
  const double dl = params_.delta, ls = l1 + l2;
  const double al1 = alpha_[0], al2 = alpha_[1];

  const double lp0 = log_pi(n, a1);
  auto ratio = [&](int nn, int aa1) { return std::exp(log_pi(nn, aa1) - lp0); };

  const long double shared =
      static_cast<long double>(n) * dl +
      (static_cast<long double>(k1) + k2) * a1 * a2;

  double l_nm1 = 0.0;
  if (n >= 1) {
    double s = 0.0;
    if (a1 >= 1) s += l1 * ratio(n - 1, a1 - 1);
    if (a2 >= 1) s += l2 * ratio(n - 1, a1);
    l_nm1 = n * dl / ls * s;
  }

  // Within-hyperplane terms via the exact Gamma-recurrence ratios; kept in
  // extended precision because they nearly cancel against `shared`.
  long double t_plus = 0.0, t_minus = 0.0;
  if (a2 >= 1)
    t_plus = static_cast<long double>(k1) * (a1 + al1) * a2 * (a2 - 1) / (a2 - 1 + al2);
  if (a1 >= 1)
    t_minus = static_cast<long double>(k2) * (a2 + al2) * a1 * (a1 - 1) / (a1 - 1 + al1);
  const long double excess = t_plus + t_minus - shared;

  const double l_np1 = ls / (n + 1) *
                       ((a1 + 1) * ratio(n + 1, a1 + 1) + (a2 + 1) * ratio(n + 1, a1));

  BalanceTerms bt;
  bt.r_n = static_cast<double>(ls + shared);
  bt.l_nm1 = l_nm1;
  bt.l_n = static_cast<double>(shared + excess);
  bt.l_np1 = l_np1;
  bt.bstar = static_cast<double>(static_cast<long double>(l_nm1) + excess +
                                 l_np1 - ls);
  return bt;
}

double BalanceEvaluator::closed_form(const State& a_in) {
  if (a_in.d() != 2) throw std::invalid_argument("bstar_closed_form: d must be 2");
  const double k1 = params_.kappa[0], k2 = params_.kappa[1];
  if (k1 == k2) return 0.0;
  const int a1 = swapped_ ? a_in[1] : a_in[0];
  const int a2 = swapped_ ? a_in[0] : a_in[1];
  const int n = a1 + a2;
  const double ls = params_.lambda[0] + params_.lambda[1];
  const double al1 = alpha_[0], al2 = alpha_[1];
  const double z = k1 / k2;

  const long double r0m = std::exp(static_cast<long double>(log_f(n)) - log_f(n + 1));
  const long double r0p =
      n >= 1 ? std::exp(static_cast<long double>(log_f(n)) - log_f(n - 1)) : 1.0L;
  const long double t1 = a1 > 0 ? static_cast<long double>(a1) * al1 / (a1 - 1 + al1) : 0.0L;
  const long double t2 = a2 > 0 ? static_cast<long double>(a2) * al2 / (a2 - 1 + al2) : 0.0L;
  const long double s = t1 + t2;

  long double b = ls * (r0m - 1.0L);
  b += k2 * (n - 1 + al2) * s * (r0p - 1.0L);
  b += s * (a1 * (static_cast<long double>(k2) - k1) - k1 * al1);
  b += t1 * (static_cast<long double>(k1) - k2);
  b += ls / (n + al2) * r0m * (a1 * (static_cast<long double>(z) - 1.0L) + z * al1);
  return static_cast<double>(b);
}

std::pair<double, double> BalanceEvaluator::hyp_ratios(int n) {
  if (n < 0) throw std::invalid_argument("hyp_ratios: n must be non-negative");
  double shift_minus = n >= 1 ? std::exp(log_f(n) - log_f(n - 1)) : 1.0;
  double shift_plus = std::exp(log_f(n) - log_f(n + 1));
  return {shift_minus, shift_plus};
}

BalanceTerms bstar_direct(const ReactionParams& params, const State& a) {
  return BalanceEvaluator(params).direct(a);
}

double bstar_closed_form(const ReactionParams& params, const State& a) {
  return BalanceEvaluator(params).closed_form(a);
}

double bstar_scaled(const ScaledParams& sp, const State& a) {
  return bstar_closed_form(sp.to_unscaled(), a);
}

std::pair<double, double> hyp_ratios(const ReactionParams& params, int n) {
  return BalanceEvaluator(params).hyp_ratios(n);
}

}  // namespace actk
