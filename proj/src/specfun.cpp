#include "actk/specfun.hpp"

#include <algorithm>
#include <stdexcept>

namespace actk {

SignedLog SignedLog::from_value(double v) {
  if (v == 0.0) return zero();
  return {v > 0 ? +1 : -1, std::log(std::abs(v))};
}

SignedLog SignedLog::operator*(const SignedLog& o) const {
  if (sign == 0 || o.sign == 0) return zero();
  return {sign * o.sign, log_abs + o.log_abs};
}

SignedLog signed_log_sum(std::span<const SignedLog> terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (t.sign != 0) m = std::max(m, t.log_abs);
  if (std::isinf(m)) return SignedLog::zero();
  double acc = 0.0;
  for (const auto& t : terms)
    if (t.sign != 0) acc += t.sign * std::exp(t.log_abs - m);
  if (acc == 0.0) return SignedLog::zero();
  return {acc > 0 ? +1 : -1, m + std::log(std::abs(acc))};
}

double log_sum_exp(std::span<const double> logs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : logs) m = std::max(m, v);
  if (std::isinf(m)) return m;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - m);
  return m + std::log(acc);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("log_beta: arguments must be positive");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

SignedLog log_pochhammer(double x, long k) {
  SignedLog r = SignedLog::one();
  for (long j = 0; j < k; ++j) r *= SignedLog::from_value(x + j);
  return r;
}

SignedLog hyp2f1_terminating(long n, double x, double y, double z) {
  if (n < 0) throw std::domain_error("hyp2f1_terminating: n must be non-negative");
  for (long j = 0; j < n; ++j)
    if (y + j == 0.0)
      throw std::domain_error("hyp2f1_terminating: denominator Pochhammer vanishes");
  if (z == 0.0 || n == 0) return SignedLog::one();

  // term_{i+1} = term_i * (-(n-i)/(i+1)) * (x+i)/(y+i) * z
  std::vector<SignedLog> terms;
  terms.reserve(static_cast<size_t>(n) + 1);
  SignedLog term = SignedLog::one();
  terms.push_back(term);
  for (long i = 0; i < n; ++i) {
    term *= SignedLog::from_value(-static_cast<double>(n - i) / (i + 1));
    term *= SignedLog::from_value(x + i);
    SignedLog den = SignedLog::from_value(y + i);
    term.sign *= den.sign;
    term.log_abs -= den.log_abs;
    term *= SignedLog::from_value(z);
    if (term.is_zero()) break;  // (x)_(i) hit zero; all later terms vanish
    terms.push_back(term);
  }
  return signed_log_sum(terms);
}

}  // namespace actk
