#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace actk {

// A real number stored as sign * exp(log_abs).  sign == 0 is exact zero and
// log_abs is then ignored.
struct SignedLog {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  static SignedLog zero() { return {}; }
  static SignedLog one() { return {+1, 0.0}; }
  static SignedLog from_value(double v);

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  bool is_zero() const { return sign == 0; }

  SignedLog operator*(const SignedLog& o) const;
  SignedLog& operator*=(const SignedLog& o) {
    *this = *this * o;
    return *this;
  }
};

// Signed log-sum-exp with max extraction over all terms.
SignedLog signed_log_sum(std::span<const SignedLog> terms);

// log-sum-exp over plain logs (all terms positive).
double log_sum_exp(std::span<const double> logs);

// ln Gamma(x), x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

// ln B(a, b), a, b > 0.
double log_beta(double a, double b);

// Ascending factorial x(x+1)...(x+k-1) as a SignedLog; k = 0 gives 1.
SignedLog log_pochhammer(double x, long k);

// Terminating Gauss hypergeometric polynomial
//   2F1(-n, x; y; z) = sum_{i=0}^{n} (-1)^i C(n,i) (x)_(i) / (y)_(i) z^i.
// Throws std::domain_error when a denominator Pochhammer factor vanishes,
// i.e. y in {0, -1, ..., -(n-1)}.
SignedLog hyp2f1_terminating(long n, double x, double y, double z);

}  // namespace actk
