#pragma once

// High-precision reference implementations used only to cross-check the
// double-precision library code.  Everything here is deliberately the most
// naive formula available, evaluated in 50-digit floats.

#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace hpref {

using hp = boost::multiprecision::cpp_bin_float_50;

// Ascending factorial (x)_k.
inline hp pochhammer(hp x, long k) {
  hp r = 1;
  for (long i = 0; i < k; ++i) r *= x + i;
  return r;
}

inline hp binomial(long n, long k) {
  hp r = 1;
  for (long i = 0; i < k; ++i) r = r * hp(n - i) / hp(i + 1);
  return r;
}

// Terminating 2F1(-n, x; y; z) by the defining sum.
inline hp hyp2f1_terminating(long n, hp x, hp y, hp z) {
  hp sum = 0;
  for (long i = 0; i <= n; ++i) {
    hp term = binomial(n, i) * pochhammer(x, i) / pochhammer(y, i);
    if (i % 2 == 1) term = -term;
    hp zp = 1;
    for (long j = 0; j < i; ++j) zp *= z;
    sum += term * zp;
  }
  return sum;
}

// Dirichlet-multinomial(n, alpha) pmf at a (sum a_i = n).
inline hp dirmult_pmf(int n, const std::vector<double>& alpha,
                      const std::vector<int>& a) {
  hp num = 1;
  long rem = n;
  for (size_t i = 0; i < a.size(); ++i) {
    num *= binomial(rem, a[i]);
    rem -= a[i];
    // multinomial coefficient built up factor by factor
  }
  hp alpha_sum = 0;
  for (double al : alpha) alpha_sum += al;
  hp p = num;
  for (size_t i = 0; i < a.size(); ++i) p *= pochhammer(hp(alpha[i]), a[i]);
  p /= pochhammer(alpha_sum, n);
  return p;
}

// Enumerates all compositions of n into d parts and applies fn(a).
template <typename Fn>
inline void for_each_composition(int n, int d, Fn&& fn) {
  std::vector<int> a(static_cast<size_t>(d), 0);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == d - 1) {
      a[static_cast<size_t>(pos)] = rem;
      fn(a);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      a[static_cast<size_t>(pos)] = v;
      self(self, pos + 1, rem - v);
    }
  };
  rec(rec, 0, n);
}

// Partition function u(alpha, kappa, n) = E[prod kappa_i^{xi_i}] under
// Dirichlet-multinomial(n, alpha), by brute-force composition sum.
inline hp partition_u(const std::vector<double>& alpha,
                      const std::vector<double>& kappa, int n) {
  hp u = 0;
  for_each_composition(n, static_cast<int>(alpha.size()), [&](const std::vector<int>& a) {
    hp w = dirmult_pmf(n, alpha, a);
    for (size_t i = 0; i < a.size(); ++i)
      for (int j = 0; j < a[i]; ++j) w *= kappa[i];
    u += w;
  });
  return u;
}

}  // namespace hpref
