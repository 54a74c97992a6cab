// combinatorics.hpp — Log-space factorials and binomials for the symmetric
// tensor-power bookkeeping (n! overflows 64-bit integers well before n = 26).

#pragma once

#include <array>
#include <cmath>

namespace qfid {

inline constexpr int max_log_factorial = 256;

inline double log_factorial(int m) {
  static const auto table = [] {
    std::array<double, max_log_factorial + 1> t{};
    t[0] = 0.0;
    for (int i = 1; i <= max_log_factorial; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  return table[m];
}

inline double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline double binomial(int n, int k) { return std::round(std::exp(log_binomial(n, k))); }

inline double log_multinomial4(int n, int a, int b, int c, int d) {
  return log_factorial(n) - log_factorial(a) - log_factorial(b) - log_factorial(c) -
         log_factorial(d);
}

}  // namespace qfid
