// Small numeric helpers shared by the analytic and simulation engines.
#pragma once

#include <cstdint>
#include <vector>

namespace nbvb {

// C(n,k) as an exact 64-bit integer, valid for 0 <= n <= 64 (C(64,32) < 2^63).
std::uint64_t binom_u64(int n, int k);

inline double binom(int n, int k) { return static_cast<double>(binom_u64(n, k)); }

// x^p by repeated multiplication, p >= 0; deterministic and exact for p = 0,1.
inline double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// Binomial(n, p) probability mass function, entries 0..n.
std::vector<double> binom_pmf(int n, double p);

}  // namespace nbvb
