#include "nbvb/math.hpp"

#include <array>
#include <stdexcept>

namespace nbvb {

namespace {

constexpr int kMaxN = 64;

// Pascal's triangle, exact up to n = 64 (largest entry C(64,32) fits in
// 63 bits).
std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1> build_table() {
  std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1> t{};
  for (int n = 0; n <= kMaxN; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) {
      t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
  }
  return t;
}

}  // namespace

std::uint64_t binom_u64(int n, int k) {
  static const auto table = build_table();
  if (n < 0 || n > kMaxN) throw std::out_of_range("binom_u64: n outside [0,64]");
  if (k < 0 || k > n) return 0;
  return table[n][k];
}

std::vector<double> binom_pmf(int n, double p) {
  if (n < 0 || n > 64) throw std::out_of_range("binom_pmf: n outside [0,64]");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binom_pmf: p outside [0,1]");
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  const double q = 1.0 - p;
  for (int k = 0; k <= n; ++k) {
    out[static_cast<std::size_t>(k)] = binom(n, k) * ipow(p, k) * ipow(q, n - k);
  }
  return out;
}

}  // namespace nbvb
