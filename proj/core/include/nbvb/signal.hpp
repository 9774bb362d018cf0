// Sparse signal generation under the density-factor model and linear
// encoding into check measurements over the 0/1 incidence structure.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nbvb/graph.hpp"

namespace nbvb {

// Accumulator for check values in exact-integer mode. Signal values span
// [1, 2^62] with sign, so sums of up to d_c of them need more than 64 bits.
using wide_int = __int128;

enum class ValueModel { gaussian_real, uniform_integer_exact };

inline const char* to_string(ValueModel m) {
  return m == ValueModel::gaussian_real ? "gaussian" : "exact";
}

struct SignalModel {
  double alpha0 = 0.0;  // density factor: each element nonzero w.p. alpha0
  ValueModel value_model = ValueModel::uniform_integer_exact;
  std::uint64_t seed = 0;
};

struct SignalInstance {
  ValueModel model = ValueModel::uniform_integer_exact;
  std::int64_t n = 0;
  std::vector<std::int64_t> ivals;     // exact mode (empty in gaussian mode)
  std::vector<double> rvals;           // gaussian mode (empty in exact mode)
  std::vector<std::uint8_t> support;   // mask: support[i] = (values[i] != 0)
  std::int64_t support_count = 0;
};

// Each element is zero w.p. 1-alpha0; otherwise drawn from the value model
// (standard normal, or uniform magnitude in [1, 2^62] with random sign).
// Deterministic given model.seed. Throws std::invalid_argument on bad alpha0.
SignalInstance sample_signal(std::int64_t n, const SignalModel& model);

// c[j] = sum of the signal values adjacent to check j. Exact in integer
// mode. Throws std::invalid_argument on length mismatch.
std::vector<wide_int> encode_exact(const BipartiteGraph& g,
                                   const std::vector<std::int64_t>& values);
std::vector<double> encode_real(const BipartiteGraph& g,
                                const std::vector<double>& values);

// Decimal rendering of a wide accumulator (for CSV dumps).
std::string to_string_wide(wide_int v);

}  // namespace nbvb
