#include "nbvb/signal.hpp"

#include <algorithm>
#include <stdexcept>

#include "nbvb/rng.hpp"

namespace nbvb {

SignalInstance sample_signal(std::int64_t n, const SignalModel& model) {
  if (!(model.alpha0 >= 0.0 && model.alpha0 <= 1.0))
    throw std::invalid_argument("signal: alpha0 outside [0,1]");
  if (n < 0) throw std::invalid_argument("signal: negative length");

  SignalInstance out;
  out.model = model.value_model;
  out.n = n;
  out.support.assign(static_cast<std::size_t>(n), 0);

  Xoshiro256ss rng(model.seed);
  const bool exact = model.value_model == ValueModel::uniform_integer_exact;
  if (exact) {
    out.ivals.assign(static_cast<std::size_t>(n), 0);
  } else {
    out.rvals.assign(static_cast<std::size_t>(n), 0.0);
  }

  for (std::int64_t i = 0; i < n; ++i) {
    if (uniform01(rng) >= model.alpha0) continue;
    out.support[static_cast<std::size_t>(i)] = 1;
    ++out.support_count;
    if (exact) {
      // magnitude uniform in [1, 2^62], independent sign: never zero, and
      // any sum of up to 64 values fits a wide accumulator
      const std::uint64_t mag = uniform_below(rng, std::uint64_t{1} << 62) + 1;
      const bool neg = (rng.next() & 1) != 0;
      const std::int64_t val = static_cast<std::int64_t>(mag);
      out.ivals[static_cast<std::size_t>(i)] = neg ? -val : val;
    } else {
      double val = gaussian(rng);
      while (val == 0.0) val = gaussian(rng);  // support must be exact
      out.rvals[static_cast<std::size_t>(i)] = val;
    }
  }
  return out;
}

std::vector<wide_int> encode_exact(const BipartiteGraph& g,
                                   const std::vector<std::int64_t>& values) {
  if (static_cast<std::int64_t>(values.size()) != g.n())
    throw std::invalid_argument("encode: value length mismatch");
  std::vector<wide_int> c(static_cast<std::size_t>(g.m()), 0);
  const int dv = g.spec().d_v;
  for (std::int64_t v = 0; v < g.n(); ++v) {
    const std::int64_t x = values[static_cast<std::size_t>(v)];
    if (x == 0) continue;
    const std::int32_t* cs = g.var_checks(v);
    for (int i = 0; i < dv; ++i) c[static_cast<std::size_t>(cs[i])] += x;
  }
  return c;
}

std::vector<double> encode_real(const BipartiteGraph& g, const std::vector<double>& values) {
  if (static_cast<std::int64_t>(values.size()) != g.n())
    throw std::invalid_argument("encode: value length mismatch");
  std::vector<double> c(static_cast<std::size_t>(g.m()), 0.0);
  const int dv = g.spec().d_v;
  for (std::int64_t v = 0; v < g.n(); ++v) {
    const double x = values[static_cast<std::size_t>(v)];
    if (x == 0.0) continue;
    const std::int32_t* cs = g.var_checks(v);
    for (int i = 0; i < dv; ++i) c[static_cast<std::size_t>(cs[i])] += x;
  }
  return c;
}

std::string to_string_wide(wide_int v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // avoid overflow on the most negative value by peeling digits as unsigned
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace nbvb
