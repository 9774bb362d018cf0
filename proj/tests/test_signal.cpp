#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nbvb/graph.hpp"
#include "nbvb/signal.hpp"

using namespace nbvb;

TEST_SUITE("signal") {
  TEST_CASE("degenerate densities") {
    const auto zero = sample_signal(500, {0.0, ValueModel::uniform_integer_exact, 1});
    CHECK(zero.support_count == 0);
    for (auto v : zero.ivals) CHECK(v == 0);

    const auto full = sample_signal(500, {1.0, ValueModel::uniform_integer_exact, 1});
    CHECK(full.support_count == 500);
    for (auto v : full.ivals) CHECK(v != 0);
  }

  TEST_CASE("bad parameters throw") {
    CHECK_THROWS_AS(sample_signal(10, {-0.1, ValueModel::uniform_integer_exact, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_signal(10, {1.5, ValueModel::gaussian_real, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_signal(-1, {0.5, ValueModel::gaussian_real, 1}),
                    std::invalid_argument);
  }

  TEST_CASE("support mask is consistent and support count concentrates") {
    const std::int64_t n = 20000;
    const auto s = sample_signal(n, {0.3, ValueModel::uniform_integer_exact, 5});
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const bool nz = s.ivals[static_cast<std::size_t>(i)] != 0;
      REQUIRE((s.support[static_cast<std::size_t>(i)] != 0) == nz);
      if (nz) ++count;
    }
    CHECK(count == s.support_count);
    // 4 sigma around n*alpha, sigma = sqrt(n*alpha*(1-alpha)) ~ 65
    CHECK(std::llabs(count - 6000) < 260);
  }

  TEST_CASE("exact magnitudes stay in range, gaussian values are nonzero on support") {
    const auto s = sample_signal(2000, {0.5, ValueModel::uniform_integer_exact, 6});
    for (auto v : s.ivals) {
      if (v == 0) continue;
      const auto mag = static_cast<std::uint64_t>(v < 0 ? -v : v);
      CHECK(mag >= 1);
      CHECK(mag <= (std::uint64_t{1} << 62));
    }
    const auto g = sample_signal(2000, {0.5, ValueModel::gaussian_real, 6});
    CHECK(g.ivals.empty());
    for (std::size_t i = 0; i < g.rvals.size(); ++i)
      REQUIRE((g.rvals[i] != 0.0) == (g.support[i] != 0));
  }

  TEST_CASE("sampling is deterministic in the seed") {
    const SignalModel m{0.25, ValueModel::uniform_integer_exact, 77};
    const auto a = sample_signal(1000, m);
    const auto b = sample_signal(1000, m);
    CHECK(a.ivals == b.ivals);
    SignalModel m2 = m;
    m2.seed = 78;
    CHECK(sample_signal(1000, m2).ivals != a.ivals);
  }

  TEST_CASE("encode matches a direct incidence sum") {
    const auto g = BipartiteGraph::build_random_regular({60, 2, 3, 8});
    const auto s = sample_signal(60, {0.4, ValueModel::uniform_integer_exact, 9});
    const auto c = encode_exact(g, s.ivals);
    REQUIRE(static_cast<std::int64_t>(c.size()) == g.m());
    for (std::int64_t j = 0; j < g.m(); ++j) {
      wide_int want = 0;
      for (int e = 0; e < 3; ++e) want += s.ivals[static_cast<std::size_t>(g.check_vars(j)[e])];
      REQUIRE(c[static_cast<std::size_t>(j)] == want);
    }
  }

  TEST_CASE("encoding is linear") {
    const auto g = BipartiteGraph::build_random_regular({120, 3, 4, 10});
    const auto a = sample_signal(120, {0.3, ValueModel::uniform_integer_exact, 11});
    const auto b = sample_signal(120, {0.3, ValueModel::uniform_integer_exact, 12});
    std::vector<std::int64_t> sum(120);
    for (std::size_t i = 0; i < 120; ++i) sum[i] = a.ivals[i] / 2 + b.ivals[i] / 2;
    const auto ca = encode_exact(g, a.ivals);
    const auto cb = encode_exact(g, b.ivals);
    const auto cs = encode_exact(g, sum);
    std::vector<std::int64_t> halved_a(120), halved_b(120);
    for (std::size_t i = 0; i < 120; ++i) {
      halved_a[i] = a.ivals[i] / 2;
      halved_b[i] = b.ivals[i] / 2;
    }
    const auto cha = encode_exact(g, halved_a);
    const auto chb = encode_exact(g, halved_b);
    for (std::size_t j = 0; j < cs.size(); ++j) REQUIRE(cs[j] == cha[j] + chb[j]);
    CHECK(ca.size() == cb.size());
  }

  TEST_CASE("equal nonzero checks share their support neighborhood") {
    // the uniqueness property behind verification: with continuous-like
    // values, two checks agree only when they see the same support set, and
    // a zero check sees no support at all
    const auto g = BipartiteGraph::build_random_regular({600, 5, 6, 31});
    std::int64_t violations = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
      const auto s = sample_signal(600, {0.2, ValueModel::uniform_integer_exact, 1000 + t});
      const auto c = encode_exact(g, s.ivals);
      std::map<wide_int, std::vector<std::int64_t>> by_value;
      for (std::int64_t j = 0; j < g.m(); ++j) {
        const wide_int val = c[static_cast<std::size_t>(j)];
        if (val == 0) {
          for (int e = 0; e < 6; ++e)
            if (s.support[static_cast<std::size_t>(g.check_vars(j)[e])]) ++violations;
          continue;
        }
        by_value[val].push_back(j);
      }
      for (const auto& [val, checks] : by_value) {
        if (checks.size() < 2) continue;
        auto support_set = [&](std::int64_t j) {
          std::vector<std::int32_t> set;
          for (int e = 0; e < 6; ++e) {
            const std::int32_t v = g.check_vars(j)[e];
            if (s.support[static_cast<std::size_t>(v)]) set.push_back(v);
          }
          std::sort(set.begin(), set.end());
          return set;
        };
        const auto first = support_set(checks[0]);
        for (std::size_t k = 1; k < checks.size(); ++k)
          if (support_set(checks[k]) != first) ++violations;
      }
    }
    CHECK(violations == 0);
  }

  TEST_CASE("wide accumulator renders decimals") {
    CHECK(to_string_wide(0) == "0");
    CHECK(to_string_wide(-1) == "-1");
    CHECK(to_string_wide(wide_int{1} << 70) == "1180591620717411303424");
  }
}
