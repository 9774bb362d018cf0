#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nbvb/graph.hpp"
#include "nbvb/rng.hpp"

using namespace nbvb;

namespace {

// independent recount of the induced partitions, straight from definitions
void check_partitions_against_recount(const BipartiteGraph& g,
                                      const std::vector<std::uint8_t>& subset) {
  const auto cp = induced_check_partition(g, subset);
  const auto vp = induced_variable_partition(g, subset, cp);
  const int dv = g.spec().d_v;
  const int dc = g.spec().d_c;

  std::vector<std::int32_t> deg(static_cast<std::size_t>(g.m()), 0);
  for (std::int64_t v = 0; v < g.n(); ++v) {
    if (!subset[static_cast<std::size_t>(v)]) continue;
    const std::int32_t* cs = g.var_checks(v);
    for (int e = 0; e < dv; ++e) ++deg[static_cast<std::size_t>(cs[e])];
  }
  std::vector<std::int64_t> ccount(static_cast<std::size_t>(dc) + 1, 0);
  for (std::int64_t c = 0; c < g.m(); ++c) {
    REQUIRE(cp.induced_degree[static_cast<std::size_t>(c)] == deg[static_cast<std::size_t>(c)]);
    ++ccount[static_cast<std::size_t>(deg[static_cast<std::size_t>(c)])];
  }
  REQUIRE(cp.counts == ccount);

  std::vector<std::int64_t> vcount(static_cast<std::size_t>(dv) + 1, 0);
  for (std::int64_t v = 0; v < g.n(); ++v) {
    if (!subset[static_cast<std::size_t>(v)]) continue;
    int ones = 0;
    const std::int32_t* cs = g.var_checks(v);
    for (int e = 0; e < dv; ++e)
      if (deg[static_cast<std::size_t>(cs[e])] == 1) ++ones;
    ++vcount[static_cast<std::size_t>(ones)];
  }
  REQUIRE(vp.counts == vcount);
}

std::vector<std::uint8_t> random_subset(std::int64_t n, std::int64_t k, std::uint64_t seed) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
  Xoshiro256ss rng(seed);
  std::int64_t placed = 0;
  while (placed < k) {
    const auto v = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    if (!mask[v]) {
      mask[v] = 1;
      ++placed;
    }
  }
  return mask;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("spec validation") {
    CHECK_NOTHROW((GraphSpec{600, 5, 6, 1}.validate()));
    CHECK_THROWS_AS((GraphSpec{601, 5, 6, 1}.validate()), std::invalid_argument);  // 601*5 % 6 != 0
    CHECK_THROWS_AS((GraphSpec{600, 0, 6, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GraphSpec{600, 5, 0, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GraphSpec{4, 5, 6, 1}.validate()), std::invalid_argument);  // n < d_c
    CHECK((GraphSpec{600, 5, 6, 1}.m()) == 500);
  }

  TEST_CASE("nearest_valid_n") {
    CHECK(nearest_valid_n(100000, 5, 6) == 99996);
    CHECK(nearest_valid_n(15000, 5, 6) == 15000);
    CHECK(nearest_valid_n(1000, 5, 6) == 996);
    CHECK(nearest_valid_n(100000, 3, 4) == 100000);
    CHECK(nearest_valid_n(7, 5, 6) == 6);
    CHECK(nearest_valid_n(5, 5, 6) == 0);  // nothing valid at or below
  }

  TEST_CASE("construction is deterministic in the seed") {
    const GraphSpec spec{1200, 5, 6, 99};
    const auto a = BipartiteGraph::build_random_regular(spec);
    const auto b = BipartiteGraph::build_random_regular(spec);
    CHECK(a.var_adjacency() == b.var_adjacency());
    GraphSpec other = spec;
    other.seed = 100;
    const auto c = BipartiteGraph::build_random_regular(other);
    CHECK(a.var_adjacency() != c.var_adjacency());
  }

  TEST_CASE("regularity and simplicity hold at size") {
    const GraphSpec spec{3000, 5, 6, 42};
    const auto g = BipartiteGraph::build_random_regular(spec);
    CHECK(g.n() == 3000);
    CHECK(g.m() == 2500);
    CHECK(g.is_simple());

    std::vector<int> check_deg(static_cast<std::size_t>(g.m()), 0);
    for (std::int64_t v = 0; v < g.n(); ++v) {
      std::set<std::int32_t> row;
      for (int e = 0; e < 5; ++e) {
        const std::int32_t c = g.var_checks(v)[e];
        REQUIRE(c >= 0);
        REQUIRE(c < g.m());
        row.insert(c);
        ++check_deg[static_cast<std::size_t>(c)];
      }
      REQUIRE(row.size() == 5);  // no parallel edges at v
    }
    for (int d : check_deg) REQUIRE(d == 6);
  }

  TEST_CASE("tiny graphs build") {
    const auto g = BipartiteGraph::build_random_regular({4, 1, 2, 5});
    CHECK(g.m() == 2);
    CHECK(g.is_simple());
    const auto h = BipartiteGraph::build_random_regular({6, 2, 3, 5});
    CHECK(h.m() == 4);
    CHECK(h.is_simple());
  }

  TEST_CASE("serialize round-trips") {
    const auto g = BipartiteGraph::build_random_regular({600, 5, 6, 7});
    std::stringstream ss(g.serialize_string());
    const auto h = BipartiteGraph::parse(ss);
    CHECK(h.var_adjacency() == g.var_adjacency());
    CHECK(h.spec().n == g.spec().n);
    CHECK(h.spec().seed == g.spec().seed);
  }

  TEST_CASE("from_var_adjacency validates") {
    const GraphSpec spec{4, 1, 2, 0};
    CHECK_NOTHROW(BipartiteGraph::from_var_adjacency(spec, {0, 0, 1, 1}));
    // wrong length
    CHECK_THROWS_AS(BipartiteGraph::from_var_adjacency(spec, {0, 0, 1}), std::invalid_argument);
    // out of range
    CHECK_THROWS_AS(BipartiteGraph::from_var_adjacency(spec, {0, 0, 1, 2}), std::invalid_argument);
    // unbalanced check degrees
    CHECK_THROWS(BipartiteGraph::from_var_adjacency(spec, {0, 0, 0, 1}));
    // parallel edge
    const GraphSpec dup{4, 2, 4, 0};
    CHECK_THROWS(BipartiteGraph::from_var_adjacency(dup, {0, 0, 1, 1, 0, 1, 0, 1}));
  }

  TEST_CASE("induced partitions match a brute-force recount") {
    {
      const auto g = BipartiteGraph::build_random_regular({600, 5, 6, 11});
      check_partitions_against_recount(g, random_subset(600, 120, 3));
    }
    {
      const auto g = BipartiteGraph::build_random_regular({400, 3, 4, 21});
      check_partitions_against_recount(g, random_subset(400, 80, 9));
    }
  }

  TEST_CASE("partition counts conserve nodes and edges") {
    const auto g = BipartiteGraph::build_random_regular({600, 5, 6, 13});
    const auto subset = random_subset(600, 150, 4);
    const auto cp = induced_check_partition(g, subset);
    std::int64_t checks = 0, edges = 0;
    for (std::size_t i = 0; i < cp.counts.size(); ++i) {
      checks += cp.counts[i];
      edges += static_cast<std::int64_t>(i) * cp.counts[i];
    }
    CHECK(checks == g.m());
    CHECK(edges == 150 * 5);
    const auto vp = induced_variable_partition(g, subset, cp);
    std::int64_t vars = 0;
    for (const auto c : vp.counts) vars += c;
    CHECK(vars == 150);
  }
}
