#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "nbvb/montecarlo.hpp"
#include "nbvb/rng.hpp"

using namespace nbvb;

namespace {

SweepConfig small_sweep() {
  SweepConfig cfg;
  cfg.graph = {600, 5, 6, 0};
  cfg.alg = Algorithm::sbb;
  cfg.alpha_grid = {0.15, 0.25};
  cfg.trials_per_point = 20;
  cfg.master_seed = 7;
  return cfg;
}

bool points_equal(const SweepPoint& a, const SweepPoint& b) {
  return a.alpha0 == b.alpha0 && a.trials == b.trials && a.successes == b.successes &&
         a.stalls == b.stalls && a.anomalies == b.anomalies &&
         a.false_completions == b.false_completions && a.success_rate == b.success_rate &&
         a.mean_iterations == b.mean_iterations;
}

}  // namespace

TEST_SUITE("montecarlo") {
  TEST_CASE("config validation") {
    SweepConfig cfg = small_sweep();
    CHECK_NOTHROW(cfg.validate());
    cfg.alpha_grid = {0.25, 0.15};  // must be sorted ascending
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_sweep();
    cfg.alpha_grid.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_sweep();
    cfg.trials_per_point = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_sweep();
    cfg.jobs = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_sweep();
    cfg.alpha_grid = {0.2, 1.5};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }

  TEST_CASE("graph mode round-trips through strings") {
    GraphMode m;
    CHECK(graph_mode_from_string("fixed", m));
    CHECK(m == GraphMode::fixed_per_sweep);
    CHECK(graph_mode_from_string("fresh", m));
    CHECK(m == GraphMode::fresh_per_trial);
    CHECK(!graph_mode_from_string("sometimes", m));
    CHECK(to_string(GraphMode::fixed_per_sweep) == "fixed");
    CHECK(to_string(GraphMode::fresh_per_trial) == "fresh");
  }

  TEST_CASE("sweeps reproduce exactly, independent of worker count") {
    const auto a = run_sweep(small_sweep());
    const auto b = run_sweep(small_sweep());
    REQUIRE(a.points.size() == 2);
    REQUIRE(b.points.size() == 2);
    for (std::size_t i = 0; i < a.points.size(); ++i)
      CHECK(points_equal(a.points[i], b.points[i]));

    SweepConfig threaded = small_sweep();
    threaded.jobs = 3;
    const auto c = run_sweep(threaded);
    for (std::size_t i = 0; i < a.points.size(); ++i)
      CHECK(points_equal(a.points[i], c.points[i]));

    SweepConfig fresh = small_sweep();
    fresh.graph_mode = GraphMode::fresh_per_trial;
    const auto d = run_sweep(fresh);
    fresh.jobs = 2;
    const auto e = run_sweep(fresh);
    for (std::size_t i = 0; i < d.points.size(); ++i)
      CHECK(points_equal(d.points[i], e.points[i]));
  }

  TEST_CASE("different master seeds move the numbers") {
    SweepConfig cfg = small_sweep();
    cfg.alpha_grid = {0.31};  // near the transition, so outcomes are sensitive
    cfg.trials_per_point = 40;
    const auto a = run_sweep(cfg);
    cfg.master_seed = 8;
    const auto b = run_sweep(cfg);
    CHECK(a.points[0].successes != b.points[0].successes);
  }

  TEST_CASE("per-point callback sees the partial curve") {
    std::size_t calls = 0;
    const auto curve = run_sweep(small_sweep(), [&](const SuccessCurve& partial) {
      ++calls;
      CHECK(partial.points.size() == calls);
    });
    CHECK(calls == 2);
    CHECK(curve.points.size() == 2);
  }

  TEST_CASE("empty signals always succeed; far-supercritical xh never does") {
    SweepConfig cfg = small_sweep();
    cfg.alpha_grid = {0.0};
    const auto zero = run_sweep(cfg);
    CHECK(zero.points[0].successes == 20);
    CHECK(zero.points[0].success_rate == 1.0);
    CHECK(zero.points[0].stalls == 0);

    SweepConfig hard = small_sweep();
    hard.graph = {1200, 5, 6, 0};
    hard.alg = Algorithm::xh;
    hard.alpha_grid = {0.45};
    hard.trials_per_point = 10;
    const auto lost = run_sweep(hard);
    CHECK(lost.points[0].successes == 0);
    CHECK(lost.points[0].stalls == 10);
  }

  TEST_CASE("run_trial matches the sweep aggregation") {
    const SweepConfig cfg = small_sweep();
    const auto curve = run_sweep(cfg);
    for (std::size_t pi = 0; pi < cfg.alpha_grid.size(); ++pi) {
      std::int64_t successes = 0;
      for (std::int64_t t = 0; t < cfg.trials_per_point; ++t) {
        const auto one = run_trial(cfg, pi, t);
        if (one.result.success) ++successes;
        const auto again = run_trial(cfg, pi, t);
        REQUIRE(again.result.success == one.result.success);
        REQUIRE(again.trial_seed == one.trial_seed);
      }
      CHECK(successes == curve.points[pi].successes);
    }
  }

  TEST_CASE("trial seeds never collide across points and trials") {
    const SweepConfig cfg = small_sweep();
    std::set<std::uint64_t> seen;
    for (std::uint64_t pi = 0; pi < 5; ++pi)
      for (std::uint64_t t = 0; t < 100; ++t)
        seen.insert(derive_seed(cfg.master_seed, pi, t));
    CHECK(seen.size() == 500);
    // and run_trial derives its seed exactly this way
    const auto one = run_trial(cfg, 1, 3);
    CHECK(one.trial_seed == derive_seed(cfg.master_seed, 1, 3));
  }

  TEST_CASE("trace comparison tracks the recursion at moderate size") {
    TraceComparisonConfig cfg;
    cfg.graph = {1200, 5, 6, 0};
    cfg.alg = Algorithm::lm;
    cfg.alpha0 = 0.20;
    cfg.trials = 5;
    cfg.master_seed = 11;
    const StopRule stop{};
    const auto cmp = run_trace_comparison(cfg, stop, 5);
    REQUIRE(cmp.rows > 0);
    REQUIRE(cmp.sim_traces.size() == 5);
    REQUIRE(cmp.de_alpha.size() == cmp.rows);
    REQUIRE(cmp.sim_mean.size() == cmp.rows);
    CHECK(cmp.de_alpha[0] == doctest::Approx(0.20).epsilon(1e-12));
    CHECK(cmp.sim_mean[0] == doctest::Approx(0.20).epsilon(0.15));
    for (std::size_t r = 0; r < cmp.rows; ++r) {
      REQUIRE(cmp.sim_min[r] <= cmp.sim_mean[r] + 1e-15);
      REQUIRE(cmp.sim_mean[r] <= cmp.sim_max[r] + 1e-15);
    }
    CHECK(cmp.prefix == 5);
    // n = 1200 is small; allow wide finite-size slack around the asymptote
    CHECK(cmp.max_abs_gap_prefix < 0.06);

    const auto cmp2 = run_trace_comparison(cfg, stop, 5);
    CHECK(cmp2.sim_mean == cmp.sim_mean);

    TraceComparisonConfig threaded = cfg;
    threaded.jobs = 3;
    const auto cmp3 = run_trace_comparison(threaded, stop, 5);
    CHECK(cmp3.sim_mean == cmp.sim_mean);
  }

  TEST_CASE("trace comparison validates input") {
    TraceComparisonConfig cfg;
    cfg.graph = {1200, 5, 6, 0};
    cfg.alpha0 = 1.2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.alpha0 = 0.2;
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
}
