// Monte-Carlo layer: success-rate sweeps over alpha0 grids and
// finite-length-vs-asymptotic trace comparisons.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nbvb/algorithm.hpp"
#include "nbvb/de.hpp"
#include "nbvb/decoders.hpp"
#include "nbvb/graph.hpp"
#include "nbvb/signal.hpp"

namespace nbvb {

enum class GraphMode { fixed_per_sweep, fresh_per_trial };
std::string to_string(GraphMode m);
bool graph_mode_from_string(std::string_view s, GraphMode& out);

struct SweepConfig {
  GraphSpec graph;  // in fresh mode graph.seed is unused; trials derive their own
  Algorithm alg = Algorithm::sbb;
  std::vector<double> alpha_grid;  // sorted ascending
  std::int64_t trials_per_point = 1000;
  ValueModel value_model = ValueModel::uniform_integer_exact;
  EqualityPolicy policy = EqualityPolicy::exact();
  GraphMode graph_mode = GraphMode::fixed_per_sweep;
  std::uint64_t master_seed = 1;
  int jobs = 1;
  std::int64_t max_rounds = 0;  // 0: default_max_rounds(n)

  void validate() const;
};

struct SweepPoint {
  double alpha0 = 0.0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  std::int64_t stalls = 0;
  std::int64_t anomalies = 0;        // trials with conflicting verdicts
  std::int64_t false_completions = 0;  // verified_all but wrong values
  double success_rate = 0.0;
  double mean_iterations = 0.0;
};

struct SuccessCurve {
  SweepConfig config;
  std::vector<SweepPoint> points;
};

// on_point (optional) fires after each grid point with the curve so far, so
// front ends can flush partial results.
SuccessCurve run_sweep(const SweepConfig& cfg,
                       const std::function<void(const SuccessCurve&)>& on_point = {});

// Runs a single decode trial at grid point `point_idx`, trial `trial_idx`,
// with the same seed derivation run_sweep uses (exposed for tests and for
// the recovery-recheck acceptance run).
struct TrialOutcome {
  DecodeResult result;
  std::uint64_t trial_seed = 0;
};
TrialOutcome run_trial(const SweepConfig& cfg, std::size_t point_idx, std::int64_t trial_idx);

struct TraceComparisonConfig {
  GraphSpec graph;
  Algorithm alg = Algorithm::lm;
  double alpha0 = 0.2;
  std::int64_t trials = 10;
  ValueModel value_model = ValueModel::uniform_integer_exact;
  EqualityPolicy policy = EqualityPolicy::exact();
  std::uint64_t master_seed = 1;
  int jobs = 1;
  std::int64_t max_rounds = 0;

  void validate() const;
};

struct TraceComparison {
  TraceComparisonConfig config;
  // row l: asymptotic unverified-support density after l rounds vs the
  // simulated mean/min/max across trials (rows up to the longer of the two)
  std::vector<double> de_alpha;
  std::vector<double> sim_mean;
  std::vector<double> sim_min;
  std::vector<double> sim_max;
  std::vector<std::vector<double>> sim_traces;  // raw per-trial traces
  std::size_t rows = 0;
  // largest |de - sim_mean| over rows 0..prefix-1 (both clipped to length)
  double max_abs_gap_prefix = 0.0;
  std::size_t prefix = 0;
};

TraceComparison run_trace_comparison(const TraceComparisonConfig& cfg, const StopRule& stop,
                                     std::size_t prefix = 5);

}  // namespace nbvb
