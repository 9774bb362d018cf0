#include "nbvb/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>

#include "nbvb/rng.hpp"

namespace nbvb {

std::string to_string(GraphMode m) {
  return m == GraphMode::fixed_per_sweep ? "fixed" : "fresh";
}

bool graph_mode_from_string(std::string_view s, GraphMode& out) {
  if (s == "fixed") {
    out = GraphMode::fixed_per_sweep;
    return true;
  }
  if (s == "fresh") {
    out = GraphMode::fresh_per_trial;
    return true;
  }
  return false;
}

void SweepConfig::validate() const {
  graph.validate();
  if (alpha_grid.empty()) throw std::invalid_argument("sweep: empty alpha grid");
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    const double a = alpha_grid[i];
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("sweep: alpha0 outside [0,1]");
    if (i > 0 && a < alpha_grid[i - 1])
      throw std::invalid_argument("sweep: alpha grid must be sorted ascending");
  }
  if (trials_per_point < 1) throw std::invalid_argument("sweep: trials_per_point < 1");
  if (jobs < 1) throw std::invalid_argument("sweep: jobs < 1");
  if (max_rounds < 0) throw std::invalid_argument("sweep: negative max_rounds");
}

void TraceComparisonConfig::validate() const {
  graph.validate();
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("compare: alpha0 outside [0,1]");
  if (trials < 1) throw std::invalid_argument("compare: trials < 1");
  if (jobs < 1) throw std::invalid_argument("compare: jobs < 1");
  if (max_rounds < 0) throw std::invalid_argument("compare: negative max_rounds");
}

namespace {

// Runs fn(t) for t in [0, trials), sliced across `jobs` threads; each call
// writes only its own preallocated slot, so no synchronization is needed.
template <class Fn>
void for_each_trial(std::int64_t trials, int jobs, Fn&& fn) {
  if (jobs <= 1) {
    for (std::int64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  const int workers = static_cast<int>(std::min<std::int64_t>(jobs, trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      try {
        for (std::int64_t t = w; t < trials; t += workers) fn(t);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (std::thread& th : threads) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct TrialPieces {
  BipartiteGraph graph;
  SignalInstance signal;
};

TrialPieces make_trial(const GraphSpec& base, GraphMode mode, double alpha0,
                       ValueModel value_model, std::uint64_t trial_seed) {
  GraphSpec gs = base;
  if (mode == GraphMode::fresh_per_trial) gs.seed = derive_seed(trial_seed, 1);
  TrialPieces out{BipartiteGraph::build_random_regular(gs),
                  sample_signal(base.n, SignalModel{alpha0, value_model,
                                                    derive_seed(trial_seed, 2)})};
  return out;
}

}  // namespace

TrialOutcome run_trial(const SweepConfig& cfg, std::size_t point_idx, std::int64_t trial_idx) {
  cfg.validate();
  if (point_idx >= cfg.alpha_grid.size())
    throw std::invalid_argument("run_trial: point index out of range");
  if (trial_idx < 0 || trial_idx >= cfg.trials_per_point)
    throw std::invalid_argument("run_trial: trial index out of range");
  const std::uint64_t trial_seed =
      derive_seed(cfg.master_seed, static_cast<std::uint64_t>(point_idx),
                  static_cast<std::uint64_t>(trial_idx));
  const TrialPieces tp = make_trial(cfg.graph, cfg.graph_mode, cfg.alpha_grid[point_idx],
                                    cfg.value_model, trial_seed);
  TrialOutcome out;
  out.trial_seed = trial_seed;
  out.result = decode_instance(cfg.alg, tp.graph, tp.signal, cfg.policy, cfg.max_rounds);
  return out;
}

SuccessCurve run_sweep(const SweepConfig& cfg,
                       const std::function<void(const SuccessCurve&)>& on_point) {
  cfg.validate();
  SuccessCurve curve;
  curve.config = cfg;
  curve.points.reserve(cfg.alpha_grid.size());

  // In fixed mode the sweep shares one immutable graph across all trials.
  const bool fixed = cfg.graph_mode == GraphMode::fixed_per_sweep;
  std::optional<BipartiteGraph> fixed_graph;
  if (fixed) fixed_graph.emplace(BipartiteGraph::build_random_regular(cfg.graph));

  for (std::size_t pi = 0; pi < cfg.alpha_grid.size(); ++pi) {
    const double alpha0 = cfg.alpha_grid[pi];
    std::vector<DecodeResult> results(static_cast<std::size_t>(cfg.trials_per_point));
    for_each_trial(cfg.trials_per_point, cfg.jobs, [&](std::int64_t t) {
      const std::uint64_t trial_seed =
          derive_seed(cfg.master_seed, static_cast<std::uint64_t>(pi),
                      static_cast<std::uint64_t>(t));
      const SignalInstance sig = sample_signal(
          cfg.graph.n, SignalModel{alpha0, cfg.value_model, derive_seed(trial_seed, 2)});
      if (fixed) {
        results[static_cast<std::size_t>(t)] =
            decode_instance(cfg.alg, *fixed_graph, sig, cfg.policy, cfg.max_rounds);
      } else {
        GraphSpec gs = cfg.graph;
        gs.seed = derive_seed(trial_seed, 1);
        const BipartiteGraph g = BipartiteGraph::build_random_regular(gs);
        results[static_cast<std::size_t>(t)] =
            decode_instance(cfg.alg, g, sig, cfg.policy, cfg.max_rounds);
      }
    });

    SweepPoint point;
    point.alpha0 = alpha0;
    point.trials = cfg.trials_per_point;
    double iter_sum = 0.0;
    for (const DecodeResult& r : results) {
      point.successes += r.success ? 1 : 0;
      point.stalls += r.stall ? 1 : 0;
      point.anomalies += r.anomalous ? 1 : 0;
      point.false_completions += (r.verified_all && !r.success) ? 1 : 0;
      iter_sum += static_cast<double>(r.iterations);
    }
    point.success_rate =
        static_cast<double>(point.successes) / static_cast<double>(point.trials);
    point.mean_iterations = iter_sum / static_cast<double>(point.trials);
    curve.points.push_back(point);
    if (on_point) on_point(curve);
  }
  return curve;
}

TraceComparison run_trace_comparison(const TraceComparisonConfig& cfg, const StopRule& stop,
                                     std::size_t prefix) {
  cfg.validate();
  stop.validate();

  TraceComparison out;
  out.config = cfg;
  out.prefix = prefix;

  // asymptotic side
  const DeParams params{cfg.graph.d_v, cfg.graph.d_c, cfg.alg};
  const DeTraceResult de = de_trace(cfg.alpha0, params, stop, true);
  std::vector<double> de_alpha;
  de_alpha.reserve(de.rows.size());
  for (const DeTraceRow& row : de.rows) de_alpha.push_back(row.support_alpha);

  // simulated side
  std::vector<std::vector<double>> traces(static_cast<std::size_t>(cfg.trials));
  for_each_trial(cfg.trials, cfg.jobs, [&](std::int64_t t) {
    const std::uint64_t trial_seed =
        derive_seed(cfg.master_seed, 0, static_cast<std::uint64_t>(t));
    const TrialPieces tp = make_trial(cfg.graph, GraphMode::fresh_per_trial, cfg.alpha0,
                                      cfg.value_model, trial_seed);
    DecodeResult r = decode_instance(cfg.alg, tp.graph, tp.signal, cfg.policy, cfg.max_rounds);
    traces[static_cast<std::size_t>(t)] = std::move(r.support_trace);
  });

  std::size_t rows = de_alpha.size();
  for (const std::vector<double>& tr : traces) rows = std::max(rows, tr.size());
  out.sim_traces = traces;
  out.rows = rows;
  out.de_alpha.resize(rows);
  out.sim_mean.assign(rows, 0.0);
  out.sim_min.assign(rows, 0.0);
  out.sim_max.assign(rows, 0.0);

  // traces hold their final value once a side has terminated
  auto at_or_last = [](const std::vector<double>& v, std::size_t i) {
    if (v.empty()) return 0.0;
    return i < v.size() ? v[i] : v.back();
  };
  for (std::size_t i = 0; i < rows; ++i) {
    out.de_alpha[i] = at_or_last(de_alpha, i);
    double mn = at_or_last(traces[0], i);
    double mx = mn;
    double sum = 0.0;
    for (const std::vector<double>& tr : traces) {
      const double x = at_or_last(tr, i);
      sum += x;
      mn = std::min(mn, x);
      mx = std::max(mx, x);
    }
    out.sim_mean[i] = sum / static_cast<double>(cfg.trials);
    out.sim_min[i] = mn;
    out.sim_max[i] = mx;
  }

  const std::size_t lim = std::min(rows, prefix);
  double gap = 0.0;
  for (std::size_t i = 0; i < lim; ++i) {
    gap = std::max(gap, std::fabs(out.de_alpha[i] - out.sim_mean[i]));
  }
  out.max_abs_gap_prefix = gap;
  return out;
}

}  // namespace nbvb
