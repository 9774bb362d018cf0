// nbvb: command-line workbench for node-based verification decoding.
// Subcommands: analyze (density-evolution trace), threshold (bisection
// search), simulate (finite-length success sweeps), compare (asymptotic vs
// simulated traces), rerun (replay a run manifest).
//
// Parameter precedence: explicit flags > --config JSON file > built-in
// defaults. Every run writes a manifest.json holding the fully resolved
// parameters; `rerun` replays it and reproduces the data files byte for
// byte. NBVB_OUT sets the default output directory.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbvb/csv.hpp"
#include "nbvb/de.hpp"
#include "nbvb/decoders.hpp"
#include "nbvb/graph.hpp"
#include "nbvb/manifest.hpp"
#include "nbvb/montecarlo.hpp"
#include "nbvb/rng.hpp"
#include "nbvb/signal.hpp"
#include "nbvb/threshold.hpp"
#include "nbvb/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nbvb;

namespace {

// exit codes: 0 ok/success-verdict, 1 all-cells-failed (threshold),
// 2 stall verdict, 3 inconclusive verdict, 64 usage, 70 internal failure
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return fs::path(flag_value);
  if (const char* env = std::getenv("NBVB_OUT"); env && *env) return fs::path(env);
  return fs::path(".");
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Three-layer parameter resolution: an explicitly passed flag wins, then a
// key in the --config JSON object, then the built-in default already stored
// in the bound variable.
class ParamResolver {
 public:
  ParamResolver(CLI::App* cmd, const std::string& config_path) : cmd_(cmd) {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw UsageError("config file not found: " + config_path);
    try {
      in >> config_;
    } catch (const json::exception& e) {
      throw UsageError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!config_.is_object()) throw UsageError("config file must hold a JSON object");
  }

  template <class T>
  T pick(const std::string& flag, const std::string& key, const T& flag_value) const {
    if (cmd_->count(flag) > 0) return flag_value;
    if (config_.contains(key)) {
      try {
        return config_.at(key).get<T>();
      } catch (const json::exception&) {
        throw UsageError("config key '" + key + "' has the wrong type");
      }
    }
    return flag_value;  // holds the built-in default when the flag is absent
  }

  bool has(const std::string& flag, const std::string& key) const {
    return cmd_->count(flag) > 0 || config_.contains(key);
  }

 private:
  CLI::App* cmd_;
  json config_;
};

Algorithm parse_algorithm(const std::string& s) {
  Algorithm a;
  if (!algorithm_from_string(s, a))
    throw UsageError("unknown algorithm '" + s + "' (expected genie, lm, sbb or xh)");
  return a;
}

ValueModel parse_value_model(const std::string& s) {
  if (s == "exact") return ValueModel::uniform_integer_exact;
  if (s == "gaussian") return ValueModel::gaussian_real;
  throw UsageError("unknown value model '" + s + "' (expected exact or gaussian)");
}

GraphMode parse_graph_mode(const std::string& s) {
  GraphMode m;
  if (!graph_mode_from_string(s, m))
    throw UsageError("unknown graph mode '" + s + "' (expected fixed or fresh)");
  return m;
}

EqualityPolicy parse_equality(const std::string& mode, double abs_tol, double rel_tol) {
  if (mode == "exact") return EqualityPolicy::exact();
  if (mode == "tolerant") return EqualityPolicy::tolerant(abs_tol, rel_tol);
  throw UsageError("unknown equality mode '" + mode + "' (expected exact or tolerant)");
}

StopRule stop_rule_from_params(const json& p) {
  StopRule stop;
  stop.success_eps = p.at("success_eps").get<double>();
  stop.progress_eps = p.at("progress_eps").get<double>();
  stop.patience = p.at("patience").get<std::int64_t>();
  stop.max_iter = p.at("max_iter").get<std::int64_t>();
  try {
    stop.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return stop;
}

// "start:end:step" (inclusive end, within half a step) or a comma list.
std::vector<double> parse_alpha_grid(const std::string& s) {
  std::vector<double> grid;
  const auto parse_one = [](const std::string& t) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad number in alpha grid: '" + t + "'");
    }
  };
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("alpha grid range must be start:end:step");
    const double start = parse_one(parts[0]);
    const double end = parse_one(parts[1]);
    const double step = parse_one(parts[2]);
    if (!(step > 0.0)) throw UsageError("alpha grid step must be positive");
    if (end < start) throw UsageError("alpha grid end must be >= start");
    const auto count = static_cast<std::int64_t>((end - start) / step + 0.5) + 1;
    for (std::int64_t i = 0; i < count; ++i) {
      const double a = start + static_cast<double>(i) * step;
      if (a <= end + step * 1e-9) grid.push_back(a);
    }
  } else {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) grid.push_back(parse_one(tok));
    }
  }
  if (grid.empty()) throw UsageError("alpha grid is empty");
  return grid;
}

std::int64_t resolve_n(std::int64_t requested, int dv, int dc) {
  if (requested < 1) throw UsageError("n must be positive");
  if (dv < 1 || dv > 64 || dc < 1 || dc > 64) throw UsageError("degrees must be in [1,64]");
  const std::int64_t n = nearest_valid_n(requested, dv, dc);
  if (n == 0) throw UsageError("no valid n at or below the requested size");
  if (n != requested) {
    std::cerr << "note: n rounded down to " << n << " so that n*d_v is divisible by d_c\n";
  }
  return n;
}

void save_manifest(const fs::path& out_dir, const std::string& command, const json& params,
                   const std::vector<std::string>& outputs, std::int64_t wall_ms) {
  RunManifest m;
  m.tool_version = kVersion;
  m.command = command;
  m.params_json = params.dump();
  m.outputs = outputs;
  m.wall_ms = wall_ms;
  m.save((out_dir / "manifest.json").string());
}

class Stopwatch {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------
// exec_*: run a command from fully resolved parameters. These are the only
// paths that produce files, and they depend on nothing but the parameters,
// which is what makes `rerun` reproduce outputs byte for byte.
// ---------------------------------------------------------------------------

int exec_analyze(const json& p, const fs::path& out_dir) {
  const DeParams params{p.at("dv").get<int>(), p.at("dc").get<int>(),
                        parse_algorithm(p.at("alg").get<std::string>())};
  const double alpha0 = p.at("alpha0").get<double>();
  const StopRule stop = stop_rule_from_params(p);
  try {
    params.validate();
    if (!(alpha0 >= 0.0 && alpha0 <= 1.0)) throw std::invalid_argument("alpha0 outside [0,1]");
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Stopwatch watch;
  const DeTraceResult trace = de_trace(alpha0, params, stop, true);

  fs::create_directories(out_dir);
  std::ostringstream csv;
  write_de_trace_csv(csv, trace, params);
  write_text_file(out_dir / "de_trace.csv", csv.str());
  save_manifest(out_dir, "analyze", p, {"de_trace.csv"}, watch.ms());

  std::cout << "verdict=" << to_string(trace.verdict) << " iterations=" << trace.iterations
            << " final_alpha=" << format_double(trace.final_alpha) << '\n';
  switch (trace.verdict) {
    case Verdict::success: return 0;
    case Verdict::stall: return 2;
    case Verdict::inconclusive: return 3;
  }
  return kExitInternal;
}

int exec_threshold(const json& p, const fs::path& out_dir) {
  const StopRule stop = stop_rule_from_params(p);
  const double tol = p.at("tol").get<double>();
  std::vector<DeParams> grid;
  if (p.at("grid").get<std::string>() == "table1") {
    grid = table1_grid();
  } else {
    const DeParams cell{p.at("dv").get<int>(), p.at("dc").get<int>(),
                        parse_algorithm(p.at("alg").get<std::string>())};
    try {
      cell.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    grid.push_back(cell);
  }

  Stopwatch watch;
  const std::vector<TableCell> cells = threshold_table(grid, stop, tol);

  fs::create_directories(out_dir);
  std::ostringstream csv, txt;
  write_threshold_csv(csv, cells);
  write_threshold_text(txt, cells);
  write_text_file(out_dir / "thresholds.csv", csv.str());
  write_text_file(out_dir / "thresholds.txt", txt.str());
  save_manifest(out_dir, "threshold", p, {"thresholds.csv", "thresholds.txt"}, watch.ms());

  bool any_ok = false;
  for (const TableCell& c : cells) {
    if (!c.ok) {
      std::cout << to_string(c.params.alg) << " (" << c.params.d_v << "," << c.params.d_c
                << "): failed: " << c.error << '\n';
      continue;
    }
    any_ok = true;
    std::cout << to_string(c.params.alg) << " (" << c.params.d_v << "," << c.params.d_c
              << "): threshold=" << format_double(c.report.threshold)
              << " r_o=" << format_double(c.report.oversampling_ratio);
    if (!reference_threshold(c.params.alg, c.params.d_v, c.params.d_c)) {
      std::cout << "  [no published reference value for this cell]";
    }
    std::cout << '\n';
  }
  return any_ok ? 0 : 1;
}

int exec_simulate(const json& p, const fs::path& out_dir) {
  SweepConfig cfg;
  cfg.graph.n = p.at("n").get<std::int64_t>();
  cfg.graph.d_v = p.at("dv").get<int>();
  cfg.graph.d_c = p.at("dc").get<int>();
  cfg.graph.seed = derive_seed(p.at("seed").get<std::uint64_t>(), 0xf1a7);
  cfg.alg = parse_algorithm(p.at("alg").get<std::string>());
  cfg.alpha_grid = p.at("alpha_grid").get<std::vector<double>>();
  cfg.trials_per_point = p.at("trials").get<std::int64_t>();
  cfg.value_model = parse_value_model(p.at("value_model").get<std::string>());
  cfg.policy = parse_equality(p.at("equality").get<std::string>(), p.at("abs_tol").get<double>(),
                              p.at("rel_tol").get<double>());
  cfg.graph_mode = parse_graph_mode(p.at("graph_mode").get<std::string>());
  cfg.master_seed = p.at("seed").get<std::uint64_t>();
  cfg.jobs = p.at("jobs").get<int>();
  cfg.max_rounds = p.at("max_rounds").get<std::int64_t>();
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  fs::create_directories(out_dir);
  const std::string dat_name = std::string("sweep_") + to_string(cfg.alg) + ".dat";
  // flush after every grid point so an interrupted run leaves usable data
  const auto flush = [&](const SuccessCurve& partial) {
    std::ostringstream csv, dat;
    write_sweep_csv(csv, partial);
    write_sweep_dat(dat, partial);
    write_text_file(out_dir / "sweep.csv", csv.str());
    write_text_file(out_dir / dat_name, dat.str());
    const SweepPoint& pt = partial.points.back();
    std::cout << "alpha0=" << format_double(pt.alpha0)
              << " rate=" << format_double(pt.success_rate) << " trials=" << pt.trials
              << " mean_iterations=" << format_double(pt.mean_iterations) << '\n';
  };

  Stopwatch watch;
  run_sweep(cfg, flush);
  save_manifest(out_dir, "simulate", p, {"sweep.csv", dat_name}, watch.ms());
  return 0;
}

int exec_compare(const json& p, const fs::path& out_dir) {
  TraceComparisonConfig cfg;
  cfg.graph.n = p.at("n").get<std::int64_t>();
  cfg.graph.d_v = p.at("dv").get<int>();
  cfg.graph.d_c = p.at("dc").get<int>();
  cfg.graph.seed = derive_seed(p.at("seed").get<std::uint64_t>(), 0xc0de);
  cfg.alg = parse_algorithm(p.at("alg").get<std::string>());
  cfg.alpha0 = p.at("alpha0").get<double>();
  cfg.trials = p.at("trials").get<std::int64_t>();
  cfg.value_model = parse_value_model(p.at("value_model").get<std::string>());
  cfg.policy = parse_equality(p.at("equality").get<std::string>(), p.at("abs_tol").get<double>(),
                              p.at("rel_tol").get<double>());
  cfg.master_seed = p.at("seed").get<std::uint64_t>();
  cfg.jobs = p.at("jobs").get<int>();
  cfg.max_rounds = p.at("max_rounds").get<std::int64_t>();
  const StopRule stop = stop_rule_from_params(p);
  const auto prefix = p.at("prefix").get<std::size_t>();
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Stopwatch watch;
  const TraceComparison cmp = run_trace_comparison(cfg, stop, prefix);

  fs::create_directories(out_dir);
  std::ostringstream csv;
  write_compare_csv(csv, cmp);
  write_text_file(out_dir / "compare.csv", csv.str());

  std::ostringstream txt;
  txt << "algorithm: " << to_string(cfg.alg) << '\n';
  txt << "d_v d_c: " << cfg.graph.d_v << ' ' << cfg.graph.d_c << '\n';
  txt << "n: " << cfg.graph.n << '\n';
  txt << "alpha0: " << format_double(cfg.alpha0) << '\n';
  if (p.contains("offset") && !p.at("offset").is_null()) {
    txt << "offset: " << format_double(p.at("offset").get<double>()) << '\n';
    txt << "threshold_used: " << format_double(p.at("threshold_used").get<double>()) << '\n';
  }
  txt << "trials: " << cfg.trials << '\n';
  txt << "prefix: " << cmp.prefix << '\n';
  txt << "max_abs_gap_prefix: " << format_double(cmp.max_abs_gap_prefix) << '\n';
  txt << "rows: " << cmp.rows << '\n';
  write_text_file(out_dir / "compare.txt", txt.str());
  save_manifest(out_dir, "compare", p, {"compare.csv", "compare.txt"}, watch.ms());

  std::cout << "alpha0=" << format_double(cfg.alpha0)
            << " max_abs_gap_prefix=" << format_double(cmp.max_abs_gap_prefix)
            << " rows=" << cmp.rows << '\n';
  return 0;
}

int exec_command(const std::string& command, const json& params, const fs::path& out_dir) {
  if (command == "analyze") return exec_analyze(params, out_dir);
  if (command == "threshold") return exec_threshold(params, out_dir);
  if (command == "simulate") return exec_simulate(params, out_dir);
  if (command == "compare") return exec_compare(params, out_dir);
  throw UsageError("manifest holds unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"node-based verification decoding workbench"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(0, 1);

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "density-evolution trace for one setting");
  struct {
    int dv = 5, dc = 6;
    std::string alg = "sbb";
    double alpha0 = 0.3;
    double success_eps = 1e-7, progress_eps = 1e-10;
    std::int64_t patience = 50, max_iter = 1000000;
    std::string out, config;
    bool show = false;
  } an;
  analyze->add_option("--dv", an.dv, "variable-node degree");
  analyze->add_option("--dc", an.dc, "check-node degree");
  analyze->add_option("--alg", an.alg, "algorithm: genie|lm|sbb|xh");
  analyze->add_option("--alpha0", an.alpha0, "initial density factor");
  analyze->add_option("--stop.success-eps", an.success_eps, "success when alpha drops below");
  analyze->add_option("--stop.progress-eps", an.progress_eps, "relative progress floor");
  analyze->add_option("--stop.patience", an.patience, "stall patience (steps)");
  analyze->add_option("--stop.max-iter", an.max_iter, "iteration budget");
  analyze->add_option("--out", an.out, "output directory (default: $NBVB_OUT or .)");
  analyze->add_option("--config", an.config, "JSON config file (flags override it)");
  analyze->add_flag("--show-config", an.show, "print resolved parameters and exit");

  // ---- threshold ----
  auto* threshold = app.add_subcommand("threshold", "bisection threshold search");
  struct {
    std::string grid;
    int dv = 5, dc = 6;
    std::string alg = "sbb";
    double tol = 1e-4;
    double success_eps = 1e-7, progress_eps = 1e-10;
    std::int64_t patience = 50, max_iter = 1000000;
    int jobs = 1;
    std::string out, config;
    bool show = false;
  } th;
  threshold->add_option("--grid", th.grid, "named grid (table1) instead of a single cell");
  threshold->add_option("--dv", th.dv, "variable-node degree");
  threshold->add_option("--dc", th.dc, "check-node degree");
  threshold->add_option("--alg", th.alg, "algorithm: genie|lm|sbb|xh");
  threshold->add_option("--tol", th.tol, "bisection interval tolerance");
  threshold->add_option("--stop.success-eps", th.success_eps, "success when alpha drops below");
  threshold->add_option("--stop.progress-eps", th.progress_eps, "relative progress floor");
  threshold->add_option("--stop.patience", th.patience, "stall patience (steps)");
  threshold->add_option("--stop.max-iter", th.max_iter, "iteration budget");
  threshold->add_option("--jobs", th.jobs, "worker threads");
  threshold->add_option("--out", th.out, "output directory (default: $NBVB_OUT or .)");
  threshold->add_option("--config", th.config, "JSON config file (flags override it)");
  threshold->add_flag("--show-config", th.show, "print resolved parameters and exit");

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "finite-length success-rate sweep");
  struct {
    std::int64_t n = 3000;
    int dv = 5, dc = 6;
    std::string alg = "sbb";
    std::string alpha_grid = "0.20:0.45:0.01";
    std::int64_t trials = 1000;
    std::uint64_t seed = 1;
    std::string graph_mode = "fixed";
    std::string value_model = "exact";
    std::string equality;  // default: exact for exact values, tolerant for gaussian
    double abs_tol = 1e-9, rel_tol = 1e-9;
    std::int64_t max_rounds = 0;
    int jobs = 1;
    std::string out, config;
    bool show = false;
  } si;
  simulate->add_option("--n", si.n, "signal length (rounded down to a valid size)");
  simulate->add_option("--dv", si.dv, "variable-node degree");
  simulate->add_option("--dc", si.dc, "check-node degree");
  simulate->add_option("--alg", si.alg, "algorithm: genie|lm|sbb|xh");
  simulate->add_option("--alpha-grid", si.alpha_grid, "start:end:step or comma list");
  simulate->add_option("--trials", si.trials, "trials per grid point");
  simulate->add_option("--seed", si.seed, "master seed");
  simulate->add_option("--graph-mode", si.graph_mode, "fixed|fresh graph per sweep/trial");
  simulate->add_option("--value-model", si.value_model, "exact|gaussian signal values");
  simulate->add_option("--equality", si.equality, "exact|tolerant residual comparison");
  simulate->add_option("--abs-tol", si.abs_tol, "tolerant equality: absolute tolerance");
  simulate->add_option("--rel-tol", si.rel_tol, "tolerant equality: relative tolerance");
  simulate->add_option("--max-rounds", si.max_rounds, "decoder round budget (0 = auto)");
  simulate->add_option("--jobs", si.jobs, "worker threads");
  simulate->add_option("--out", si.out, "output directory (default: $NBVB_OUT or .)");
  simulate->add_option("--config", si.config, "JSON config file (flags override it)");
  simulate->add_flag("--show-config", si.show, "print resolved parameters and exit");

  // ---- compare ----
  auto* compare = app.add_subcommand("compare", "asymptotic vs simulated trace");
  struct {
    std::int64_t n = 100000;
    int dv = 5, dc = 6;
    std::string alg = "sbb";
    double alpha0 = -1.0;  // sentinel: offset mode when unset
    double offset = -0.02;
    double tol = 1e-4;
    std::int64_t trials = 10;
    std::uint64_t seed = 1;
    std::string value_model = "exact";
    std::string equality;
    double abs_tol = 1e-9, rel_tol = 1e-9;
    std::size_t prefix = 5;
    double success_eps = 1e-7, progress_eps = 1e-10;
    std::int64_t patience = 50, max_iter = 1000000;
    std::int64_t max_rounds = 0;
    int jobs = 1;
    std::string out, config;
    bool show = false;
  } co;
  compare->add_option("--n", co.n, "signal length (rounded down to a valid size)");
  compare->add_option("--dv", co.dv, "variable-node degree");
  compare->add_option("--dc", co.dc, "check-node degree");
  compare->add_option("--alg", co.alg, "algorithm: genie|lm|sbb|xh");
  compare->add_option("--alpha0", co.alpha0, "initial density factor (overrides --offset)");
  compare->add_option("--offset", co.offset, "alpha0 = computed threshold + offset");
  compare->add_option("--tol", co.tol, "bisection tolerance for --offset");
  compare->add_option("--trials", co.trials, "simulated trials");
  compare->add_option("--seed", co.seed, "master seed");
  compare->add_option("--value-model", co.value_model, "exact|gaussian signal values");
  compare->add_option("--equality", co.equality, "exact|tolerant residual comparison");
  compare->add_option("--abs-tol", co.abs_tol, "tolerant equality: absolute tolerance");
  compare->add_option("--rel-tol", co.rel_tol, "tolerant equality: relative tolerance");
  compare->add_option("--prefix", co.prefix, "rounds compared for the gap statistic");
  compare->add_option("--stop.success-eps", co.success_eps, "success when alpha drops below");
  compare->add_option("--stop.progress-eps", co.progress_eps, "relative progress floor");
  compare->add_option("--stop.patience", co.patience, "stall patience (steps)");
  compare->add_option("--stop.max-iter", co.max_iter, "iteration budget");
  compare->add_option("--max-rounds", co.max_rounds, "decoder round budget (0 = auto)");
  compare->add_option("--jobs", co.jobs, "worker threads");
  compare->add_option("--out", co.out, "output directory (default: $NBVB_OUT or .)");
  compare->add_option("--config", co.config, "JSON config file (flags override it)");
  compare->add_flag("--show-config", co.show, "print resolved parameters and exit");

  // ---- rerun ----
  auto* rerun = app.add_subcommand("rerun", "replay a run from its manifest");
  struct {
    std::string manifest;
    std::string out;
  } re;
  rerun->add_option("manifest", re.manifest, "path to manifest.json")->required();
  rerun->add_option("--out", re.out, "output directory (default: $NBVB_OUT or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze) {
      const ParamResolver r(analyze, an.config);
      json p;
      p["dv"] = r.pick("--dv", "dv", an.dv);
      p["dc"] = r.pick("--dc", "dc", an.dc);
      p["alg"] = r.pick("--alg", "alg", an.alg);
      p["alpha0"] = r.pick("--alpha0", "alpha0", an.alpha0);
      p["success_eps"] = r.pick("--stop.success-eps", "success_eps", an.success_eps);
      p["progress_eps"] = r.pick("--stop.progress-eps", "progress_eps", an.progress_eps);
      p["patience"] = r.pick("--stop.patience", "patience", an.patience);
      p["max_iter"] = r.pick("--stop.max-iter", "max_iter", an.max_iter);
      if (an.show) {
        std::cout << p.dump(2) << '\n';
        return 0;
      }
      return exec_analyze(p, resolve_out_dir(r.pick("--out", "out", an.out)));
    }

    if (*threshold) {
      const ParamResolver r(threshold, th.config);
      json p;
      const std::string grid = r.pick("--grid", "grid", th.grid);
      if (!grid.empty() && grid != "table1")
        throw UsageError("unknown grid '" + grid + "' (expected table1)");
      p["grid"] = grid.empty() ? "cell" : grid;
      p["dv"] = r.pick("--dv", "dv", th.dv);
      p["dc"] = r.pick("--dc", "dc", th.dc);
      p["alg"] = r.pick("--alg", "alg", th.alg);
      p["tol"] = r.pick("--tol", "tol", th.tol);
      p["success_eps"] = r.pick("--stop.success-eps", "success_eps", th.success_eps);
      p["progress_eps"] = r.pick("--stop.progress-eps", "progress_eps", th.progress_eps);
      p["patience"] = r.pick("--stop.patience", "patience", th.patience);
      p["max_iter"] = r.pick("--stop.max-iter", "max_iter", th.max_iter);
      if (th.show) {
        std::cout << p.dump(2) << '\n';
        return 0;
      }
      return exec_threshold(p, resolve_out_dir(r.pick("--out", "out", th.out)));
    }

    if (*simulate) {
      const ParamResolver r(simulate, si.config);
      json p;
      const int dv = r.pick("--dv", "dv", si.dv);
      const int dc = r.pick("--dc", "dc", si.dc);
      p["dv"] = dv;
      p["dc"] = dc;
      p["n"] = resolve_n(r.pick("--n", "n", si.n), dv, dc);
      p["alg"] = r.pick("--alg", "alg", si.alg);
      p["alpha_grid"] = parse_alpha_grid(r.pick("--alpha-grid", "alpha_grid", si.alpha_grid));
      p["trials"] = r.pick("--trials", "trials", si.trials);
      p["seed"] = r.pick("--seed", "seed", si.seed);
      p["graph_mode"] = r.pick("--graph-mode", "graph_mode", si.graph_mode);
      const std::string vm = r.pick("--value-model", "value_model", si.value_model);
      p["value_model"] = vm;
      std::string eq = r.pick("--equality", "equality", si.equality);
      if (eq.empty()) eq = (vm == "gaussian") ? "tolerant" : "exact";
      p["equality"] = eq;
      p["abs_tol"] = r.pick("--abs-tol", "abs_tol", si.abs_tol);
      p["rel_tol"] = r.pick("--rel-tol", "rel_tol", si.rel_tol);
      p["max_rounds"] = r.pick("--max-rounds", "max_rounds", si.max_rounds);
      p["jobs"] = r.pick("--jobs", "jobs", si.jobs);
      if (si.show) {
        std::cout << p.dump(2) << '\n';
        return 0;
      }
      return exec_simulate(p, resolve_out_dir(r.pick("--out", "out", si.out)));
    }

    if (*compare) {
      const ParamResolver r(compare, co.config);
      json p;
      const int dv = r.pick("--dv", "dv", co.dv);
      const int dc = r.pick("--dc", "dc", co.dc);
      p["dv"] = dv;
      p["dc"] = dc;
      p["n"] = resolve_n(r.pick("--n", "n", co.n), dv, dc);
      const std::string alg = r.pick("--alg", "alg", co.alg);
      p["alg"] = alg;
      p["tol"] = r.pick("--tol", "tol", co.tol);
      p["trials"] = r.pick("--trials", "trials", co.trials);
      p["seed"] = r.pick("--seed", "seed", co.seed);
      const std::string vm = r.pick("--value-model", "value_model", co.value_model);
      p["value_model"] = vm;
      std::string eq = r.pick("--equality", "equality", co.equality);
      if (eq.empty()) eq = (vm == "gaussian") ? "tolerant" : "exact";
      p["equality"] = eq;
      p["abs_tol"] = r.pick("--abs-tol", "abs_tol", co.abs_tol);
      p["rel_tol"] = r.pick("--rel-tol", "rel_tol", co.rel_tol);
      p["prefix"] = r.pick("--prefix", "prefix", co.prefix);
      p["success_eps"] = r.pick("--stop.success-eps", "success_eps", co.success_eps);
      p["progress_eps"] = r.pick("--stop.progress-eps", "progress_eps", co.progress_eps);
      p["patience"] = r.pick("--stop.patience", "patience", co.patience);
      p["max_iter"] = r.pick("--stop.max-iter", "max_iter", co.max_iter);
      p["max_rounds"] = r.pick("--max-rounds", "max_rounds", co.max_rounds);
      p["jobs"] = r.pick("--jobs", "jobs", co.jobs);

      // resolve alpha0 now so the manifest pins the exact probe value
      if (r.has("--alpha0", "alpha0")) {
        p["alpha0"] = r.pick("--alpha0", "alpha0", co.alpha0);
        p["offset"] = nullptr;
        p["threshold_used"] = nullptr;
      } else {
        const double offset = r.pick("--offset", "offset", co.offset);
        const DeParams cell{dv, dc, parse_algorithm(alg)};
        const ThresholdReport rep =
            find_threshold(cell, stop_rule_from_params(p), p.at("tol").get<double>());
        const double a = std::min(std::max(rep.threshold + offset, 0.0), 1.0);
        p["alpha0"] = a;
        p["offset"] = offset;
        p["threshold_used"] = rep.threshold;
      }
      if (co.show) {
        std::cout << p.dump(2) << '\n';
        return 0;
      }
      return exec_compare(p, resolve_out_dir(r.pick("--out", "out", co.out)));
    }

    if (*rerun) {
      const RunManifest m = RunManifest::load(re.manifest);
      const json params = json::parse(m.params_json);
      return exec_command(m.command, params, resolve_out_dir(re.out));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }

  std::cerr << "error: a subcommand is required (see --help)\n";
  return kExitUsage;
}
