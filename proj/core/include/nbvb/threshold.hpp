// Success-threshold location by bisection over the initial density factor,
// plus the standard benchmark grid and its published reference values.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nbvb/de.hpp"

namespace nbvb {

struct Probe {
  double alpha0 = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::int64_t iterations = 0;
};

struct ThresholdReport {
  DeParams params;
  double lo = 0.0;         // highest probe that succeeded
  double hi = 1.0;         // lowest probe that did not
  double threshold = 0.0;  // (lo+hi)/2
  double oversampling_ratio = 0.0;  // d_v / (threshold * d_c)
  std::vector<Probe> probes;
};

// Bisection on [0,1] down to width tol (default 1e-4). The bracket starts
// from an explicit probe at 1; alpha0 = 0 succeeds by definition. A probe
// returning inconclusive (max_iter exhausted) aborts with std::runtime_error
// rather than silently bracketing.
ThresholdReport find_threshold(const DeParams& params, const StopRule& stop,
                               double tol = 1e-4);

struct TableCell {
  DeParams params;
  bool ok = false;
  ThresholdReport report;  // valid when ok
  std::string error;       // set when !ok
};

// One report per cell; per-cell failures are captured, not propagated.
std::vector<TableCell> threshold_table(const std::vector<DeParams>& grid,
                                       const StopRule& stop, double tol = 1e-4);

// The standard benchmark grid: all four algorithms on (3,4), (5,6), (5,7),
// (5,8) and (7,8) — 20 cells, 18 of which have published reference values.
std::vector<DeParams> table1_grid();

// Published reference threshold for a cell of the standard grid, if any.
// The (3,4) SBB and XH cells have no published value.
std::optional<double> reference_threshold(Algorithm alg, int d_v, int d_c);

// Uniform-probe audit of the monotone-verdict assumption behind bisection:
// scans alpha0 = step, 2*step, ... and reports whether the verdict sequence
// is success... then non-success with a single crossing.
struct MonotonicityAudit {
  bool monotone = true;
  std::vector<Probe> probes;
};
MonotonicityAudit audit_verdict_monotonicity(const DeParams& params, const StopRule& stop,
                                             double step);

}  // namespace nbvb
