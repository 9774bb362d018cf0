#include "nbvb/threshold.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbvb {

namespace {

Probe probe_at(double alpha0, const DeParams& params, const StopRule& stop) {
  const DeVerdict v = de_verdict(alpha0, params, stop);
  if (v.verdict == Verdict::inconclusive)
    throw std::runtime_error("find_threshold: probe exhausted max_iter without a verdict");
  return {alpha0, v.verdict, v.iterations};
}

}  // namespace

ThresholdReport find_threshold(const DeParams& params, const StopRule& stop, double tol) {
  params.validate();
  stop.validate();
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("find_threshold: bad tol");

  ThresholdReport out;
  out.params = params;
  out.lo = 0.0;  // alpha0 = 0 is the empty signal: success by definition
  out.hi = 1.0;

  const Probe top = probe_at(1.0, params, stop);
  out.probes.push_back(top);
  if (top.verdict == Verdict::success) {
    out.lo = 1.0;
    out.hi = 1.0;
    out.threshold = 1.0;
    out.oversampling_ratio =
        static_cast<double>(params.d_v) / (out.threshold * params.d_c);
    return out;
  }

  while (out.hi - out.lo > tol) {
    const double mid = 0.5 * (out.lo + out.hi);
    const Probe pr = probe_at(mid, params, stop);
    out.probes.push_back(pr);
    if (pr.verdict == Verdict::success) {
      out.lo = mid;
    } else {
      out.hi = mid;
    }
  }
  out.threshold = 0.5 * (out.lo + out.hi);
  out.oversampling_ratio = static_cast<double>(params.d_v) / (out.threshold * params.d_c);
  return out;
}

std::vector<TableCell> threshold_table(const std::vector<DeParams>& grid,
                                       const StopRule& stop, double tol) {
  std::vector<TableCell> out;
  out.reserve(grid.size());
  for (const DeParams& p : grid) {
    TableCell cell;
    cell.params = p;
    try {
      cell.report = find_threshold(p, stop, tol);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
    }
    out.push_back(std::move(cell));
  }
  return out;
}

std::vector<DeParams> table1_grid() {
  static const int dims[][2] = {{3, 4}, {5, 6}, {5, 7}, {5, 8}, {7, 8}};
  std::vector<DeParams> grid;
  for (const Algorithm alg :
       {Algorithm::genie, Algorithm::lm, Algorithm::sbb, Algorithm::xh}) {
    for (const auto& d : dims) {
      grid.push_back({d[0], d[1], alg});
    }
  }
  return grid;
}

std::optional<double> reference_threshold(Algorithm alg, int d_v, int d_c) {
  struct Row {
    Algorithm alg;
    int d_v, d_c;
    double thr;
  };
  static const Row rows[] = {
      {Algorithm::genie, 3, 4, 0.6474}, {Algorithm::genie, 5, 6, 0.5509},
      {Algorithm::genie, 5, 7, 0.4786}, {Algorithm::genie, 5, 8, 0.4224},
      {Algorithm::genie, 7, 8, 0.4708}, {Algorithm::lm, 3, 4, 0.2993},
      {Algorithm::lm, 5, 6, 0.2541},    {Algorithm::lm, 5, 7, 0.2011},
      {Algorithm::lm, 5, 8, 0.1646},    {Algorithm::lm, 7, 8, 0.2127},
      {Algorithm::sbb, 5, 6, 0.3271},   {Algorithm::sbb, 5, 7, 0.2783},
      {Algorithm::sbb, 5, 8, 0.2421},   {Algorithm::sbb, 7, 8, 0.3057},
      {Algorithm::xh, 5, 6, 0.1846},    {Algorithm::xh, 5, 7, 0.1552},
      {Algorithm::xh, 5, 8, 0.1339},    {Algorithm::xh, 7, 8, 0.1435},
  };
  for (const Row& r : rows) {
    if (r.alg == alg && r.d_v == d_v && r.d_c == d_c) return r.thr;
  }
  return std::nullopt;
}

MonotonicityAudit audit_verdict_monotonicity(const DeParams& params, const StopRule& stop,
                                             double step) {
  if (!(step > 0.0 && step < 1.0))
    throw std::invalid_argument("audit: step outside (0,1)");
  MonotonicityAudit out;
  bool seen_failure = false;
  for (double a = step; a < 1.0 + step / 2; a += step) {
    const double alpha0 = std::min(a, 1.0);
    const DeVerdict v = de_verdict(alpha0, params, stop);
    out.probes.push_back({alpha0, v.verdict, v.iterations});
    if (v.verdict != Verdict::success) {
      seen_failure = true;
    } else if (seen_failure) {
      out.monotone = false;
    }
  }
  return out;
}

}  // namespace nbvb
