#include "nbvb/csv.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace nbvb {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const std::to_chars_result r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

std::string format_int(std::int64_t x) {
  char buf[32];
  const std::to_chars_result r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

void write_de_trace_csv(std::ostream& os, const DeTraceResult& t, const DeParams& p) {
  os << "ell,alpha,p_r,A,B";
  for (int i = 0; i <= p.d_c; ++i) os << ",pN_" << i;
  for (int i = 0; i <= p.d_v; ++i) os << ",pX_" << i;
  os << '\n';
  for (const DeTraceRow& row : t.rows) {
    os << format_int(row.ell) << ',' << format_double(row.alpha);
    // init rows have no generating step: empty fields
    if (std::isnan(row.p_r)) {
      os << ",,,";
    } else {
      os << ',' << format_double(row.p_r) << ',' << format_double(row.A) << ','
         << format_double(row.B);
    }
    for (const double v : row.pN) os << ',' << format_double(v);
    for (const double v : row.pX) os << ',' << format_double(v);
    os << '\n';
  }
}

void write_threshold_csv(std::ostream& os, const std::vector<TableCell>& cells) {
  os << "d_v,d_c,algorithm,threshold,lo,hi,r_o,probes\n";
  for (const TableCell& c : cells) {
    os << c.params.d_v << ',' << c.params.d_c << ',' << to_string(c.params.alg) << ',';
    if (c.ok) {
      os << format_double(c.report.threshold) << ',' << format_double(c.report.lo) << ','
         << format_double(c.report.hi) << ',' << format_double(c.report.oversampling_ratio)
         << ',' << c.report.probes.size();
    } else {
      os << ",,,," << 0;
    }
    os << '\n';
  }
}

void write_threshold_text(std::ostream& os, const std::vector<TableCell>& cells) {
  os << std::left << std::setw(10) << "algorithm" << std::setw(6) << "d_v" << std::setw(6)
     << "d_c" << std::setw(12) << "threshold" << std::setw(12) << "r_o"
     << "status\n";
  for (const TableCell& c : cells) {
    os << std::left << std::setw(10) << to_string(c.params.alg) << std::setw(6)
       << c.params.d_v << std::setw(6) << c.params.d_c;
    if (c.ok) {
      std::ostringstream thr, ro;
      thr << std::fixed << std::setprecision(4) << c.report.threshold;
      ro << std::fixed << std::setprecision(2) << c.report.oversampling_ratio;
      os << std::setw(12) << thr.str() << std::setw(12) << ro.str() << "ok";
    } else {
      os << std::setw(12) << "-" << std::setw(12) << "-" << "failed: " << c.error;
    }
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SuccessCurve& curve) {
  os << "alpha0,success_rate,trials,mean_iterations,anomalies\n";
  for (const SweepPoint& p : curve.points) {
    os << format_double(p.alpha0) << ',' << format_double(p.success_rate) << ','
       << format_int(p.trials) << ',' << format_double(p.mean_iterations) << ','
       << format_int(p.anomalies) << '\n';
  }
}

void write_sweep_dat(std::ostream& os, const SuccessCurve& curve) {
  os << "# " << to_string(curve.config.alg) << " d_v=" << curve.config.graph.d_v
     << " d_c=" << curve.config.graph.d_c << " n=" << curve.config.graph.n
     << " trials=" << curve.config.trials_per_point << '\n';
  os << "# alpha0 success_rate\n";
  for (const SweepPoint& p : curve.points) {
    os << format_double(p.alpha0) << ' ' << format_double(p.success_rate) << '\n';
  }
}

void write_compare_csv(std::ostream& os, const TraceComparison& cmp) {
  os << "ell,alpha_de,alpha_sim_mean,alpha_sim_min,alpha_sim_max\n";
  for (std::size_t i = 0; i < cmp.rows; ++i) {
    os << i << ',' << format_double(cmp.de_alpha[i]) << ',' << format_double(cmp.sim_mean[i])
       << ',' << format_double(cmp.sim_min[i]) << ',' << format_double(cmp.sim_max[i])
       << '\n';
  }
}

void write_round_trace_csv(std::ostream& os, const DecodeResult& r) {
  os << "round,unverified_total,unverified_support,verifications_this_round\n";
  for (const RoundStat& s : r.rounds) {
    os << format_int(s.round) << ',' << format_int(s.unverified_total) << ','
       << format_int(s.unverified_support) << ',' << format_int(s.verifications) << '\n';
  }
}

void write_signal_csv(std::ostream& os, const SignalInstance& s) {
  os << "index,value\n";
  if (s.model == ValueModel::uniform_integer_exact) {
    for (std::int64_t i = 0; i < s.n; ++i) {
      os << format_int(i) << ',' << format_int(s.ivals[static_cast<std::size_t>(i)]) << '\n';
    }
  } else {
    for (std::int64_t i = 0; i < s.n; ++i) {
      os << format_int(i) << ',' << format_double(s.rvals[static_cast<std::size_t>(i)])
         << '\n';
    }
  }
}

}  // namespace nbvb
