// Locale-independent CSV writers for every table the tools emit. Numbers go
// through std::to_chars (shortest round-trip form), so files are bytewise
// reproducible across runs and locales.
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "nbvb/de.hpp"
#include "nbvb/decoders.hpp"
#include "nbvb/montecarlo.hpp"
#include "nbvb/threshold.hpp"

namespace nbvb {

// shortest round-trip decimal form; "nan"/"inf" spelled out
std::string format_double(double x);
std::string format_int(std::int64_t x);

// ell,alpha,p_r,A,B,pN_0..pN_dc,pX_0..pX_dv   (init rows: empty p_r,A,B)
void write_de_trace_csv(std::ostream& os, const DeTraceResult& t, const DeParams& p);

// d_v,d_c,algorithm,threshold,lo,hi,r_o,probes  (failed cells: empty numerics)
void write_threshold_csv(std::ostream& os, const std::vector<TableCell>& cells);
// aligned human-readable table of the same cells
void write_threshold_text(std::ostream& os, const std::vector<TableCell>& cells);

// alpha0,success_rate,trials,mean_iterations,anomalies
void write_sweep_csv(std::ostream& os, const SuccessCurve& curve);
// gnuplot-friendly: "alpha0 success_rate" pairs, '#' comment header
void write_sweep_dat(std::ostream& os, const SuccessCurve& curve);

// ell,alpha_de,alpha_sim_mean,alpha_sim_min,alpha_sim_max
void write_compare_csv(std::ostream& os, const TraceComparison& cmp);

// round,unverified_total,unverified_support,verifications_this_round
void write_round_trace_csv(std::ostream& os, const DecodeResult& r);

// index,value  (integer or real depending on the instance's value model)
void write_signal_csv(std::ostream& os, const SignalInstance& s);

}  // namespace nbvb
