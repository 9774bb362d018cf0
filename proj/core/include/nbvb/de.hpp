// Density evolution: the asymptotic recursion tracking the unverified-mass
// probability alpha together with the check-degree distribution pN and the
// variable-class distribution pX, including the LM pre-phase.
#pragma once

#include <cstdint>
#include <vector>

#include "nbvb/algorithm.hpp"

namespace nbvb {

struct DeParams {
  int d_v = 0;
  int d_c = 0;
  Algorithm alg = Algorithm::genie;

  int beta() const { return beta_of(alg, d_v); }
  void validate() const;  // throws std::invalid_argument
};

struct DeState {
  std::int64_t ell = 0;
  double alpha = 0.0;      // unverified-mass probability tracked by the recursion
  std::vector<double> pN;  // length d_c+1: check-degree distribution
  std::vector<double> pX;  // length d_v+1: variable classes by degree-1 neighbors
  // Constant fraction of alpha that is true support. 1 everywhere except
  // after the LM pre-phase, where alpha also counts zero-valued variables
  // that are indistinguishable from support; both subpopulations thin at the
  // same rate afterwards, so the share never changes again.
  double support_share = 1.0;

  double support_alpha() const { return alpha * support_share; }
};

// Per-step conditional probabilities, reported before clamping so tests can
// bound the floating-point drift.
struct DeStepBreakdown {
  double p = 0.0;         // Pr[edge from unverified variable lands in a degree-1 check]
  double p_r = 0.0;       // Pr[variable verified this iteration]
  double p_N10 = 0.0;     // degree-1 check removal probability
  double pN1_plus = 0.0;  // mass arriving into degree 1 from above
  double A = 0.0;         // edge-removal probability for degree>1 checks
  double B = 0.0;         // free-edge capture probability
};

// Detail quantities of the LM pre-phase (zero-check removal plus the first
// verification round over the potential support).
struct LmPrephaseBreakdown {
  double p_delta = 0.0;    // Pr[an edge from a zero-valued variable sees a nonzero check]
  double p_K_delta = 0.0;  // Pr[zero-valued variable joins the potential support]
  double p_prime = 0.0;    // Pr[a free check slot is taken by a potential-support variable]
  double p0 = 0.0;         // Pr[edge from true support lands in a degree-1 check]
  double p_r = 0.0;        // first-round verification probability over true support
  double p_f = 0.0;        // Pr[an occupied slot of a surviving check frees up]
};

// Initial state: pN = Binomial(d_c, alpha0), pX = Binomial(d_v, p0) with
// p0 = pN[1]/(alpha0*d_c). alpha0 = 0 yields the absorbing resolved state.
// For LM this dispatches to lm_prephase and returns the ell = 1 state.
DeState de_init(double alpha0, const DeParams& params);

// LM pre-phase: builds the potential support (true support plus zero-valued
// variables with no zero check neighbor), the primed check distribution, and
// the state after the first verification round. Optional out-params expose
// the intermediate quantities and the unprimed ell = 0 view.
DeState lm_prephase(double alpha0, const DeParams& params,
                    LmPrephaseBreakdown* breakdown = nullptr,
                    DeState* ell0_view = nullptr);

// One synchronous iteration. Throws std::logic_error if the state drifts
// beyond the 1e-9 internal-consistency budget.
DeState de_step(const DeState& state, const DeParams& params,
                DeStepBreakdown* breakdown = nullptr);

enum class Verdict { success, stall, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::success: return "success";
    case Verdict::stall: return "stall";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct StopRule {
  double success_eps = 1e-7;    // success: alpha below this
  double progress_eps = 1e-10;  // stall: relative per-step decrease below this...
  std::int64_t patience = 50;   // ...for this many consecutive steps
  std::int64_t max_iter = 1000000;

  void validate() const;  // throws std::invalid_argument
};

struct DeTraceRow {
  std::int64_t ell = 0;
  double alpha = 0.0;
  double support_alpha = 0.0;
  // Breakdown of the step that produced this row; NaN on init/pre-phase rows.
  double p_r = 0.0, A = 0.0, B = 0.0;
  std::vector<double> pN, pX;
};

struct DeTraceResult {
  Verdict verdict = Verdict::inconclusive;
  std::vector<DeTraceRow> rows;   // rows[i].ell == i when kept
  std::int64_t iterations = 0;    // final ell
  double final_alpha = 0.0;
};

// Iterates de_step until success (alpha < success_eps), stall (relative
// progress below progress_eps for patience consecutive steps) or max_iter
// (reported as inconclusive). keep_rows = false skips row storage for
// threshold searches.
DeTraceResult de_trace(double alpha0, const DeParams& params, const StopRule& stop,
                       bool keep_rows = true);

struct DeVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::int64_t iterations = 0;
  double final_alpha = 0.0;
};

DeVerdict de_verdict(double alpha0, const DeParams& params, const StopRule& stop);

}  // namespace nbvb
