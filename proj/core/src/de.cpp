#include "nbvb/de.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nbvb/math.hpp"

namespace nbvb {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double clamp01(double x) { return std::min(std::max(x, 0.0), 1.0); }

// The absorbing fully-resolved state: no unverified mass, all checks and
// variables in class 0.
DeState absorbing_state(const DeParams& p, std::int64_t ell) {
  DeState s;
  s.ell = ell;
  s.alpha = 0.0;
  s.pN.assign(static_cast<std::size_t>(p.d_c) + 1, 0.0);
  s.pX.assign(static_cast<std::size_t>(p.d_v) + 1, 0.0);
  s.pN[0] = 1.0;
  s.pX[0] = 1.0;
  return s;
}

void check_state(const DeState& s, const DeParams& p) {
  if (s.pN.size() != static_cast<std::size_t>(p.d_c) + 1 ||
      s.pX.size() != static_cast<std::size_t>(p.d_v) + 1)
    throw std::invalid_argument("de_step: state/parameter size mismatch");
  if (!(s.alpha >= 0.0 && s.alpha <= 1.0))
    throw std::logic_error("de_step: alpha outside [0,1]");
  double sn = 0.0, sx = 0.0;
  for (const double v : s.pN) sn += v;
  for (const double v : s.pX) sx += v;
  if (std::fabs(sn - 1.0) > 1e-9 || std::fabs(sx - 1.0) > 1e-9)
    throw std::logic_error("de_step: state distributions drifted from normalization");
}

}  // namespace

void DeParams::validate() const {
  if (d_v < 1 || d_v > 64) throw std::invalid_argument("de: d_v outside [1,64]");
  if (d_c < 1 || d_c > 64) throw std::invalid_argument("de: d_c outside [1,64]");
}

void StopRule::validate() const {
  if (!(success_eps > 0.0)) throw std::invalid_argument("stop rule: success_eps must be > 0");
  if (!(progress_eps >= 0.0))
    throw std::invalid_argument("stop rule: progress_eps must be >= 0");
  if (patience < 1) throw std::invalid_argument("stop rule: patience must be >= 1");
  if (max_iter < 1) throw std::invalid_argument("stop rule: max_iter must be >= 1");
}

DeState de_init(double alpha0, const DeParams& params) {
  params.validate();
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("de_init: alpha0 outside [0,1]");
  if (alpha0 == 0.0) return absorbing_state(params, 0);
  if (params.alg == Algorithm::lm) return lm_prephase(alpha0, params);

  DeState s;
  s.ell = 0;
  s.alpha = alpha0;
  s.pN = binom_pmf(params.d_c, alpha0);
  const double p0 = s.pN[1] / (alpha0 * params.d_c);
  s.pX = binom_pmf(params.d_v, clamp01(p0));
  return s;
}

DeState lm_prephase(double alpha0, const DeParams& params, LmPrephaseBreakdown* breakdown,
                    DeState* ell0_view) {
  params.validate();
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("lm_prephase: alpha0 outside [0,1]");
  const int dv = params.d_v;
  const int dc = params.d_c;
  const double a0 = alpha0;

  const std::vector<double> pN = binom_pmf(dc, a0);
  // A zero-valued variable survives into the potential support only if all
  // its checks are nonzero; an edge sees a nonzero check through its other
  // d_c - 1 slots.
  const double p_delta = 1.0 - ipow(1.0 - a0, dc - 1);
  const double p_K_delta = ipow(p_delta, dv);
  const double p_prime = ipow(p_delta, dv - 1);

  // Check degrees over the potential support: each of the d_c - i zero
  // slots of a degree-i check is re-occupied independently w.p. p'.
  std::vector<std::vector<double>> T(static_cast<std::size_t>(dc) + 1,
                                     std::vector<double>(static_cast<std::size_t>(dc) + 1, 0.0));
  std::vector<double> pNp(static_cast<std::size_t>(dc) + 1, 0.0);
  pNp[0] = pN[0];
  for (int i = 1; i <= dc; ++i) {
    for (int j = i; j <= dc; ++j) {
      T[i][j] = binom(dc - i, j - i) * ipow(p_prime, j - i) * ipow(1.0 - p_prime, dc - j);
      pNp[static_cast<std::size_t>(j)] += pN[static_cast<std::size_t>(i)] * T[i][j];
    }
  }

  const double p0 = a0 > 0.0 ? pNp[1] / (a0 * dc) : 0.0;
  const std::vector<double> pX = binom_pmf(dv, clamp01(p0));  // true-support classes
  const double p_r_K = 1.0 - pX[0];
  // p_f is a probability; when p0 is below the rounding granularity of
  // 1 - pX[0] the subtraction can come out at -1e-18, so clamp before use.
  const double p_f_raw = p0 < 1.0 ? (p_r_K - p0) / (1.0 - p0) : 0.0;
  const double p_f = clamp01(p_f_raw);

  // First-round update of the primed check distribution: degree j drops to q
  // when j - q occupied slots free up; only checks that had no degree-1 slot
  // at round start (handled via the true-support class split below) keep
  // their unverified neighbors, the rest is the q >= 1 bookkeeping.
  std::vector<double> pNp1(static_cast<std::size_t>(dc) + 1, 0.0);
  for (int q = 1; q <= dc; ++q) {
    double sum = 0.0;
    for (int j = std::max(2, q); j <= dc; ++j) {
      for (int i = std::max(1, j - q); i <= j; ++i) {
        sum += pN[static_cast<std::size_t>(i)] * T[i][j] * binom(i, j - q) *
               ipow(p_f, j - q) * ipow(1.0 - p_f, i - j + q);
      }
    }
    pNp1[static_cast<std::size_t>(q)] = sum;
  }
  double tail = 0.0;
  for (int q = 1; q <= dc; ++q) tail += pNp1[static_cast<std::size_t>(q)];
  pNp1[0] = std::max(0.0, 1.0 - tail);

  // Unverified mass after the pre-phase: surviving true support plus
  // zero-valued potential-support members; both thin identically afterwards.
  const double alpha1 = a0 * pX[0] + (1.0 - a0) * p_K_delta;
  const double supp1 = a0 * pX[0];

  double denomB = pNp1[1];
  for (int i = 2; i <= dc; ++i) denomB += i * pNp1[static_cast<std::size_t>(i)];
  const double B = denomB > 0.0 ? pNp1[1] / denomB : 0.0;
  const std::vector<double> pX1 = binom_pmf(dv, clamp01(B));

  if (breakdown) {
    breakdown->p_delta = p_delta;
    breakdown->p_K_delta = p_K_delta;
    breakdown->p_prime = p_prime;
    breakdown->p0 = p0;
    breakdown->p_r = p_r_K;
    breakdown->p_f = p_f_raw;
  }
  if (ell0_view) {
    ell0_view->ell = 0;
    ell0_view->alpha = a0;
    ell0_view->pN = pN;
    ell0_view->pX = pX;
    ell0_view->support_share = 1.0;
  }

  if (alpha1 <= 0.0) return absorbing_state(params, 1);
  DeState out;
  out.ell = 1;
  out.alpha = clamp01(alpha1);
  out.pN = pNp1;
  out.pX = pX1;
  out.support_share = clamp01(supp1 / alpha1);
  return out;
}

DeState de_step(const DeState& state, const DeParams& params, DeStepBreakdown* breakdown) {
  params.validate();
  check_state(state, params);
  const int dv = params.d_v;
  const int dc = params.d_c;
  const int beta = params.beta();
  const double alpha = state.alpha;
  const std::vector<double>& pN = state.pN;
  const std::vector<double>& pX = state.pX;

  double p_r = 0.0;
  for (int i = beta; i <= dv; ++i) p_r += pX[static_cast<std::size_t>(i)];
  double S1 = 0.0;
  for (int i = beta; i <= dv; ++i) S1 += i * pX[static_cast<std::size_t>(i)];

  const double alpha_new = clamp01(alpha * (1.0 - p_r));

  const double p = alpha > 0.0 ? pN[1] / (alpha * dc) : 0.0;
  double pN10 = pN[1] > 0.0 ? (alpha * dc * S1) / (dv * pN[1]) : 0.0;
  const double denomA = dv * (1.0 - p);
  double A = denomA > 0.0 ? (dv * p_r - S1) / denomA : 0.0;
  if (breakdown) {
    breakdown->p = p;
    breakdown->p_r = p_r;
    breakdown->p_N10 = pN10;
    breakdown->A = A;
  }
  A = clamp01(A);
  pN10 = clamp01(pN10);

  // check-degree update: degree-1 checks leave with probability pN10, higher
  // degrees thin binomially with per-edge removal probability A
  std::vector<double> pN_new(static_cast<std::size_t>(dc) + 1, 0.0);
  pN_new[0] += pN[0];
  pN_new[0] += pN[1] * pN10;
  pN_new[1] += pN[1] * (1.0 - pN10);
  for (int i = 2; i <= dc; ++i) {
    for (int j = 0; j <= i; ++j) {
      pN_new[static_cast<std::size_t>(j)] += pN[static_cast<std::size_t>(i)] *
                                             binom(i, i - j) * ipow(A, i - j) *
                                             ipow(1.0 - A, j);
    }
  }

  double pN1_plus = 0.0;
  for (int j = 2; j <= dc; ++j) {
    pN1_plus += pN[static_cast<std::size_t>(j)] * binom(j, j - 1) * ipow(A, j - 1) * (1.0 - A);
  }
  double denomB = pN1_plus;
  for (int i = 2; i <= dc; ++i) denomB += i * pN_new[static_cast<std::size_t>(i)];
  const double B = denomB > 0.0 ? pN1_plus / denomB : 0.0;
  if (breakdown) {
    breakdown->pN1_plus = pN1_plus;
    breakdown->B = B;
  }

  // variable-class update over the survivors. The class masses are divided
  // by the surviving fraction; using their own computed total keeps the
  // distribution exactly normalized even when p_r is within rounding error
  // of 1, where dividing by the analytic 1 - p_r loses all precision.
  std::vector<double> pX_new(static_cast<std::size_t>(dv) + 1, 0.0);
  double total = 0.0;
  const double Bc = clamp01(B);
  for (int j = 0; j <= dv; ++j) {
    double s = 0.0;
    const int top = std::min(j, beta - 1);
    for (int i = 0; i <= top; ++i) {
      s += pX[static_cast<std::size_t>(i)] * binom(dv - i, j - i) * ipow(Bc, j - i) *
           ipow(1.0 - Bc, dv - j);
    }
    pX_new[static_cast<std::size_t>(j)] = s;
    total += s;
  }

  DeState out;
  out.ell = state.ell + 1;
  out.support_share = state.support_share;
  out.pN = std::move(pN_new);
  if (total > 0.0) {
    out.alpha = alpha_new;
    for (double& v : pX_new) v /= total;
    out.pX = std::move(pX_new);
  } else {
    // everything verified this round: absorbing resolved state
    out.alpha = 0.0;
    out.pX.assign(static_cast<std::size_t>(dv) + 1, 0.0);
    out.pX[0] = 1.0;
    out.pN.assign(static_cast<std::size_t>(dc) + 1, 0.0);
    out.pN[0] = 1.0;
  }
  return out;
}

DeTraceResult de_trace(double alpha0, const DeParams& params, const StopRule& stop,
                       bool keep_rows) {
  params.validate();
  stop.validate();
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0))
    throw std::invalid_argument("de_trace: alpha0 outside [0,1]");

  DeTraceResult out;

  auto push_row = [&](const DeState& s, const DeStepBreakdown* bd) {
    if (!keep_rows) return;
    DeTraceRow row;
    row.ell = s.ell;
    row.alpha = s.alpha;
    row.support_alpha = s.support_alpha();
    row.p_r = bd ? bd->p_r : kNan;
    row.A = bd ? bd->A : kNan;
    row.B = bd ? bd->B : kNan;
    row.pN = s.pN;
    row.pX = s.pX;
    out.rows.push_back(std::move(row));
  };

  DeState state;
  if (params.alg == Algorithm::lm && alpha0 > 0.0) {
    DeState ell0;
    state = lm_prephase(alpha0, params, nullptr, &ell0);
    push_row(ell0, nullptr);
    push_row(state, nullptr);
  } else {
    state = de_init(alpha0, params);
    push_row(state, nullptr);
  }

  std::int64_t stall_count = 0;
  out.verdict = Verdict::inconclusive;
  while (state.ell < stop.max_iter) {
    if (state.alpha < stop.success_eps) {
      out.verdict = Verdict::success;
      break;
    }
    const double prev = state.alpha;
    DeStepBreakdown bd;
    state = de_step(state, params, &bd);
    push_row(state, &bd);
    const double rel = prev > 0.0 ? (prev - state.alpha) / prev : 0.0;
    if (rel < stop.progress_eps) {
      if (++stall_count >= stop.patience) {
        out.verdict = Verdict::stall;
        break;
      }
    } else {
      stall_count = 0;
    }
  }
  if (out.verdict == Verdict::inconclusive && state.alpha < stop.success_eps) {
    // max_iter landed exactly on a resolved state
    out.verdict = Verdict::success;
  }
  out.iterations = state.ell;
  out.final_alpha = state.alpha;
  return out;
}

DeVerdict de_verdict(double alpha0, const DeParams& params, const StopRule& stop) {
  const DeTraceResult t = de_trace(alpha0, params, stop, false);
  return {t.verdict, t.iterations, t.final_alpha};
}

}  // namespace nbvb
