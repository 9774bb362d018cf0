// Finite-length NB-VB decoders: Genie, LM, SBB and parallel XH over a shared
// residual-graph state. All four are round-synchronous: every decision in a
// round is taken against the state at the start of that round and all
// verifications are applied together at its end, so results are independent
// of scan order.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nbvb/algorithm.hpp"
#include "nbvb/graph.hpp"
#include "nbvb/signal.hpp"

namespace nbvb {

struct EqualityPolicy {
  enum class Mode { exact, tolerant };
  Mode mode = Mode::exact;
  double abs_tol = 0.0;
  double rel_tol = 0.0;

  static EqualityPolicy exact() { return {}; }
  static EqualityPolicy tolerant(double abs_tol, double rel_tol) {
    return {Mode::tolerant, abs_tol, rel_tol};
  }
  // Defaults scaled to the value distribution: far above accumulation error
  // at small check degrees, far below genuinely distinct sums.
  static EqualityPolicy tolerant_for_scale(double sigma) {
    return tolerant(1e-9 * sigma, 1e-9);
  }
};

inline bool values_equal(double a, double b, const EqualityPolicy& p) {
  if (p.mode == EqualityPolicy::Mode::exact) return a == b;
  const double d = std::fabs(a - b);
  return d <= std::fmax(p.abs_tol, p.rel_tol * std::fmax(std::fabs(a), std::fabs(b)));
}
inline bool values_equal(wide_int a, wide_int b, const EqualityPolicy&) { return a == b; }

struct RoundStat {
  std::int64_t round = 0;
  std::int64_t unverified_total = 0;
  std::int64_t unverified_support = 0;
  std::int64_t verifications = 0;
};

struct DecodeResult {
  bool success = false;       // all verified AND estimate matches the signal
  bool verified_all = false;  // the decoder itself finished
  bool stall = false;         // no verification in a round, or round budget hit
  bool anomalous = false;     // conflicting verification verdicts observed
  std::int64_t iterations = 0;
  // entry l: (unverified support variables after round l) / n; entry 0 is the
  // state right after the pre-iteration phase.
  std::vector<double> support_trace;
  std::vector<RoundStat> rounds;
};

inline const std::vector<double>& empirical_alpha_trace(const DecodeResult& r) {
  return r.support_trace;
}

// Peeling converges in O(log n) rounds when it succeeds; generous buffer for
// near-threshold slowdown.
inline std::int64_t default_max_rounds(std::int64_t n) {
  std::int64_t lg = 0;
  while ((std::int64_t{1} << lg) < n) ++lg;
  return 10 * lg + 200;
}

// Mutable residual view of one decoding instance. Single-owner: one state
// per trial, never shared across threads.
template <class T>
class DecoderState {
 public:
  DecoderState(const BipartiteGraph& g, const std::vector<T>& measurements,
               const EqualityPolicy& policy)
      : g_(&g),
        policy_(policy),
        resid_val_(measurements),
        resid_deg_(g.m(), g.spec().d_c),
        verified_(g.n(), 0),
        estimate_(g.n(), T{}),
        check_mark_(g.m(), -1) {
    if (static_cast<std::int64_t>(measurements.size()) != g.m())
      throw std::invalid_argument("decoder: measurement length mismatch");
  }

  const BipartiteGraph& graph() const { return *g_; }
  const EqualityPolicy& policy() const { return policy_; }

  bool is_verified(std::int64_t v) const { return verified_[v] != 0; }
  T estimate(std::int64_t v) const { return estimate_[v]; }
  const std::vector<T>& estimates() const { return estimate_; }
  T residual_value(std::int64_t c) const { return resid_val_[c]; }
  std::int32_t residual_degree(std::int64_t c) const { return resid_deg_[c]; }
  std::int64_t verified_count() const { return verified_count_; }
  bool all_verified() const { return verified_count_ == g_->n(); }
  bool anomalous() const { return anomalous_; }
  void flag_anomaly() { anomalous_ = true; }

  // Opens a new round: checks touched from here on are collected as dirty.
  void begin_round() {
    ++epoch_;
    dirty_.clear();
  }
  const std::vector<std::int32_t>& dirty_checks() const { return dirty_; }

  // Verify v to value: final estimate, remove its edges, subtract the value
  // from neighboring residuals. Throws on double verification (logic bug).
  void peel(std::int64_t v, T value) {
    if (verified_[v]) throw std::logic_error("peel: variable already verified");
    verified_[v] = 1;
    estimate_[v] = value;
    ++verified_count_;
    const int dv = g_->spec().d_v;
    const std::int32_t* cs = g_->var_checks(v);
    for (int i = 0; i < dv; ++i) {
      const std::int32_t c = cs[i];
      resid_val_[c] -= value;
      --resid_deg_[c];
      if (check_mark_[c] != epoch_) {
        check_mark_[c] = epoch_;
        dirty_.push_back(c);
      }
    }
  }

  // Pre-iteration step of LM/SBB/XH: every variable adjacent to a
  // zero-valued check is verified to 0 and peeled. Returns the peel count.
  std::int64_t pre_remove_zero_checks() {
    const std::int64_t m = g_->m();
    const int dc = g_->spec().d_c;
    std::vector<std::uint8_t> seen(g_->n(), 0);
    std::vector<std::int32_t> vs;
    for (std::int64_t c = 0; c < m; ++c) {
      if (!values_equal(resid_val_[c], T{}, policy_)) continue;
      const std::int32_t* us = g_->check_vars(c);
      for (int b = 0; b < dc; ++b) {
        const std::int32_t u = us[b];
        if (!seen[u] && !verified_[u]) {
          seen[u] = 1;
          vs.push_back(u);
        }
      }
    }
    for (const std::int32_t v : vs) peel(v, T{});
    return static_cast<std::int64_t>(vs.size());
  }

  // Genie setup: verify every non-support variable to 0, leaving the
  // subgraph induced by the support.
  std::int64_t init_verify_nonsupport(const std::vector<std::uint8_t>& support) {
    std::int64_t cnt = 0;
    for (std::int64_t v = 0; v < g_->n(); ++v) {
      if (!support[v]) {
        peel(v, T{});
        ++cnt;
      }
    }
    return cnt;
  }

 private:
  const BipartiteGraph* g_;
  EqualityPolicy policy_;
  std::vector<T> resid_val_;
  std::vector<std::int32_t> resid_deg_;
  std::vector<std::uint8_t> verified_;
  std::vector<T> estimate_;
  std::int64_t verified_count_ = 0;
  bool anomalous_ = false;
  // dirty-check collection for the current round
  std::vector<std::int32_t> dirty_;
  std::vector<std::int64_t> check_mark_;
  std::int64_t epoch_ = 0;
};

// Optional capture of which variables each round verified (for tests).
struct RoundLog {
  std::vector<std::vector<std::int32_t>> verified_per_round;
};

namespace detail {

// Round schedule: first write wins, later disagreeing writes mark the
// variable conflicted. The conflict set is scan-order independent because it
// depends only on whether two unequal values were scheduled.
template <class T>
struct Schedule {
  std::vector<std::int64_t> mark;
  std::vector<T> value;
  std::vector<std::uint8_t> bad;
  std::vector<std::int32_t> list;
  std::int64_t epoch = 0;

  void init(std::int64_t n) {
    mark.assign(n, -1);
    value.assign(n, T{});
    bad.assign(n, 0);
    list.clear();
    epoch = 0;
  }
  void begin_round() {
    ++epoch;
    list.clear();
  }
  // Returns true when this call detected a conflict.
  bool add(std::int32_t v, T val, const EqualityPolicy& policy) {
    if (mark[v] != epoch) {
      mark[v] = epoch;
      value[v] = val;
      bad[v] = 0;
      list.push_back(v);
      return false;
    }
    if (bad[v]) return false;
    if (!values_equal(value[v], val, policy)) {
      bad[v] = 1;
      return true;
    }
    return false;
  }
};

template <class T>
T truth_value(const SignalInstance& truth, std::int64_t v) {
  if constexpr (std::is_same_v<T, wide_int>) {
    return static_cast<wide_int>(truth.ivals[v]);
  } else {
    // real decoding of an integer-valued signal is allowed (values are cast)
    return truth.rvals.empty() ? static_cast<double>(truth.ivals[v]) : truth.rvals[v];
  }
}

// Synchronous round loop shared by all four algorithms. Only the per-variable
// decision rule differs; ground truth is consulted solely for the support
// trace and the final recovery check, never inside LM/SBB/XH decisions.
template <class T>
DecodeResult run_rounds(Algorithm alg, DecoderState<T>& st, const SignalInstance& truth,
                        std::int64_t max_rounds, RoundLog* log = nullptr) {
  const BipartiteGraph& g = st.graph();
  const std::int64_t n = g.n();
  const int dv = g.spec().d_v;
  const int dc = g.spec().d_c;
  const int beta = beta_of(alg, dv);
  const EqualityPolicy& pol = st.policy();

  std::int64_t unverified_support = 0;
  for (std::int64_t v = 0; v < n; ++v)
    if (truth.support[v] && !st.is_verified(v)) ++unverified_support;

  DecodeResult out;
  out.support_trace.push_back(static_cast<double>(unverified_support) / static_cast<double>(n));
  out.rounds.push_back({0, n - st.verified_count(), unverified_support, st.verified_count()});

  // Candidates: variables whose decision predicate may have changed. Round 1
  // considers everyone; afterwards only unverified neighbors of checks whose
  // residual changed (every rule reads only those), plus conflicted skips.
  std::vector<std::int32_t> cand;
  cand.reserve(n);
  std::vector<std::int64_t> cand_mark(n, -1);
  std::int64_t cand_epoch = 0;
  for (std::int64_t v = 0; v < n; ++v)
    if (!st.is_verified(v)) cand.push_back(static_cast<std::int32_t>(v));

  Schedule<T> sched;
  sched.init(n);
  std::vector<std::int32_t> carry;  // conflicted this round, re-examined next

  std::int64_t r = 0;
  bool stalled = false;
  // scratch for XH value grouping
  std::vector<T> gval(dv);
  std::vector<int> gcnt(dv);

  while (!st.all_verified()) {
    if (r >= max_rounds) {
      stalled = true;
      break;
    }
    ++r;
    sched.begin_round();
    carry.clear();

    for (const std::int32_t v : cand) {
      if (st.is_verified(v)) continue;
      const std::int32_t* cs = g.var_checks(v);

      if (alg == Algorithm::genie || alg == Algorithm::lm) {
        // any residual-degree-1 check pins v to its residual value
        bool have = false, conflict = false;
        T val{};
        for (int i = 0; i < dv; ++i) {
          const std::int32_t c = cs[i];
          if (st.residual_degree(c) != 1) continue;
          const T gv = st.residual_value(c);
          if (!have) {
            have = true;
            val = gv;
          } else if (!values_equal(val, gv, pol)) {
            conflict = true;
          }
        }
        if (conflict) {
          st.flag_anomaly();
          carry.push_back(v);
        } else if (have) {
          if (sched.add(v, val, pol)) st.flag_anomaly();
        }
      } else if (alg == Algorithm::xh) {
        // verify v when >= ceil(dv/2) of its checks share a residual value
        int ng = 0;
        for (int i = 0; i < dv; ++i) {
          const T gv = st.residual_value(cs[i]);
          int j = 0;
          for (; j < ng; ++j) {
            if (values_equal(gval[j], gv, pol)) {
              ++gcnt[j];
              break;
            }
          }
          if (j == ng) {
            gval[ng] = gv;
            gcnt[ng] = 1;
            ++ng;
          }
        }
        int qual = -1;
        bool tie = false;
        for (int j = 0; j < ng; ++j) {
          if (gcnt[j] >= beta) {
            if (qual >= 0) tie = true;
            qual = j;
          }
        }
        if (tie) {
          st.flag_anomaly();
          carry.push_back(v);
        } else if (qual >= 0) {
          if (sched.add(v, gval[qual], pol)) st.flag_anomaly();
        }
      } else {  // sbb
        // each equal-valued pair of v's checks zero-verifies the pair's
        // exclusive neighbors; v takes the shared value when it is the
        // unique common unverified neighbor
        for (int i = 0; i < dv; ++i) {
          const std::int32_t ci = cs[i];
          const T gi = st.residual_value(ci);
          for (int j = i + 1; j < dv; ++j) {
            const std::int32_t cj = cs[j];
            if (!values_equal(gi, st.residual_value(cj), pol)) continue;
            const std::int32_t* vi = g.check_vars(ci);
            const std::int32_t* vj = g.check_vars(cj);
            int common = 0;
            std::int32_t common_u = -1;
            for (int a = 0; a < dc; ++a) {
              const std::int32_t u = vi[a];
              if (st.is_verified(u)) continue;
              bool in_j = false;
              for (int b = 0; b < dc; ++b) {
                if (vj[b] == u) {
                  in_j = true;
                  break;
                }
              }
              if (in_j) {
                ++common;
                common_u = u;
              } else if (sched.add(u, T{}, pol)) {
                st.flag_anomaly();
              }
            }
            for (int b = 0; b < dc; ++b) {
              const std::int32_t u = vj[b];
              if (st.is_verified(u)) continue;
              bool in_i = false;
              for (int a = 0; a < dc; ++a) {
                if (vi[a] == u) {
                  in_i = true;
                  break;
                }
              }
              if (!in_i && sched.add(u, T{}, pol)) st.flag_anomaly();
            }
            if (common == 1 && sched.add(common_u, gi, pol)) st.flag_anomaly();
          }
        }
      }
    }

    // apply phase
    st.begin_round();
    std::int64_t applied = 0;
    std::vector<std::int32_t> round_log;
    for (const std::int32_t v : sched.list) {
      if (sched.bad[v]) continue;
      st.peel(v, sched.value[v]);
      ++applied;
      if (truth.support[v]) --unverified_support;
      if (log) round_log.push_back(v);
    }
    out.rounds.push_back({r, n - st.verified_count(), unverified_support, applied});
    out.support_trace.push_back(static_cast<double>(unverified_support) /
                                static_cast<double>(n));
    if (log) log->verified_per_round.push_back(std::move(round_log));
    if (applied == 0) {
      stalled = true;
      break;
    }

    // rebuild candidates from the checks this round touched
    ++cand_epoch;
    cand.clear();
    for (const std::int32_t c : st.dirty_checks()) {
      const std::int32_t* us = g.check_vars(c);
      for (int b = 0; b < dc; ++b) {
        const std::int32_t u = us[b];
        if (!st.is_verified(u) && cand_mark[u] != cand_epoch) {
          cand_mark[u] = cand_epoch;
          cand.push_back(u);
        }
      }
    }
    for (const std::int32_t v : sched.list) {
      if (sched.bad[v] && !st.is_verified(v) && cand_mark[v] != cand_epoch) {
        cand_mark[v] = cand_epoch;
        cand.push_back(v);
      }
    }
    for (const std::int32_t v : carry) {
      if (!st.is_verified(v) && cand_mark[v] != cand_epoch) {
        cand_mark[v] = cand_epoch;
        cand.push_back(v);
      }
    }
  }

  out.iterations = r;
  out.verified_all = st.all_verified();
  out.stall = stalled && !out.verified_all;
  out.anomalous = st.anomalous();
  bool match = out.verified_all;
  if (match) {
    for (std::int64_t v = 0; v < n; ++v) {
      if (!values_equal(st.estimate(v), truth_value<T>(truth, v), pol)) {
        match = false;
        break;
      }
    }
  }
  out.success = out.verified_all && match;
  return out;
}

template <class T>
DecodeResult run_decoder_impl(Algorithm alg, const BipartiteGraph& g,
                              const std::vector<T>& measurements,
                              const EqualityPolicy& policy, const SignalInstance& truth,
                              std::int64_t max_rounds, RoundLog* log = nullptr,
                              std::vector<T>* estimates_out = nullptr) {
  if (static_cast<std::int64_t>(truth.support.size()) != g.n())
    throw std::invalid_argument("decoder: ground truth length mismatch");
  DecoderState<T> st(g, measurements, policy);
  st.begin_round();
  if (alg == Algorithm::genie) {
    st.init_verify_nonsupport(truth.support);
  } else {
    st.pre_remove_zero_checks();
  }
  DecodeResult out = run_rounds(alg, st, truth,
                                max_rounds > 0 ? max_rounds : default_max_rounds(g.n()), log);
  if (estimates_out) *estimates_out = st.estimates();
  return out;
}

}  // namespace detail

DecodeResult run_decoder(Algorithm alg, const BipartiteGraph& g,
                         const std::vector<wide_int>& measurements,
                         const EqualityPolicy& policy, const SignalInstance& ground_truth,
                         std::int64_t max_rounds = 0);
DecodeResult run_decoder(Algorithm alg, const BipartiteGraph& g,
                         const std::vector<double>& measurements,
                         const EqualityPolicy& policy, const SignalInstance& ground_truth,
                         std::int64_t max_rounds = 0);

// Encode the signal in its native value model and decode.
DecodeResult decode_instance(Algorithm alg, const BipartiteGraph& g,
                             const SignalInstance& signal, const EqualityPolicy& policy,
                             std::int64_t max_rounds = 0);

}  // namespace nbvb
