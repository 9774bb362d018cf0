#include "nbvb/graph.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "nbvb/rng.hpp"

namespace nbvb {

void GraphSpec::validate() const {
  if (d_v < 1) throw std::invalid_argument("graph: d_v must be >= 1");
  if (d_c < 1) throw std::invalid_argument("graph: d_c must be >= 1");
  if (n < d_c) throw std::invalid_argument("graph: n must be >= d_c");
  if ((n * static_cast<std::int64_t>(d_v)) % d_c != 0)
    throw std::invalid_argument("graph: n*d_v must be divisible by d_c");
}

std::int64_t nearest_valid_n(std::int64_t n, int d_v, int d_c) {
  if (d_v < 1 || d_c < 1) return 0;
  for (std::int64_t k = n; k >= d_c; --k) {
    if ((k * static_cast<std::int64_t>(d_v)) % d_c == 0) return k;
  }
  return 0;
}

namespace {

// 64-bit key for an edge (v,c); graphs stay far below 2^31 nodes per side.
inline std::uint64_t edge_key(std::int64_t v, std::int64_t c) {
  return (static_cast<std::uint64_t>(v) << 32) | static_cast<std::uint64_t>(c);
}

}  // namespace

BipartiteGraph BipartiteGraph::build_random_regular(const GraphSpec& spec) {
  spec.validate();
  const std::int64_t n = spec.n;
  const std::int64_t m = spec.m();
  const std::int64_t e = n * spec.d_v;

  Xoshiro256ss rng(spec.seed);

  // Uniform stub pairing: variable stub i belongs to variable i / d_v; the
  // shuffled check-stub array assigns each to a check slot.
  std::vector<std::int32_t> stub(static_cast<std::size_t>(e));
  for (std::int64_t i = 0; i < e; ++i)
    stub[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i / spec.d_c);
  for (std::int64_t i = e - 1; i > 0; --i) {
    const std::uint64_t j = uniform_below(rng, static_cast<std::uint64_t>(i) + 1);
    std::swap(stub[static_cast<std::size_t>(i)], stub[static_cast<std::size_t>(j)]);
  }

  std::vector<std::int32_t> var_adj(static_cast<std::size_t>(e));
  for (std::int64_t i = 0; i < e; ++i) var_adj[static_cast<std::size_t>(i)] = stub[static_cast<std::size_t>(i)];

  // Repair parallel edges by swapping one endpoint with a random other edge
  // until the multigraph is simple. Each accepted swap requires both touched
  // edges to stay distinct, so progress is monotone in expectation; the
  // budget makes pathological specs fail loudly instead of spinning.
  std::unordered_set<std::uint64_t> edges;
  edges.reserve(static_cast<std::size_t>(e) * 2);
  std::vector<std::int64_t> dup;  // stub indices holding a duplicate edge
  for (std::int64_t i = 0; i < e; ++i) {
    const std::int64_t v = i / spec.d_v;
    if (!edges.insert(edge_key(v, var_adj[static_cast<std::size_t>(i)])).second)
      dup.push_back(i);
  }

  const std::int64_t budget = 100 * n;
  std::int64_t swaps = 0;
  while (!dup.empty()) {
    if (swaps++ >= budget) throw std::runtime_error("graph: edge-swap repair budget exhausted");
    const std::int64_t i = dup.back();
    const std::int64_t vi = i / spec.d_v;
    const std::int32_t ci = var_adj[static_cast<std::size_t>(i)];
    // partner: a uniformly random stub
    const std::int64_t j =
        static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(e)));
    const std::int64_t vj = j / spec.d_v;
    const std::int32_t cj = var_adj[static_cast<std::size_t>(j)];
    if (i == j) continue;
    // proposed: (vi,cj) and (vj,ci); both must be new (the partner edge is
    // currently simple or itself a duplicate; either way the keys tell us)
    if (vi == vj) continue;
    if (ci == cj) continue;
    if (edges.count(edge_key(vi, cj)) || edges.count(edge_key(vj, ci))) continue;
    // If j is itself a pending duplicate, the key (vj,cj) is owned by some
    // other stub and must stay; otherwise j owns it and it moves.
    const bool j_dup_pending =
        std::find(dup.begin(), dup.end(), j) != dup.end();
    if (!j_dup_pending) edges.erase(edge_key(vj, cj));
    var_adj[static_cast<std::size_t>(i)] = cj;
    var_adj[static_cast<std::size_t>(j)] = ci;
    edges.insert(edge_key(vi, cj));
    edges.insert(edge_key(vj, ci));
    dup.pop_back();
    if (j_dup_pending) {
      // j's edge is now (vj,ci), freshly inserted and unique; drop it from
      // the pending list
      dup.erase(std::remove(dup.begin(), dup.end(), j), dup.end());
    }
  }

  BipartiteGraph g;
  g.spec_ = spec;
  g.var_adj_ = std::move(var_adj);
  g.build_check_adjacency();
  if (g.m() != m) throw std::logic_error("graph: check count mismatch");
  return g;
}

BipartiteGraph BipartiteGraph::from_var_adjacency(const GraphSpec& spec,
                                                  std::vector<std::int32_t> var_adj) {
  spec.validate();
  if (static_cast<std::int64_t>(var_adj.size()) != spec.n * spec.d_v)
    throw std::invalid_argument("graph: adjacency length mismatch");
  const std::int64_t m = spec.m();
  for (const std::int32_t c : var_adj) {
    if (c < 0 || c >= m) throw std::invalid_argument("graph: check index out of range");
  }
  BipartiteGraph g;
  g.spec_ = spec;
  g.var_adj_ = std::move(var_adj);
  if (!g.is_simple()) throw std::invalid_argument("graph: parallel edges in adjacency");
  g.build_check_adjacency();
  return g;
}

void BipartiteGraph::build_check_adjacency() {
  const std::int64_t m = spec_.m();
  const int dc = spec_.d_c;
  check_adj_.assign(static_cast<std::size_t>(m) * dc, -1);
  std::vector<std::int32_t> fill(static_cast<std::size_t>(m), 0);
  for (std::int64_t v = 0; v < spec_.n; ++v) {
    for (int i = 0; i < spec_.d_v; ++i) {
      const std::int32_t c = var_adj_[static_cast<std::size_t>(v) * spec_.d_v + i];
      std::int32_t& f = fill[static_cast<std::size_t>(c)];
      if (f >= dc) throw std::logic_error("graph: check degree overflow");
      check_adj_[static_cast<std::size_t>(c) * dc + f] = static_cast<std::int32_t>(v);
      ++f;
    }
  }
  for (std::int64_t c = 0; c < m; ++c) {
    if (fill[static_cast<std::size_t>(c)] != dc)
      throw std::logic_error("graph: check degree underflow");
  }
}

bool BipartiteGraph::is_simple() const {
  const int dv = spec_.d_v;
  std::array<std::int32_t, 64> row;
  for (std::int64_t v = 0; v < spec_.n; ++v) {
    const std::int32_t* cs = var_checks(v);
    std::copy(cs, cs + dv, row.begin());
    std::sort(row.begin(), row.begin() + dv);
    for (int i = 1; i < dv; ++i) {
      if (row[i] == row[i - 1]) return false;
    }
  }
  return true;
}

void BipartiteGraph::serialize(std::ostream& os) const {
  os << spec_.n << ' ' << spec_.m() << ' ' << spec_.d_v << ' ' << spec_.d_c << ' '
     << spec_.seed << '\n';
  for (std::int64_t v = 0; v < spec_.n; ++v) {
    os << "v " << v << ':';
    const std::int32_t* cs = var_checks(v);
    for (int i = 0; i < spec_.d_v; ++i) os << ' ' << cs[i];
    os << '\n';
  }
}

std::string BipartiteGraph::serialize_string() const {
  std::ostringstream oss;
  serialize(oss);
  return oss.str();
}

BipartiteGraph BipartiteGraph::parse(std::istream& is) {
  GraphSpec spec;
  std::int64_t m = 0;
  if (!(is >> spec.n >> m >> spec.d_v >> spec.d_c >> spec.seed))
    throw std::runtime_error("graph parse: bad header");
  spec.validate();
  if (m != spec.m()) throw std::runtime_error("graph parse: inconsistent check count");
  std::vector<std::int32_t> var_adj(static_cast<std::size_t>(spec.n) * spec.d_v);
  for (std::int64_t v = 0; v < spec.n; ++v) {
    std::string tag;
    std::int64_t idx = -1;
    char colon = 0;
    if (!(is >> tag >> idx >> colon) || tag != "v" || idx != v || colon != ':')
      throw std::runtime_error("graph parse: bad variable line");
    for (int i = 0; i < spec.d_v; ++i) {
      std::int32_t c;
      if (!(is >> c)) throw std::runtime_error("graph parse: truncated adjacency");
      var_adj[static_cast<std::size_t>(v) * spec.d_v + i] = c;
    }
  }
  return from_var_adjacency(spec, std::move(var_adj));
}

CheckDegreePartition induced_check_partition(const BipartiteGraph& g,
                                             const std::vector<std::uint8_t>& subset) {
  if (static_cast<std::int64_t>(subset.size()) != g.n())
    throw std::invalid_argument("partition: subset length mismatch");
  const std::int64_t m = g.m();
  const int dc = g.spec().d_c;
  CheckDegreePartition out;
  out.counts.assign(static_cast<std::size_t>(dc) + 1, 0);
  out.induced_degree.assign(static_cast<std::size_t>(m), 0);
  for (std::int64_t c = 0; c < m; ++c) {
    const std::int32_t* us = g.check_vars(c);
    std::int32_t deg = 0;
    for (int b = 0; b < dc; ++b) deg += subset[static_cast<std::size_t>(us[b])] ? 1 : 0;
    out.induced_degree[static_cast<std::size_t>(c)] = deg;
    ++out.counts[static_cast<std::size_t>(deg)];
  }
  return out;
}

VariablePartition induced_variable_partition(const BipartiteGraph& g,
                                             const std::vector<std::uint8_t>& subset,
                                             const CheckDegreePartition& cp) {
  if (static_cast<std::int64_t>(subset.size()) != g.n())
    throw std::invalid_argument("partition: subset length mismatch");
  if (static_cast<std::int64_t>(cp.induced_degree.size()) != g.m())
    throw std::invalid_argument("partition: check partition mismatch");
  const int dv = g.spec().d_v;
  VariablePartition out;
  out.counts.assign(static_cast<std::size_t>(dv) + 1, 0);
  for (std::int64_t v = 0; v < g.n(); ++v) {
    if (!subset[static_cast<std::size_t>(v)]) continue;
    const std::int32_t* cs = g.var_checks(v);
    int deg1 = 0;
    for (int i = 0; i < dv; ++i)
      deg1 += cp.induced_degree[static_cast<std::size_t>(cs[i])] == 1 ? 1 : 0;
    ++out.counts[static_cast<std::size_t>(deg1)];
  }
  return out;
}

}  // namespace nbvb
