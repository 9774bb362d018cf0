// Random (d_v,d_c)-regular simple bipartite graphs in flat adjacency form,
// plus the induced-subgraph partitions used by both engines.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace nbvb {

struct GraphSpec {
  std::int64_t n = 0;  // variable nodes
  int d_v = 0;         // variable degree
  int d_c = 0;         // check degree
  std::uint64_t seed = 0;

  std::int64_t m() const { return n * d_v / d_c; }

  // Throws std::invalid_argument unless d_v,d_c >= 1, n >= d_c and
  // n*d_v is divisible by d_c.
  void validate() const;
};

// Largest n' <= n such that n'*d_v is divisible by d_c; 0 if none exists
// above d_c. Used by front ends to round requested sizes down to a buildable
// one.
std::int64_t nearest_valid_n(std::int64_t n, int d_v, int d_c);

class BipartiteGraph {
 public:
  // Configuration model (uniform random pairing of variable and check stubs)
  // followed by edge-swap repair of parallel edges. Deterministic given the
  // seed; throws std::runtime_error if the repair budget (100*n swaps) is
  // exhausted, which signals a pathological spec.
  static BipartiteGraph build_random_regular(const GraphSpec& spec);

  // Construct from explicit variable adjacency (n*d_v check indices, row per
  // variable). Validates degrees and simplicity.
  static BipartiteGraph from_var_adjacency(const GraphSpec& spec,
                                           std::vector<std::int32_t> var_adj);

  const GraphSpec& spec() const { return spec_; }
  std::int64_t n() const { return spec_.n; }
  std::int64_t m() const { return spec_.m(); }

  // The d_v checks adjacent to variable v.
  const std::int32_t* var_checks(std::int64_t v) const {
    return var_adj_.data() + v * spec_.d_v;
  }
  // The d_c variables adjacent to check c.
  const std::int32_t* check_vars(std::int64_t c) const {
    return check_adj_.data() + c * spec_.d_c;
  }

  const std::vector<std::int32_t>& var_adjacency() const { return var_adj_; }

  bool is_simple() const;  // exhaustive duplicate-pair scan

  // Textual form: header "n m d_v d_c seed", then one line
  // "v <i>: c_1 ... c_{d_v}" per variable.
  void serialize(std::ostream& os) const;
  std::string serialize_string() const;
  static BipartiteGraph parse(std::istream& is);

 private:
  BipartiteGraph() = default;
  void build_check_adjacency();

  GraphSpec spec_;
  std::vector<std::int32_t> var_adj_;    // n * d_v
  std::vector<std::int32_t> check_adj_;  // m * d_c
};

struct CheckDegreePartition {
  // counts[i] = number of checks with exactly i neighbors inside the subset.
  std::vector<std::int64_t> counts;          // length d_c+1
  std::vector<std::int32_t> induced_degree;  // per check, length m
};

struct VariablePartition {
  // counts[i] = subset variables with exactly i neighbors among the checks
  // of induced degree 1.
  std::vector<std::int64_t> counts;  // length d_v+1
};

// subset is a 0/1 mask over the n variables.
CheckDegreePartition induced_check_partition(const BipartiteGraph& g,
                                             const std::vector<std::uint8_t>& subset);

// cp must have been computed from the same subset.
VariablePartition induced_variable_partition(const BipartiteGraph& g,
                                             const std::vector<std::uint8_t>& subset,
                                             const CheckDegreePartition& cp);

}  // namespace nbvb
