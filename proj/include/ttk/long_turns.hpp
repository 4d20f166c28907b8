#ifndef TTK_LONG_TURNS_HPP
#define TTK_LONG_TURNS_HPP

#include <functional>
#include <optional>

#include "ttk/gates.hpp"

namespace ttk {

// Unordered pair of nonempty legal edge paths with common initial vertex and
// distinct first directions, held with branch1 lexicographically smaller.
struct LongTurn {
  EdgePath branch1, branch2;

  static LongTurn make(const Graph& g, const GateStructure& gates, EdgePath a, EdgePath b);

  bool operator==(const LongTurn& o) const { return branch1 == o.branch1 && branch2 == o.branch2; }
  std::string str(const Graph& g) const { return "{" + branch1.str(g) + ", " + branch2.str(g) + "}"; }
};

struct LTImage {
  std::optional<LongTurn> turn;       // absent: the source turn is f-degenerate
  size_t stripped_prefix{0};          // length of the maximal common initial subpath
  bool swapped{false};                // ordered image came back branch-swapped
  bool degenerate() const { return !turn.has_value(); }
};

// First directions in distinct gates.
bool lt_is_legal(const GateStructure& gates, const LongTurn& turn);

// Apply the map to both branches, strip the maximal common prefix. Branches
// must be legal for the structure making the map a train track morphism, so
// the images are reduced and the remainders form a long turn unless one is
// empty.
LTImage lt_image(const GraphMap& map, const LongTurn& turn);

// Subturn with both branches cut to length C (1 <= C <= both branch lengths).
LongTurn lt_truncate(const LongTurn& turn, size_t c);

// Legal paths of length exactly C from v, in lexicographic order.
std::vector<EdgePath> enumerate_legal_paths(const Graph& g, const GateStructure& gates, Vertex v,
                                            size_t c, size_t max_paths = 1u << 22);

// All long turns with both branches of length exactly C, canonically ordered.
std::vector<LongTurn> enumerate_lt_c(const Graph& g, const GateStructure& gates, size_t c,
                                     size_t max_turns = 1u << 22);

// Number of legal length-C paths per starting direction (cheap, no
// materialization).
std::vector<uint64_t> legal_path_counts(const Graph& g, const GateStructure& gates, size_t c);

uint64_t count_lt_c(const Graph& g, const GateStructure& gates, size_t c);

struct ExpansionProfile {
  std::optional<size_t> strong_expansion_k;  // least K with |f(path)| >= |path|+1 at length K
  size_t cancellation;                       // C(f), the combinatorial volume
  std::optional<size_t> expansion_bound;     // C* = max(K, K*C(f)), when K exists
};

// K is decided on paths of length exactly K; train track images concatenate
// without cancellation, so the gain propagates to all longer legal paths.
ExpansionProfile expansion_profile(const GraphMap& map, const GateStructure& gates,
                                   size_t search_bound);

// Exact turn-cancellation bound: the supremum over long turns of the length
// of the maximal common prefix of the two image paths. Computed on the finite
// agreement-state graph; absent if the supremum is infinite (the map then
// identifies distinct legal rays) or the cap is hit.
std::optional<size_t> turn_cancellation_bound(const GraphMap& map, const GateStructure& gates,
                                              size_t cap = 4096);

// max(K, K * min(volume, B+1)): every branch-length-C turn with C at or above
// this bound is f-long with image branches of length > C, and every periodic
// INP branch fits inside it. At most the volume-based bound, usually far
// smaller.
std::optional<size_t> pipeline_expansion_bound(const GraphMap& map, const GateStructure& gates,
                                               size_t k_search_bound = 64);

// Flat table of all legal length-C paths grouped by first direction; paths
// are identified by their enumeration index within canonical order.
class LegalPathTable {
public:
  LegalPathTable(const Graph& g, const GateStructure& gates, size_t c, uint64_t max_paths);

  size_t path_count() const { return count_; }
  size_t length() const { return c_; }
  std::span<const Dir> path(uint32_t id) const { return {flat_.data() + (size_t)id * c_, c_}; }
  uint32_t block_begin(Dir first) const { return block_begin_[graph_->dir_rank(first)]; }
  uint32_t block_end(Dir first) const { return block_begin_[graph_->dir_rank(first) + 1]; }
  // id of a legal path known to be in the table
  uint32_t find(std::span<const Dir> dirs) const;
  EdgePath as_path(uint32_t id) const;

private:
  const Graph* graph_;
  size_t c_;
  size_t count_;
  std::vector<Dir> flat_;
  std::vector<uint32_t> block_begin_;
};

// The induced total map LT_C -> LT_C for C >= C*: image then truncation.
class LtMapC {
public:
  LtMapC(const GraphMap& map, const GateStructure& gates, size_t c, bool validate_all = true,
         uint64_t max_turns = 1u << 22);

  size_t c() const { return c_; }
  LongTurn operator()(const LongTurn& turn) const;

private:
  const GraphMap* map_;
  const GateStructure* gates_;
  size_t c_;
};

// One application of image-then-truncate on table paths; result paths are
// located in the table. Sets swapped when the canonical order flips.
struct StepResult {
  uint32_t p, q;       // image path ids, canonical order
  size_t stripped;
  bool swapped;
  bool legal;
};

StepResult lt_step(const GraphMap& map, const GateStructure& gates, const LegalPathTable& table,
                   uint32_t p, uint32_t q);

// Dynamics of the truncated long-turn map restricted to the illegal turns.
// Legal turns stay legal, so all cycles through illegal turns live here.
struct IllegalTurnDynamics {
  struct PeriodicTurn {
    uint32_t p, q;
    uint32_t period_unordered;
    uint32_t period_ordered;
  };
  uint64_t illegal_turn_count{0};
  std::vector<PeriodicTurn> periodic;          // canonical order
  std::optional<uint32_t> max_steps_to_legal;  // absent when a cycle exists
};

IllegalTurnDynamics analyze_illegal_turns(const GraphMap& map, const GateStructure& gates,
                                          const LegalPathTable& table, uint64_t max_turns);

}  // namespace ttk

#endif
