#ifndef TTK_INP_HPP
#define TTK_INP_HPP

#include "ttk/long_turns.hpp"
#include "ttk/pi1.hpp"
#include "ttk/rational.hpp"

namespace ttk {

// Resource caps for the long-turn searches. Exceeding a cap raises
// budget_exceeded, which certification layers report as inconclusive.
struct SearchBudget {
  uint64_t max_paths = 1u << 22;
  uint64_t max_turns = 1u << 23;
  size_t max_expansion_bound = 64;
  size_t max_power_volume = 1u << 20;
  size_t power_search_bound_factor = 4;  // power bound = |directions| * factor
};

// Periodic Nielsen path evidence: the periodic illegal long turn, the branch
// fixed points with exact rational coordinates, and the verification
// transcript.
struct INPCertificate {
  LongTurn turn;
  uint32_t turn_period_unordered{1};
  uint32_t turn_period_ordered{1};
  uint32_t map_power{1};  // turn dynamics were computed for f^map_power

  // fixed point position on each branch: full_edges + offset, offset in [0,1)
  struct BranchEnd {
    size_t full_edges;
    Rat offset;
    bool at_vertex() const { return offset.num == 0; }
    Rat position() const { return Rat(BigInt(full_edges)) + offset; }
  };
  EdgePath branch1, branch2;  // full-edge prefixes of the turn branches
  BranchEnd end1, end2;

  std::optional<EdgePath> eta;                  // reverse(branch1) * branch2, when both ends at vertices
  std::optional<uint32_t> inp_period_ordered;   // least s with [f^s(eta)] = eta
  std::optional<uint32_t> inp_period_unordered; // least s with [f^s(eta)] in {eta, reverse(eta)}
  std::vector<std::string> transcript;

  std::string str(const Graph& g) const;
};

// All illegal turns of LT_C on cycles of the truncated long-turn map, with
// unordered periods. C must be at least the expansion bound and the map a
// train track morphism inducing a pi1-automorphism.
std::vector<std::pair<LongTurn, uint32_t>> periodic_illegal_turns(const GraphMap& map,
                                                                  const GateStructure& gates,
                                                                  size_t c,
                                                                  const SearchBudget& budget = {});

// Solves the piecewise-linear branch dynamics of a turn that returns to
// itself after `period` unordered steps of image-then-truncate, truncates the
// branches at the least positive fixed points, and verifies the result.
INPCertificate extract_inp(const GraphMap& map, const LongTurn& turn, uint32_t period);

struct InpSearchOutcome {
  std::optional<INPCertificate> certificate;
  // transcript of the search: power used, expansion bound, turn counts
  uint32_t power{1};
  size_t expansion_bound{0};
  uint64_t illegal_turns_searched{0};
  std::vector<std::string> transcript;
};

// Decides existence of a periodic INP: picks the least strongly 1-expanding
// power, runs the periodic-turn search at its expansion bound, extracts a
// certificate from the least periodic turn. Throws invalid_input when the map
// is not expanding or not a pi1-automorphism.
InpSearchOutcome has_periodic_inp(const GraphMap& map, const GateStructure& gates,
                                  const SearchBudget& budget = {});

struct LegalizingResult {
  bool legalizing;
  std::optional<LongTurn> witness;  // illegal turn with illegal image
};

// Every illegal turn of branch length C(f)+1 must have a legal image; that
// branch length makes every turn f-long and decides all longer turns.
LegalizingResult is_legalizing(const GraphMap& map, const GateStructure& gates,
                               const SearchBudget& budget = {});

// Least k <= max_power with f^k legalizing; absent when a periodic INP
// exists. max_power 0 means the default card LT_C bound.
std::optional<size_t> legalizing_power(const GraphMap& map, const GateStructure& gates,
                                       size_t max_power = 0, const SearchBudget& budget = {});

// Checks that a composition g_n ∘ ... ∘ g_1 of train track morphisms is
// legalizing by driving branch-length-C turns through the factor maps. C must
// dominate every factor's expansion bound.
LegalizingResult is_legalizing_composite(const std::vector<const GraphMap*>& factors,
                                         const GateStructure& gates, size_t c,
                                         const SearchBudget& budget = {});

// Number of illegal turns crossed by a reduced path.
size_t count_illegal_turns(const GateStructure& gates, const EdgePath& path);

}  // namespace ttk

#endif
