#ifndef TTK_CERTIFY_HPP
#define TTK_CERTIFY_HPP

#include <map>

#include "ttk/inp.hpp"
#include "ttk/whitehead.hpp"

namespace ttk {

struct ConditionResult {
  std::string name;
  bool passed;
  std::string detail;
};

// Outcome of the sufficient irreducibility criterion: primitive transition
// matrix, connected gate-Whitehead graphs, no periodic INP. Failure of any
// condition is inconclusive, never a negative verdict.
struct IwipReport {
  std::vector<ConditionResult> conditions;
  bool certified{false};
  std::optional<INPCertificate> inp;
  std::optional<InpSearchOutcome> inp_search;
  IndexReport index;

  std::vector<std::string> failed_names() const;
  std::string str(const Graph& g) const;
};

// When a factorization of the map into train track factors is supplied and
// the direct periodic-turn search exceeds its budget, the no-INP condition is
// re-verified through the legalizing dichotomy: a composite shown legalizing
// at the factors' expansion bounds has no periodic INP.
IwipReport certify_iwip(const GraphMap& map, const SearchBudget& budget = {},
                        const std::vector<const GraphMap*>& factorization = {});

struct MainTheoremReport {
  std::vector<ConditionResult> hypotheses;
  bool hypotheses_pass{false};
  std::string composite_order;  // "f after g" or "g after f"
  std::optional<IwipReport> composite_iwip;       // conclusions (i) and (ii)
  std::optional<InpSearchOutcome> no_inp_search;  // independent re-derivation
  std::optional<IndexReport> certified_index;     // gate index list of f, certified stable

  bool all_conclusions_certified() const;
  std::string str(const Graph& g) const;
};

// Checks the theorem hypotheses for the pair (f, g) w.r.t. G (defaults to the
// intrinsic structure of f), then independently re-verifies the conclusions
// for the composite f after g: no periodic INP, certified iwip, and the gate
// index list of f flagged certified-stable. g_factors optionally decomposes g
// (applied first-to-last) so large composites can be driven factor by factor.
MainTheoremReport theorem_main(const GraphMap& f, const GraphMap& g,
                               const std::optional<GateStructure>& gates = std::nullopt,
                               const SearchBudget& budget = {},
                               const std::vector<const GraphMap*>& g_factors = {});

// Same for g after f; additionally requires f to be a gate structure
// morphism w.r.t. G.
MainTheoremReport theorem_main_swapped(const GraphMap& f, const GraphMap& g,
                                       const std::optional<GateStructure>& gates = std::nullopt,
                                       const SearchBudget& budget = {},
                                       const std::vector<const GraphMap*>& g_factors = {});

struct MonoidGenerator {
  std::string name;
  const GraphMap* map;
};

struct MonoidSetup {
  std::vector<size_t> exponents;                     // m_i per generator
  std::vector<std::vector<ConditionResult>> checks;  // per generator
  bool admissible{false};
  std::string rejection;  // first failing generator and condition
};

// Verifies the per-generator conditions (intrinsic gates equal G, positive
// matrix, connected gate-Whitehead graphs, no periodic INP, gate-stable) and
// computes the legalizing exponents.
MonoidSetup monoid_setup(const std::vector<MonoidGenerator>& generators,
                         const GateStructure& gates, const SearchBudget& budget = {});

struct MonoidCertification {
  IwipReport iwip;
  ConditionResult legalizing;  // mechanically re-verified on the composite
  IndexReport index;
  std::string word;
};

// Certifies a positive word in the generators raised to their exponents; the
// composite is re-verified mechanically, not inferred.
MonoidCertification monoid_certify(const std::vector<MonoidGenerator>& generators,
                                   const MonoidSetup& setup, const std::vector<size_t>& word,
                                   const GateStructure& gates, const SearchBudget& budget = {});

struct FactoryOptions {
  size_t branch_length{1};  // L: assignments cover the illegal turns of this branch length
  SearchBudget budget{};
};

struct FactoryStep {
  LongTurn fixed_turn;         // branch-length-L turn whose legalizer was composed
  uint64_t illegal_before{0};  // |LT_C^ill| before the step
  uint64_t illegal_after{0};
};

struct FactoryResult {
  GraphMap result;
  std::vector<GraphMap> factors;  // applied first-to-last
  std::vector<FactoryStep> steps;
  size_t working_length{0};  // C
};

// Builds a legalizing morphism by composing per-turn legalizers with a
// strongly expanding map, shrinking the set of branch-length-C illegal turns
// with illegal image until it is empty. Throws invalid_input naming any
// illegal branch-length-L turn without an assigned legalizer.
FactoryResult legalizing_factory(const std::vector<const GraphMap*>& elementary,
                                 const GraphMap& expander, const GateStructure& gates,
                                 const FactoryOptions& options = {});

// Bounded search for a map legalizing the given turn: candidates have legal
// reduced images of length <= max_image_length, satisfy the train track
// conditions w.r.t. the gates, and induce pi1-automorphisms.
std::optional<GraphMap> search_elementary_legalizer(const LongTurn& turn,
                                                    const GateStructure& gates,
                                                    size_t max_image_length,
                                                    uint64_t max_candidates = 2000000);

}  // namespace ttk

#endif
