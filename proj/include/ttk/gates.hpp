#ifndef TTK_GATES_HPP
#define TTK_GATES_HPP

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ttk/graph_map.hpp"

namespace ttk {

// Per-vertex partition of the outgoing directions into gates. Gates are
// numbered globally, sorted by (vertex, least member in canonical direction
// order); members are sorted canonically.
class GateStructure {
public:
  GateStructure(std::shared_ptr<const Graph> graph, const std::vector<std::vector<Dir>>& gates);

  static GateStructure discrete(std::shared_ptr<const Graph> graph);  // all singletons

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }

  uint32_t gate_of(Dir d) const { return gate_of_[d]; }
  size_t gate_count() const { return members_.size(); }
  std::span<const Dir> gate_members(uint32_t g) const { return members_[g]; }
  Vertex gate_vertex(uint32_t g) const { return graph_->init(members_[g][0]); }
  std::span<const uint32_t> gates_at(Vertex v) const { return gates_at_[v]; }

  bool is_legal_turn(const Turn& t) const;
  bool is_legal_path(const EdgePath& path) const;

  bool operator==(const GateStructure& o) const {
    return graph_->same_structure(*o.graph_) && gate_of_ == o.gate_of_;
  }

  std::string str() const;

private:
  std::shared_ptr<const Graph> graph_;
  std::vector<uint32_t> gate_of_;
  std::vector<std::vector<Dir>> members_;
  std::vector<std::vector<uint32_t>> gates_at_;
};

// Intrinsic gate structure of a self-map: directions at a common vertex are
// equivalent iff Df^t identifies them for some t >= 1. Computed by iterating
// the kernel partition of Df^t until it stabilizes, which happens within
// |directions| steps.
GateStructure intrinsic_gates(const GraphMap& map);

// Train track morphism: D^2f maps legal turns to legal turns, and every edge
// image is legal.
bool is_train_track_morphism(const GraphMap& map, const GateStructure& src, const GateStructure& tgt);

struct GateMorphism {
  // gate id in source structure -> gate id in target structure
  std::vector<uint32_t> image;
};

struct GateMorphismResult {
  std::optional<GateMorphism> morphism;
  std::optional<uint32_t> violating_gate;  // set when Df splits this gate
};

// Df must send each gate into a single target gate; otherwise reports the
// violating gate.
GateMorphismResult gate_morphism(const GraphMap& map, const GateStructure& src,
                                 const GateStructure& tgt);

// Fixes every vertex and every gate.
bool is_gate_stable(const GraphMap& map, const GateStructure& gates);

// Every gate of finer is contained in a gate of coarser.
bool refines(const GateStructure& finer, const GateStructure& coarser);

// All gate structures on a graph (set partitions per vertex). Intended for
// small enumerations in tests.
std::vector<GateStructure> enumerate_gate_structures(std::shared_ptr<const Graph> graph,
                                                     size_t max_count = 100000);

}  // namespace ttk

#endif
