#ifndef TTK_WHITEHEAD_HPP
#define TTK_WHITEHEAD_HPP

#include <set>
#include <vector>

#include "ttk/gates.hpp"
#include "ttk/rational.hpp"

namespace ttk {

// Graph on the gates at one vertex; an edge joins two distinct gates when
// some iterated edge image crosses the vertex entering and leaving through
// them.
struct GateWhiteheadGraph {
  Vertex vertex;
  std::vector<uint32_t> gates;                          // gate ids at the vertex
  std::set<std::pair<uint32_t, uint32_t>> edges;        // unordered, stored (min,max)
  bool connected() const;
};

// Seed with the gate turns crossed by the edge images, close under the
// induced gate map, project to v. The map must be a gate structure morphism
// w.r.t. gates.
GateWhiteheadGraph gate_whitehead_graph(const GraphMap& map, const GateStructure& gates, Vertex v);

// Periodic vertices carrying at least three gates.
std::vector<Vertex> essential_vertices(const GraphMap& map, const GateStructure& gates);

struct IndexEntry {
  Vertex vertex;
  size_t gate_count;
  Half index;  // g(v)/2 - 1
};

struct IndexReport {
  std::vector<IndexEntry> entries;  // sorted by decreasing index
  Half total{0};
  size_t rank{0};
  bool certified_stable{false};

  std::string str(const Graph& g) const;
};

IndexReport gate_index_list(const GraphMap& map, const GateStructure& gates);

}  // namespace ttk

#endif
