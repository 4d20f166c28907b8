#include "ttk/whitehead.hpp"

#include <algorithm>
#include <sstream>

namespace ttk {

bool GateWhiteheadGraph::connected() const {
  if (gates.size() <= 1) return true;
  std::vector<uint32_t> comp(gates.size());
  for (size_t i = 0; i < gates.size(); ++i) comp[i] = (uint32_t)i;
  auto index_of = [&](uint32_t g) {
    return (size_t)(std::find(gates.begin(), gates.end(), g) - gates.begin());
  };
  auto find = [&](size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (auto& [a, b] : edges) {
    size_t ra = find(index_of(a)), rb = find(index_of(b));
    if (ra != rb) comp[std::max(ra, rb)] = std::min(ra, rb);
  }
  for (size_t i = 0; i < gates.size(); ++i)
    if (find(i) != find(0)) return false;
  return true;
}

GateWhiteheadGraph gate_whitehead_graph(const GraphMap& map, const GateStructure& gates,
                                        Vertex v) {
  if (!map.is_self_map()) throw invalid_input("gate-Whitehead graphs need a self-map");
  if (!gates.graph().same_structure(map.source()))
    throw invalid_input("gate structure on wrong graph");
  auto gm = gate_morphism(map, gates, gates);
  if (!gm.morphism)
    throw invalid_input("map is not a gate structure morphism w.r.t. the given gates");
  const auto& fg = gm.morphism->image;

  // gate turns crossed by edge images, then closure under the induced gate map
  std::set<std::pair<uint32_t, uint32_t>> turns;
  auto add = [&](uint32_t a, uint32_t b) {
    return turns.emplace(std::min(a, b), std::max(a, b)).second;
  };
  for (EdgeId e = 0; e < map.source().edge_count(); ++e)
    for (const Turn& t : crossed_turns(map.edge_image(e))) add(gates.gate_of(t.a), gates.gate_of(t.b));
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto [a, b] : std::vector(turns.begin(), turns.end()))
      if (add(fg[a], fg[b])) grew = true;
  }

  GateWhiteheadGraph out;
  out.vertex = v;
  auto at_v = gates.gates_at(v);
  out.gates.assign(at_v.begin(), at_v.end());
  for (auto& [a, b] : turns) {
    if (a == b) continue;  // degenerate gate turn; never crossed by legal images
    if (gates.gate_vertex(a) == v && gates.gate_vertex(b) == v) out.edges.emplace(a, b);
  }
  return out;
}

std::vector<Vertex> essential_vertices(const GraphMap& map, const GateStructure& gates) {
  std::vector<Vertex> out;
  for (Vertex v : periodic_vertices(map))
    if (gates.gates_at(v).size() >= 3) out.push_back(v);
  return out;
}

IndexReport gate_index_list(const GraphMap& map, const GateStructure& gates) {
  IndexReport report;
  report.rank = map.source().rank();
  for (Vertex v : essential_vertices(map, gates)) {
    size_t g = gates.gates_at(v).size();
    report.entries.push_back({v, g, Half((long long)g - 2)});
  }
  std::sort(report.entries.begin(), report.entries.end(), [](const IndexEntry& a, const IndexEntry& b) {
    if (!(a.index == b.index)) return b.index < a.index;
    return a.vertex < b.vertex;
  });
  for (const auto& e : report.entries) report.total = report.total + e.index;
  return report;
}

std::string IndexReport::str(const Graph& g) const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ", ";
    os << entries[i].index.str();
  }
  os << ']';
  os << " (";
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ", ";
    os << g.vertex_name(entries[i].vertex) << ": " << entries[i].gate_count << " gates";
  }
  if (entries.empty()) os << "no essential vertices";
  os << "), total " << total.str() << ", rank " << rank;
  if (certified_stable) os << ", certified stable";
  return os.str();
}

}  // namespace ttk
