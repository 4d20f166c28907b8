#include "ttk/gates.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ttk {

GateStructure::GateStructure(std::shared_ptr<const Graph> graph,
                             const std::vector<std::vector<Dir>>& gates)
    : graph_(std::move(graph)) {
  if (!graph_) throw invalid_input("gate structure needs a graph");
  const size_t nd = graph_->dir_count();
  gate_of_.assign(nd, UINT32_MAX);

  std::vector<std::vector<Dir>> blocks;
  for (const auto& g : gates) {
    if (g.empty()) throw invalid_input("empty gate");
    std::vector<Dir> block(g.begin(), g.end());
    Vertex v = graph_->init(block[0]);
    for (Dir d : block) {
      if (d >= nd) throw invalid_input("gate direction out of range");
      if (graph_->init(d) != v) throw invalid_input("gate mixes directions at different vertices");
      if (gate_of_[d] != UINT32_MAX)
        throw invalid_input("partition violated: direction " + graph_->dir_token(d) + " covered twice");
      gate_of_[d] = 0;  // mark covered; renumbered below
    }
    std::sort(block.begin(), block.end(),
              [&](Dir a, Dir b) { return graph_->dir_rank(a) < graph_->dir_rank(b); });
    blocks.push_back(std::move(block));
  }
  for (Dir d = 0; d < nd; ++d)
    if (gate_of_[d] == UINT32_MAX)
      throw invalid_input("partition violated: direction " + graph_->dir_token(d) + " not covered");

  // canonical numbering: by (vertex, least member rank)
  std::sort(blocks.begin(), blocks.end(), [&](const std::vector<Dir>& a, const std::vector<Dir>& b) {
    Vertex va = graph_->init(a[0]), vb = graph_->init(b[0]);
    if (va != vb) return va < vb;
    return graph_->dir_rank(a[0]) < graph_->dir_rank(b[0]);
  });
  members_ = std::move(blocks);
  gates_at_.assign(graph_->vertex_count(), {});
  for (uint32_t g = 0; g < members_.size(); ++g) {
    for (Dir d : members_[g]) gate_of_[d] = g;
    gates_at_[graph_->init(members_[g][0])].push_back(g);
  }
}

GateStructure GateStructure::discrete(std::shared_ptr<const Graph> graph) {
  std::vector<std::vector<Dir>> gates;
  for (Dir d = 0; d < graph->dir_count(); ++d) gates.push_back({d});
  return GateStructure(std::move(graph), gates);
}

bool GateStructure::is_legal_turn(const Turn& t) const {
  if (graph_->init(t.a) != graph_->init(t.b))
    throw invalid_input("turn directions at different vertices");
  return gate_of_[t.a] != gate_of_[t.b];  // degenerate turns share a gate
}

bool GateStructure::is_legal_path(const EdgePath& path) const {
  for (size_t i = 0; i + 1 < path.length(); ++i)
    if (gate_of_[reversed(path.at(i))] == gate_of_[path.at(i + 1)]) return false;
  return true;
}

std::string GateStructure::str() const {
  std::ostringstream os;
  for (uint32_t g = 0; g < members_.size(); ++g) {
    if (g) os << "; ";
    os << graph_->vertex_name(gate_vertex(g)) << ": {";
    for (size_t i = 0; i < members_[g].size(); ++i) {
      if (i) os << ' ';
      os << graph_->dir_token(members_[g][i]);
    }
    os << '}';
  }
  return os.str();
}

GateStructure intrinsic_gates(const GraphMap& map) {
  if (!map.is_self_map()) throw invalid_input("intrinsic gates need a self-map");
  const Graph& g = map.source();
  const size_t nd = g.dir_count();

  std::vector<Dir> df(nd);
  for (Dir d = 0; d < nd; ++d) df[d] = map.differential(d);

  // kernel classes of Df^t, refined by initial vertex; coarsens monotonically
  auto partition_ids = [&](const std::vector<Dir>& iter) {
    std::map<std::pair<Vertex, Dir>, uint32_t> key;
    std::vector<uint32_t> id(nd);
    for (Dir d = 0; d < nd; ++d) {
      auto k = std::make_pair(g.init(d), iter[d]);
      auto [it, fresh] = key.emplace(k, (uint32_t)key.size());
      id[d] = it->second;
    }
    return id;
  };

  std::vector<Dir> iter = df;
  std::vector<uint32_t> ids = partition_ids(iter);
  bool stable = false;
  for (size_t t = 1; t <= nd; ++t) {
    std::vector<Dir> next(nd);
    for (Dir d = 0; d < nd; ++d) next[d] = df[iter[d]];
    std::vector<uint32_t> nids = partition_ids(next);
    if (nids == ids) { stable = true; break; }
    iter = std::move(next);
    ids = std::move(nids);
  }
  if (!stable) throw internal_error("intrinsic gate partition failed to stabilize");

  std::map<uint32_t, std::vector<Dir>> blocks;
  for (Dir d = 0; d < nd; ++d) blocks[ids[d]].push_back(d);
  std::vector<std::vector<Dir>> gates;
  for (auto& [_, b] : blocks) gates.push_back(std::move(b));
  return GateStructure(map.source_ptr(), gates);
}

bool is_train_track_morphism(const GraphMap& map, const GateStructure& src,
                             const GateStructure& tgt) {
  if (!src.graph().same_structure(map.source()) || !tgt.graph().same_structure(map.target()))
    throw invalid_input("gate structure on wrong graph");
  const Graph& g = map.source();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto star = g.star(v);
    for (size_t i = 0; i < star.size(); ++i)
      for (size_t j = i + 1; j < star.size(); ++j) {
        Turn t{star[i], star[j]};
        if (src.is_legal_turn(t) && !tgt.is_legal_turn(map.d2(t))) return false;
      }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!tgt.is_legal_path(map.edge_image(e))) return false;
  return true;
}

GateMorphismResult gate_morphism(const GraphMap& map, const GateStructure& src,
                                 const GateStructure& tgt) {
  if (!src.graph().same_structure(map.source()) || !tgt.graph().same_structure(map.target()))
    throw invalid_input("gate structure on wrong graph");
  GateMorphism m;
  m.image.resize(src.gate_count());
  for (uint32_t gid = 0; gid < src.gate_count(); ++gid) {
    auto members = src.gate_members(gid);
    uint32_t target = tgt.gate_of(map.differential(members[0]));
    for (Dir d : members) {
      if (tgt.gate_of(map.differential(d)) != target)
        return GateMorphismResult{std::nullopt, gid};
    }
    m.image[gid] = target;
  }
  return GateMorphismResult{std::move(m), std::nullopt};
}

bool is_gate_stable(const GraphMap& map, const GateStructure& gates) {
  if (!map.is_self_map()) throw invalid_input("gate stability needs a self-map");
  for (Vertex v = 0; v < map.source().vertex_count(); ++v)
    if (map.vertex_image(v) != v) return false;
  auto gm = gate_morphism(map, gates, gates);
  if (!gm.morphism) return false;
  for (uint32_t g = 0; g < gates.gate_count(); ++g)
    if (gm.morphism->image[g] != g) return false;
  return true;
}

bool refines(const GateStructure& finer, const GateStructure& coarser) {
  if (!finer.graph().same_structure(coarser.graph()))
    throw invalid_input("refines: structures on different graphs");
  for (uint32_t g = 0; g < finer.gate_count(); ++g) {
    auto members = finer.gate_members(g);
    uint32_t c = coarser.gate_of(members[0]);
    for (Dir d : members)
      if (coarser.gate_of(d) != c) return false;
  }
  return true;
}

namespace {

// set partitions of a star, as lists of blocks of indices
void star_partitions(size_t n, std::vector<std::vector<std::vector<size_t>>>& out) {
  std::vector<std::vector<size_t>> current;
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == n) { out.push_back(current); return; }
    size_t existing = current.size();  // recursion reallocates `current`
    for (size_t k = 0; k < existing; ++k) {
      current[k].push_back(i);
      self(self, i + 1);
      current[k].pop_back();
    }
    current.push_back({i});
    self(self, i + 1);
    current.pop_back();
  };
  rec(rec, 0);
}

}  // namespace

std::vector<GateStructure> enumerate_gate_structures(std::shared_ptr<const Graph> graph,
                                                     size_t max_count) {
  std::vector<std::vector<std::vector<std::vector<size_t>>>> per_vertex(graph->vertex_count());
  for (Vertex v = 0; v < graph->vertex_count(); ++v)
    star_partitions(graph->star(v).size(), per_vertex[v]);

  std::vector<GateStructure> out;
  std::vector<size_t> choice(graph->vertex_count(), 0);
  while (true) {
    std::vector<std::vector<Dir>> gates;
    for (Vertex v = 0; v < graph->vertex_count(); ++v) {
      auto star = graph->star(v);
      for (const auto& block : per_vertex[v][choice[v]]) {
        std::vector<Dir> dirs;
        for (size_t i : block) dirs.push_back(star[i]);
        gates.push_back(std::move(dirs));
      }
    }
    out.emplace_back(graph, gates);
    if (out.size() >= max_count) throw budget_exceeded("too many gate structures to enumerate");
    size_t v = 0;
    while (v < choice.size() && ++choice[v] == per_vertex[v].size()) choice[v++] = 0;
    if (v == choice.size()) break;
  }
  return out;
}

}  // namespace ttk
