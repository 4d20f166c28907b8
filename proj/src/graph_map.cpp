#include "ttk/graph_map.hpp"

#include <algorithm>

namespace ttk {

GraphMap::GraphMap(std::shared_ptr<const Graph> source, std::shared_ptr<const Graph> target,
                   std::vector<Vertex> vertex_map, std::vector<EdgePath> edge_images)
    : src_(std::move(source)), tgt_(std::move(target)), vmap_(std::move(vertex_map)),
      eimg_(std::move(edge_images)) {
  if (!src_ || !tgt_) throw invalid_input("graph map needs source and target graphs");
  if (vmap_.size() != src_->vertex_count()) throw invalid_input("vertex map size mismatch");
  if (eimg_.size() != src_->edge_count()) throw invalid_input("edge image count mismatch");
  for (Vertex w : vmap_)
    if (w >= tgt_->vertex_count()) throw invalid_input("vertex image out of range");
  for (EdgeId e = 0; e < eimg_.size(); ++e) {
    const EdgePath& p = eimg_[e];
    if (p.empty()) throw invalid_input("contracted edge: " + src_->edge_label(e));
    Vertex at = p.anchor();
    for (Dir d : p.dirs()) {
      if (d >= tgt_->dir_count()) throw invalid_input("edge image direction out of range");
      if (tgt_->init(d) != at) throw invalid_input("edge image not consecutive-compatible");
      at = tgt_->term(d);
    }
    if (p.anchor() != vmap_[src_->edge(e).from] || at != vmap_[src_->edge(e).to])
      throw invalid_input("edge image endpoints incompatible with vertex map: " + src_->edge_label(e));
  }
}

GraphMap GraphMap::identity(std::shared_ptr<const Graph> g) {
  std::vector<Vertex> vm(g->vertex_count());
  for (Vertex v = 0; v < vm.size(); ++v) vm[v] = v;
  std::vector<EdgePath> im;
  im.reserve(g->edge_count());
  for (EdgeId e = 0; e < g->edge_count(); ++e)
    im.emplace_back(g->edge(e).from, std::vector<Dir>{forward_dir(e)});
  return GraphMap(g, g, std::move(vm), std::move(im));
}

EdgePath GraphMap::dir_image(Dir d) const {
  if (is_forward(d)) return eimg_[edge_of(d)];
  return eimg_[edge_of(d)].reversed_path(*tgt_);
}

size_t GraphMap::volume() const {
  size_t v = 0;
  for (const EdgePath& p : eimg_) v += p.length();
  return v;
}

bool GraphMap::operator==(const GraphMap& o) const {
  return src_->same_structure(*o.src_) && tgt_->same_structure(*o.tgt_) && vmap_ == o.vmap_ &&
         eimg_ == o.eimg_;
}

EdgePath apply_map(const GraphMap& map, const EdgePath& path) {
  const Graph& src = map.source();
  if (path.anchor() >= src.vertex_count()) throw invalid_input("path not in source graph");
  EdgePath out(map.vertex_image(path.anchor()));
  Vertex at = path.anchor();
  for (Dir d : path.dirs()) {
    if (d >= src.dir_count() || src.init(d) != at) throw invalid_input("path not in source graph");
    at = src.term(d);
    for (size_t i = 0, n = map.image_length(d); i < n; ++i) out.append(map.image_letter(d, i));
  }
  return out;
}

GraphMap compose(const GraphMap& outer, const GraphMap& inner) {
  if (!inner.target().same_structure(outer.source()))
    throw invalid_input("compose: inner target does not match outer source");
  std::vector<Vertex> vm(inner.source().vertex_count());
  for (Vertex v = 0; v < vm.size(); ++v) vm[v] = outer.vertex_image(inner.vertex_image(v));
  std::vector<EdgePath> im;
  im.reserve(inner.source().edge_count());
  for (EdgeId e = 0; e < inner.source().edge_count(); ++e)
    im.push_back(apply_map(outer, inner.edge_image(e)));
  return GraphMap(inner.source_ptr(), outer.target_ptr(), std::move(vm), std::move(im));
}

GraphMap map_power(const GraphMap& map, size_t k) {
  if (!map.is_self_map()) throw invalid_input("powers need a self-map");
  if (k == 0) return GraphMap::identity(map.source_ptr());
  GraphMap out = map;
  for (size_t i = 1; i < k; ++i) out = compose(map, out);
  return out;
}

IntMatrix transition_matrix(const GraphMap& map) {
  IntMatrix m(map.target().edge_count(), map.source().edge_count());
  for (EdgeId e = 0; e < map.source().edge_count(); ++e)
    for (Dir d : map.edge_image(e).dirs()) m.at(edge_of(d), e) += 1;
  return m;
}

bool is_expanding(const GraphMap& map) {
  if (!map.is_self_map()) throw invalid_input("is_expanding needs a self-map");
  size_t n = map.source().dir_count();
  for (EdgeId e = 0; e < map.source().edge_count(); ++e) {
    Dir d = forward_dir(e);
    size_t steps = 0;
    while (map.image_length(d) == 1) {
      d = map.image_letter(d, 0);
      if (++steps > n) return false;  // trapped in a cycle of single-edge images
    }
  }
  return true;
}

size_t cancellation_bound(const GraphMap& map) { return map.volume(); }

std::vector<Vertex> periodic_vertices(const GraphMap& map) {
  if (!map.is_self_map()) throw invalid_input("periodic_vertices needs a self-map");
  size_t n = map.source().vertex_count();
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    Vertex w = v;
    for (size_t i = 0; i < n; ++i) w = map.vertex_image(w);
    // w is on a cycle; v is periodic iff the cycle returns to v
    Vertex u = w;
    bool periodic = false;
    for (size_t i = 0; i < n; ++i) {
      if (u == v) { periodic = true; break; }
      u = map.vertex_image(u);
    }
    if (periodic) out.push_back(v);
  }
  return out;
}

}  // namespace ttk
