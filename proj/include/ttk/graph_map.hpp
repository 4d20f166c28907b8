#ifndef TTK_GRAPH_MAP_HPP
#define TTK_GRAPH_MAP_HPP

#include <memory>
#include <optional>
#include <vector>

#include "ttk/graph.hpp"
#include "ttk/matrix.hpp"

namespace ttk {

// Graph map: vertices to vertices, positive edges to nonempty edge paths with
// compatible endpoints. The image of a reversed edge is the reversed image.
// Immutable after construction.
class GraphMap {
public:
  GraphMap(std::shared_ptr<const Graph> source, std::shared_ptr<const Graph> target,
           std::vector<Vertex> vertex_map, std::vector<EdgePath> edge_images);

  static GraphMap identity(std::shared_ptr<const Graph> g);

  const Graph& source() const { return *src_; }
  const Graph& target() const { return *tgt_; }
  const std::shared_ptr<const Graph>& source_ptr() const { return src_; }
  const std::shared_ptr<const Graph>& target_ptr() const { return tgt_; }

  bool is_self_map() const { return src_->same_structure(*tgt_); }

  Vertex vertex_image(Vertex v) const { return vmap_[v]; }
  const std::vector<Vertex>& vertex_map() const { return vmap_; }

  // Image of a positive edge.
  const EdgePath& edge_image(EdgeId e) const { return eimg_[e]; }

  size_t image_length(Dir d) const { return eimg_[edge_of(d)].length(); }

  // i-th letter of the image path of direction d, without materializing the
  // reversed path.
  Dir image_letter(Dir d, size_t i) const {
    const EdgePath& p = eimg_[edge_of(d)];
    return is_forward(d) ? p.at(i) : reversed(p.at(p.length() - 1 - i));
  }

  EdgePath dir_image(Dir d) const;

  // Df: first letter of the image path.
  Dir differential(Dir d) const { return image_letter(d, 0); }
  Turn d2(const Turn& t) const { return Turn{differential(t.a), differential(t.b)}; }

  // Total combinatorial volume, a cancellation bound when the map induces a
  // pi1-isomorphism.
  size_t volume() const;

  bool operator==(const GraphMap& o) const;

private:
  std::shared_ptr<const Graph> src_, tgt_;
  std::vector<Vertex> vmap_;
  std::vector<EdgePath> eimg_;
};

// Unreduced concatenation of edge images along the path.
EdgePath apply_map(const GraphMap& map, const EdgePath& path);

// outer after inner; edge images stay unreduced.
GraphMap compose(const GraphMap& outer, const GraphMap& inner);

GraphMap map_power(const GraphMap& map, size_t k);

// Occurrence counts of each target edge (both orientations) in each edge
// image; rows = target edges, cols = source edges.
IntMatrix transition_matrix(const GraphMap& map);

// True iff |f^t(e)| >= 2 for some t >= 1, for every edge. Decided on the
// finite functional graph of the single-letter-image directions.
bool is_expanding(const GraphMap& map);

size_t cancellation_bound(const GraphMap& map);

// Vertices lying on a cycle of the vertex map.
std::vector<Vertex> periodic_vertices(const GraphMap& map);

}  // namespace ttk

#endif
