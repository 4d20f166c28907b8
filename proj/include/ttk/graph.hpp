#ifndef TTK_GRAPH_HPP
#define TTK_GRAPH_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttk/common.hpp"

namespace ttk {

// Finite connected graph with oriented edges and a fixed-point-free edge
// involution. Directions are E+ together with their reversals; a direction's
// reversal is reversed(d). Vertices of valence 1 are rejected.
class Graph {
public:
  struct Edge {
    std::string label;
    Vertex from;
    Vertex to;
  };

  Graph(std::vector<std::string> vertex_names, std::vector<Edge> edges);

  size_t vertex_count() const { return vertex_names_.size(); }
  size_t edge_count() const { return edges_.size(); }
  size_t dir_count() const { return edges_.size() * 2; }

  Vertex init(Dir d) const { return is_forward(d) ? edges_[edge_of(d)].from : edges_[edge_of(d)].to; }
  Vertex term(Dir d) const { return init(reversed(d)); }

  const std::string& vertex_name(Vertex v) const { return vertex_names_[v]; }
  const std::string& edge_label(EdgeId e) const { return edges_[e].label; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::optional<Vertex> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& label) const;

  // Outgoing directions at v, in canonical order.
  std::span<const Dir> star(Vertex v) const {
    return {star_.data() + star_begin_[v], star_begin_[v + 1] - star_begin_[v]};
  }

  // Canonical direction order: forward directions sorted by edge label, then
  // reversed directions sorted by edge label. Used for all deterministic
  // enumeration and lexicographic path comparison.
  uint32_t dir_rank(Dir d) const { return dir_rank_[d]; }
  Dir dir_at_rank(uint32_t r) const { return rank_dir_[r]; }

  std::string dir_token(Dir d) const {
    return is_forward(d) ? edges_[edge_of(d)].label : "~" + edges_[edge_of(d)].label;
  }
  std::optional<Dir> parse_dir_token(const std::string& tok) const;

  bool same_structure(const Graph& other) const;

  // First Betti number |E+| - |V| + 1.
  size_t rank() const { return edge_count() - vertex_count() + 1; }

private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<Dir> star_;
  std::vector<size_t> star_begin_;
  std::vector<uint32_t> dir_rank_;
  std::vector<Dir> rank_dir_;
};

// Vertex-anchored edge path. The anchor carries the basepoint of an empty
// path; for nonempty paths it equals the initial vertex of the first
// direction.
class EdgePath {
public:
  EdgePath() = default;
  explicit EdgePath(Vertex anchor) : anchor_(anchor) {}
  EdgePath(Vertex anchor, std::vector<Dir> dirs) : anchor_(anchor), dirs_(std::move(dirs)) {}

  static EdgePath checked(const Graph& g, Vertex anchor, std::vector<Dir> dirs);

  bool empty() const { return dirs_.empty(); }
  size_t length() const { return dirs_.size(); }
  Vertex anchor() const { return anchor_; }
  const std::vector<Dir>& dirs() const { return dirs_; }
  Dir at(size_t i) const { return dirs_[i]; }

  Vertex initial(const Graph&) const { return anchor_; }
  Vertex terminal(const Graph& g) const { return dirs_.empty() ? anchor_ : g.term(dirs_.back()); }

  EdgePath reversed_path(const Graph& g) const;

  void append(Dir d) { dirs_.push_back(d); }
  void append(const EdgePath& p) { dirs_.insert(dirs_.end(), p.dirs_.begin(), p.dirs_.end()); }

  bool operator==(const EdgePath& o) const { return anchor_ == o.anchor_ && dirs_ == o.dirs_; }

  std::string str(const Graph& g) const;

private:
  Vertex anchor_{0};
  std::vector<Dir> dirs_;
};

// Unique reduced path homotopic rel endpoints: iteratively deletes adjacent
// backtracking pairs (d, reversed(d)). Idempotent.
EdgePath reduce_path(const Graph& g, const EdgePath& path);

// Ordered turn: a pair of directions with common initial vertex.
struct Turn {
  Dir a;
  Dir b;
  bool operator==(const Turn& o) const { return a == o.a && b == o.b; }
};

// Turns crossed by a path: (reversed(d_i), d_{i+1}) at each interior vertex.
std::vector<Turn> crossed_turns(const EdgePath& path);

// Lexicographic comparison in canonical direction order.
int compare_paths(const Graph& g, std::span<const Dir> a, std::span<const Dir> b);

}  // namespace ttk

#endif
