#include "ttk/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ttk {

Graph::Graph(std::vector<std::string> vertex_names, std::vector<Edge> edges)
    : vertex_names_(std::move(vertex_names)), edges_(std::move(edges)) {
  if (vertex_names_.empty()) throw invalid_input("graph has no vertices");
  {
    std::map<std::string, int> seen;
    for (const auto& n : vertex_names_)
      if (++seen[n] > 1) throw invalid_input("duplicate vertex id: " + n);
    seen.clear();
    for (const auto& e : edges_) {
      if (++seen[e.label] > 1) throw invalid_input("duplicate edge label: " + e.label);
      if (e.from >= vertex_names_.size() || e.to >= vertex_names_.size())
        throw invalid_input("edge endpoint out of range: " + e.label);
    }
  }

  star_begin_.assign(vertex_count() + 1, 0);
  std::vector<size_t> valence(vertex_count(), 0);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    valence[edges_[e].from]++;
    valence[edges_[e].to]++;
  }
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (valence[v] < 2)
      throw invalid_input("vertex of valence < 2: " + vertex_names_[v]);
  }

  // connectivity
  {
    std::vector<char> seen(vertex_count(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (const auto& e : edges_) {
        for (Vertex w : {e.from, e.to}) {
          if ((e.from == v || e.to == v) && !seen[w]) {
            seen[w] = 1;
            reached++;
            stack.push_back(w);
          }
        }
      }
    }
    if (reached != vertex_count()) throw invalid_input("graph is not connected");
  }

  // canonical direction order: forward by label, then reversed by label
  std::vector<EdgeId> by_label(edges_.size());
  std::iota(by_label.begin(), by_label.end(), 0);
  std::sort(by_label.begin(), by_label.end(),
            [&](EdgeId x, EdgeId y) { return edges_[x].label < edges_[y].label; });
  dir_rank_.assign(dir_count(), 0);
  rank_dir_.assign(dir_count(), 0);
  uint32_t r = 0;
  for (EdgeId e : by_label) {
    dir_rank_[forward_dir(e)] = r;
    rank_dir_[r++] = forward_dir(e);
  }
  for (EdgeId e : by_label) {
    dir_rank_[backward_dir(e)] = r;
    rank_dir_[r++] = backward_dir(e);
  }

  // stars in canonical order
  std::vector<std::vector<Dir>> stars(vertex_count());
  for (uint32_t i = 0; i < dir_count(); ++i) {
    Dir d = rank_dir_[i];
    stars[init(d)].push_back(d);
  }
  star_begin_[0] = 0;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    star_begin_[v + 1] = star_begin_[v] + stars[v].size();
    star_.insert(star_.end(), stars[v].begin(), stars[v].end());
  }
}

std::optional<Vertex> Graph::find_vertex(const std::string& name) const {
  for (Vertex v = 0; v < vertex_names_.size(); ++v)
    if (vertex_names_[v] == name) return v;
  return std::nullopt;
}

std::optional<EdgeId> Graph::find_edge(const std::string& label) const {
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (edges_[e].label == label) return e;
  return std::nullopt;
}

std::optional<Dir> Graph::parse_dir_token(const std::string& tok) const {
  if (tok.empty()) return std::nullopt;
  bool rev = tok[0] == '~';
  auto e = find_edge(rev ? tok.substr(1) : tok);
  if (!e) return std::nullopt;
  return rev ? backward_dir(*e) : forward_dir(*e);
}

bool Graph::same_structure(const Graph& other) const {
  if (this == &other) return true;
  if (vertex_names_ != other.vertex_names_) return false;
  if (edges_.size() != other.edges_.size()) return false;
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].label != other.edges_[i].label || edges_[i].from != other.edges_[i].from ||
        edges_[i].to != other.edges_[i].to)
      return false;
  }
  return true;
}

EdgePath EdgePath::checked(const Graph& g, Vertex anchor, std::vector<Dir> dirs) {
  if (anchor >= g.vertex_count()) throw invalid_input("path anchor out of range");
  Vertex at = anchor;
  for (Dir d : dirs) {
    if (d >= g.dir_count()) throw invalid_input("path direction out of range");
    if (g.init(d) != at) throw invalid_input("path directions are not consecutive-compatible");
    at = g.term(d);
  }
  return EdgePath(anchor, std::move(dirs));
}

EdgePath EdgePath::reversed_path(const Graph& g) const {
  std::vector<Dir> rd(dirs_.size());
  for (size_t i = 0; i < dirs_.size(); ++i) rd[i] = reversed(dirs_[dirs_.size() - 1 - i]);
  return EdgePath(terminal(g), std::move(rd));
}

std::string EdgePath::str(const Graph& g) const {
  if (dirs_.empty()) return "(empty at " + g.vertex_name(anchor_) + ")";
  std::string out;
  for (size_t i = 0; i < dirs_.size(); ++i) {
    if (i) out += ' ';
    out += g.dir_token(dirs_[i]);
  }
  return out;
}

EdgePath reduce_path(const Graph& g, const EdgePath& path) {
  std::vector<Dir> out;
  out.reserve(path.length());
  for (Dir d : path.dirs()) {
    if (!out.empty() && out.back() == reversed(d))
      out.pop_back();
    else
      out.push_back(d);
  }
  Vertex anchor = out.empty() ? path.anchor() : g.init(out.front());
  return EdgePath(anchor, std::move(out));
}

std::vector<Turn> crossed_turns(const EdgePath& path) {
  std::vector<Turn> out;
  if (path.length() < 2) return out;
  out.reserve(path.length() - 1);
  for (size_t i = 0; i + 1 < path.length(); ++i)
    out.push_back(Turn{reversed(path.at(i)), path.at(i + 1)});
  return out;
}

int compare_paths(const Graph& g, std::span<const Dir> a, std::span<const Dir> b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    uint32_t ra = g.dir_rank(a[i]), rb = g.dir_rank(b[i]);
    if (ra != rb) return ra < rb ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace ttk
