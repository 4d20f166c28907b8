#include "ttk/pi1.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ttk {

Word reduce_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (x == 0) throw invalid_input("word contains the zero letter");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word invert_word(const Word& w) {
  Word out(w.size());
  for (size_t i = 0; i < w.size(); ++i) out[i] = -w[w.size() - 1 - i];
  return out;
}

Word concat_words(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce_word(out);
}

MarkedBasis::MarkedBasis(std::shared_ptr<const Graph> graph) : graph_(std::move(graph)) {
  const Graph& g = *graph_;
  base_ = 0;
  for (Vertex v = 1; v < g.vertex_count(); ++v)
    if (g.vertex_name(v) < g.vertex_name(base_)) base_ = v;

  tree_edge_.assign(g.edge_count(), 0);
  to_base_.assign(g.vertex_count(), {});
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Dir> parent_dir(g.vertex_count(), 0);  // direction from parent into vertex
  std::vector<Vertex> parent(g.vertex_count(), base_);
  std::deque<Vertex> queue{base_};
  seen[base_] = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Dir d : g.star(v)) {
      Vertex w = g.term(d);
      if (!seen[w]) {
        seen[w] = 1;
        tree_edge_[edge_of(d)] = 1;
        parent[w] = v;
        parent_dir[w] = d;
        queue.push_back(w);
      }
    }
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::vector<Dir> up;
    Vertex at = v;
    while (at != base_) {
      up.push_back(reversed(parent_dir[at]));
      at = parent[at];
    }
    to_base_[v] = std::move(up);
  }

  letter_of_edge_.assign(g.edge_count(), 0);
  std::vector<EdgeId> nontree;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!tree_edge_[e]) nontree.push_back(e);
  std::sort(nontree.begin(), nontree.end(),
            [&](EdgeId a, EdgeId b) { return g.edge_label(a) < g.edge_label(b); });
  for (size_t i = 0; i < nontree.size(); ++i) {
    EdgeId e = nontree[i];
    letter_of_edge_[e] = (int)i + 1;
    EdgePath loop = tree_path(base_, g.edge(e).from);
    loop.append(forward_dir(e));
    loop.append(tree_path(g.edge(e).to, base_));
    loops_.push_back(reduce_path(g, loop));
  }
  if (loops_.size() != g.rank()) throw internal_error("basis loop count does not match rank");
}

EdgePath MarkedBasis::tree_path(Vertex from, Vertex to) const {
  // from -> base -> to, reduced
  EdgePath p(from, to_base_[from]);
  EdgePath q(to, to_base_[to]);
  EdgePath full = p;
  full.append(q.reversed_path(*graph_));
  return reduce_path(*graph_, full);
}

Word MarkedBasis::rewrite(const EdgePath& loop) const {
  if (loop.initial(*graph_) != base_ || loop.terminal(*graph_) != base_)
    throw invalid_input("rewrite needs a loop at the base vertex");
  Word w;
  for (Dir d : loop.dirs()) {
    int letter = letter_of_edge_[edge_of(d)];
    if (letter == 0) continue;
    w.push_back(is_forward(d) ? letter : -letter);
  }
  return reduce_word(w);
}

std::vector<Word> induced_endomorphism(const GraphMap& map, const MarkedBasis& basis) {
  if (!map.is_self_map()) throw invalid_input("induced endomorphism needs a self-map");
  if (!basis.graph().same_structure(map.source()))
    throw invalid_input("basis inconsistent with the map's graph");
  const Graph& g = map.source();
  EdgePath conn = basis.tree_path(basis.base(), map.vertex_image(basis.base()));
  std::vector<Word> out;
  for (size_t i = 0; i < basis.rank(); ++i) {
    EdgePath p = conn;
    p.append(apply_map(map, basis.loop(i)));
    p.append(conn.reversed_path(g));
    out.push_back(basis.rewrite(reduce_path(g, p)));
  }
  return out;
}

namespace {

// Stallings graph under folding. Vertices are union-find classes; each class
// keeps its outgoing (signed label -> edge) table, merged small-to-large.
struct FoldGraph {
  struct FEdge {
    uint32_t from, to;
    int label;  // 1-based
    bool alive = true;
  };
  std::vector<uint32_t> uf;
  std::vector<FEdge> edges;
  std::vector<std::map<int, size_t>> out;  // signed label -> edge id

  uint32_t find(uint32_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  }

  uint32_t head_along(size_t e, int key) const {
    return key > 0 ? edges[e].to : edges[e].from;
  }

  // registers edge e under signed label key at vertex v, folding on conflict
  void attach(uint32_t v, int key, size_t e) {
    v = find(v);
    auto it = out[v].find(key);
    if (it == out[v].end() || !edges[it->second].alive || it->second == e) {
      out[v][key] = e;
      return;
    }
    size_t other = it->second;
    edges[e].alive = false;
    merge(find(head_along(e, key)), find(head_along(other, key)));
  }

  void merge(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (out[a].size() < out[b].size()) std::swap(a, b);
    uf[b] = a;
    for (auto& [key, e] : out[b]) {
      if (!edges[e].alive) continue;
      auto it = out[a].find(key);
      if (it == out[a].end() || !edges[it->second].alive) {
        out[a][key] = e;
      } else if (it->second != e) {
        edges[e].alive = false;
        pending.emplace_back(find(head_along(e, key)), find(head_along(it->second, key)));
      }
    }
    out[b].clear();
  }

  std::vector<std::pair<uint32_t, uint32_t>> pending;

  void run() {
    while (!pending.empty()) {
      auto [a, b] = pending.back();
      pending.pop_back();
      merge(a, b);
    }
  }
};

}  // namespace

bool is_automorphism(const std::vector<Word>& words, size_t rank) {
  if (words.size() != rank) return false;
  for (const Word& w : words)
    for (int x : w)
      if (x == 0 || (size_t)std::abs(x) > rank)
        throw invalid_input("word letter outside the rank-N alphabet");

  FoldGraph fg;
  fg.uf.push_back(0);  // base = 0
  fg.out.emplace_back();
  for (const Word& w : words) {
    Word r = reduce_word(w);
    uint32_t at = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      uint32_t next = 0;
      if (i + 1 != r.size()) {
        next = (uint32_t)fg.uf.size();
        fg.uf.push_back(next);
        fg.out.emplace_back();
      }
      int x = r[i];
      size_t e = fg.edges.size();
      if (x > 0)
        fg.edges.push_back({at, next, x});
      else
        fg.edges.push_back({next, at, -x});
      at = next;
      fg.attach(fg.edges[e].from, fg.edges[e].label, e);
      fg.run();
      if (fg.edges[e].alive) {
        fg.attach(fg.edges[e].to, -fg.edges[e].label, e);
        fg.run();
      }
    }
  }

  std::vector<std::tuple<uint32_t, uint32_t, int>> alive;
  for (auto& e : fg.edges)
    if (e.alive) alive.emplace_back(fg.find(e.from), fg.find(e.to), e.label);

  // trim non-base vertices of valence <= 1
  uint32_t base = fg.find(0);
  bool trimmed = true;
  while (trimmed) {
    trimmed = false;
    std::map<uint32_t, size_t> valence;
    for (auto& [u, v, l] : alive) {
      valence[u]++;
      valence[v]++;
    }
    std::vector<std::tuple<uint32_t, uint32_t, int>> keep;
    for (auto& [u, v, l] : alive) {
      bool drop = (u != base && valence[u] <= 1) || (v != base && valence[v] <= 1);
      if (drop)
        trimmed = true;
      else
        keep.emplace_back(u, v, l);
    }
    alive = std::move(keep);
  }

  if (alive.size() != rank) return false;
  std::vector<char> label_seen(rank + 1, 0);
  for (auto& [u, v, l] : alive) {
    if (u != base || v != base) return false;
    if (label_seen[l]) return false;
    label_seen[l] = 1;
  }
  for (size_t l = 1; l <= rank; ++l)
    if (!label_seen[l]) return false;
  return true;
}

BigInt abelianization_determinant(const std::vector<Word>& words, size_t rank) {
  if (words.size() != rank) throw invalid_input("need exactly N words");
  size_t n = rank;
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, BigInt(0)));
  for (size_t i = 0; i < n; ++i)
    for (int x : words[i]) m[i][(size_t)std::abs(x) - 1] += (x > 0 ? 1 : -1);

  // fraction-free Gaussian elimination (Bareiss)
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : BigInt(-m[n - 1][n - 1]);
}

bool induces_pi1_automorphism(const GraphMap& map) {
  MarkedBasis basis(map.source_ptr());
  if (basis.rank() == 0) return true;
  return is_automorphism(induced_endomorphism(map, basis), basis.rank());
}

}  // namespace ttk
