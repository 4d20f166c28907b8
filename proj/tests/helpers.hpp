#ifndef TTK_TESTS_HELPERS_HPP
#define TTK_TESTS_HELPERS_HPP

#include <memory>
#include <string>
#include <vector>

#include "ttk/gates.hpp"
#include "ttk/graph_map.hpp"
#include "ttk/survey.hpp"

namespace ttk::test {

inline std::shared_ptr<const Graph> rose2() { return rose_graph(2); }
inline std::shared_ptr<const Graph> rose3() { return rose_graph(3); }

// parse a direction token list like "a b ~a" on a graph
inline EdgePath path(const std::shared_ptr<const Graph>& g, const std::string& tokens,
                     const std::string& anchor = "") {
  std::vector<Dir> dirs;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    auto d = g->parse_dir_token(cur);
    if (!d) throw std::runtime_error("bad token: " + cur);
    dirs.push_back(*d);
    cur.clear();
  };
  for (char ch : tokens) {
    if (ch == ' ')
      flush();
    else
      cur += ch;
  }
  flush();
  Vertex v = 0;
  if (!anchor.empty()) v = *g->find_vertex(anchor);
  else if (!dirs.empty()) v = g->init(dirs[0]);
  return EdgePath::checked(*g, v, dirs);
}

// rose self-map from image token strings, one per edge label order a, b, ...
inline GraphMap rose_map(const std::shared_ptr<const Graph>& g,
                         const std::vector<std::string>& images) {
  std::vector<EdgePath> im;
  for (const auto& s : images) im.push_back(path(g, s));
  return GraphMap(g, g, {0}, std::move(im));
}

// a <-> ab, b <-> a
inline GraphMap fibonacci(const std::shared_ptr<const Graph>& g) { return rose_map(g, {"a b", "a"}); }

inline GateStructure gates_of(const std::shared_ptr<const Graph>& g,
                              const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::vector<Dir>> gs;
  for (const auto& block : blocks) {
    std::vector<Dir> dirs;
    for (const auto& tok : block) dirs.push_back(*g->parse_dir_token(tok));
    gs.push_back(dirs);
  }
  return GateStructure(g, gs);
}

// G_F on the rank-2 rose: {a,b}, {~a}, {~b}
inline GateStructure fib_gates(const std::shared_ptr<const Graph>& g) {
  return gates_of(g, {{"a", "b"}, {"~a"}, {"~b"}});
}

// positive/negative two-gate structure on a rose
inline GateStructure pm_gates(const std::shared_ptr<const Graph>& g) {
  std::vector<std::string> pos, neg;
  for (EdgeId e = 0; e < g->edge_count(); ++e) {
    pos.push_back(g->edge_label(e));
    neg.push_back("~" + g->edge_label(e));
  }
  return gates_of(g, {pos, neg});
}

// oracle: repeatedly delete the leftmost cancelling pair
inline EdgePath leftmost_cancellation_oracle(const Graph& g, EdgePath p) {
  bool changed = true;
  std::vector<Dir> dirs = p.dirs();
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < dirs.size(); ++i) {
      if (dirs[i] == reversed(dirs[i + 1])) {
        dirs.erase(dirs.begin() + i, dirs.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  Vertex anchor = dirs.empty() ? p.anchor() : g.init(dirs.front());
  return EdgePath(anchor, dirs);
}

// all direction sequences of the given length on a rose (every sequence is a
// valid path there)
inline std::vector<EdgePath> all_rose_paths(const std::shared_ptr<const Graph>& g, size_t len) {
  std::vector<EdgePath> out;
  size_t nd = g->dir_count();
  std::vector<size_t> idx(len, 0);
  if (len == 0) {
    out.emplace_back(0);
    return out;
  }
  while (true) {
    std::vector<Dir> dirs;
    for (size_t i : idx) dirs.push_back((Dir)i);
    out.emplace_back(0, dirs);
    size_t k = 0;
    while (k < len && ++idx[k] == nd) idx[k++] = 0;
    if (k == len) break;
  }
  return out;
}

}  // namespace ttk::test

#endif
