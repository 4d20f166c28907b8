#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "ttk/whitehead.hpp"

using namespace ttk;
using namespace ttk::test;

namespace {

// brute-force oracle: scan the turns crossed by f^t(e) for t <= bound
std::set<std::pair<uint32_t, uint32_t>> whitehead_by_iteration(const GraphMap& map,
                                                               const GateStructure& gates,
                                                               Vertex v, size_t t_bound) {
  std::set<std::pair<uint32_t, uint32_t>> edges;
  const Graph& g = map.source();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (Dir d : {forward_dir(e), backward_dir(e)}) {
      EdgePath cur = map.dir_image(d);
      for (size_t t = 1; t <= t_bound; ++t) {
        if (t > 1) cur = apply_map(map, cur);
        for (const Turn& turn : crossed_turns(cur)) {
          if (g.init(turn.a) != v) continue;
          uint32_t x = gates.gate_of(turn.a), y = gates.gate_of(turn.b);
          if (x != y) edges.emplace(std::min(x, y), std::max(x, y));
        }
      }
    }
  }
  return edges;
}

}  // namespace

TEST_CASE("gate-Whitehead graph of the Fibonacci map") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GateStructure gf = fib_gates(g);
  GateWhiteheadGraph wh = gate_whitehead_graph(F, gf, 0);
  CHECK(wh.gates.size() == 3);
  // gates: 0 = {a,b}, 1 = {~a}, 2 = {~b}; edges {~a}-{a,b} and {~b}-{a,b}
  CHECK(wh.edges == std::set<std::pair<uint32_t, uint32_t>>{{0, 1}, {0, 2}});
  CHECK(wh.connected());

  GateWhiteheadGraph wh2 = gate_whitehead_graph(compose(F, F), gf, 0);
  CHECK(wh2.edges == wh.edges);
}

TEST_CASE("identity with singleton gates has an empty Whitehead graph") {
  auto g = rose2();
  GraphMap id = GraphMap::identity(g);
  GateWhiteheadGraph wh = gate_whitehead_graph(id, GateStructure::discrete(g), 0);
  CHECK(wh.edges.empty());
  CHECK_FALSE(wh.connected());  // 4 isolated gates
}

TEST_CASE("closure computation equals the bounded iteration oracle") {
  auto g = rose2();
  std::vector<GraphMap> fixtures{fibonacci(g), compose(fibonacci(g), fibonacci(g)),
                                 rose_map(g, {"a b", "b a b"}), rose_map(g, {"b", "a"})};
  for (const GraphMap& f : fixtures) {
    GateStructure gates = intrinsic_gates(f);
    // gate turns are pairs of gates at the sole vertex; bound = count + 1
    size_t n = gates.gate_count();
    size_t bound = n * (n + 1) / 2 + 1;
    for (Vertex v = 0; v < g->vertex_count(); ++v) {
      GateWhiteheadGraph wh = gate_whitehead_graph(f, gates, v);
      CHECK(wh.edges == whitehead_by_iteration(f, gates, v, bound));
    }
  }
}

TEST_CASE("whitehead graph requires a gate structure morphism") {
  auto g = rose2();
  // Df(a) = a and Df(b) = ~b split the gate {a, b}
  GraphMap split = rose_map(g, {"a", "~b"});
  CHECK_THROWS_AS(gate_whitehead_graph(split, fib_gates(g), 0), invalid_input);
}

TEST_CASE("essential vertices and gate index list") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  CHECK(essential_vertices(F, fib_gates(g)) == std::vector<Vertex>{0});
  CHECK(essential_vertices(F, pm_gates(g)).empty());

  IndexReport r = gate_index_list(F, fib_gates(g));
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].gate_count == 3);
  CHECK(r.entries[0].index == Half(1));  // 1/2
  CHECK(r.entries[0].index.str() == "1/2");
  CHECK(r.total == Half(1));
  CHECK(r.rank == 2);
  CHECK_FALSE(r.certified_stable);

  IndexReport empty = gate_index_list(F, pm_gates(g));
  CHECK(empty.entries.empty());
  CHECK(empty.total == Half(0));
}

TEST_CASE("index arithmetic for two fixed vertices with 4 and 3 gates") {
  // u has valence 5 with one merged pair (4 gates), w has valence 3
  auto graph = std::make_shared<Graph>(
      std::vector<std::string>{"u", "w"},
      std::vector<Graph::Edge>{{"l", 0, 0}, {"p", 0, 1}, {"q", 0, 1}, {"r", 0, 1}});
  GraphMap id = GraphMap::identity(graph);
  GateStructure gates(graph, {{*graph->parse_dir_token("l"), *graph->parse_dir_token("~l")},
                              {*graph->parse_dir_token("p")},
                              {*graph->parse_dir_token("q")},
                              {*graph->parse_dir_token("r")},
                              {*graph->parse_dir_token("~p")},
                              {*graph->parse_dir_token("~q")},
                              {*graph->parse_dir_token("~r")}});
  IndexReport r = gate_index_list(id, gates);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].gate_count == 4);
  CHECK(r.entries[0].index.str() == "1");
  CHECK(r.entries[1].gate_count == 3);
  CHECK(r.entries[1].index.str() == "1/2");
  CHECK(r.total == Half(3));
}

TEST_CASE("whitehead subgraph property under composition with a gate-stable factor") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GraphMap F2 = compose(F, F);
  GateStructure gates = intrinsic_gates(F);
  REQUIRE(is_gate_stable(F2, gates));

  for (const GraphMap& f : {F, F2, compose(F2, F)}) {
    GraphMap fg = compose(f, F2);
    GraphMap gf = compose(F2, f);
    for (Vertex v = 0; v < g->vertex_count(); ++v) {
      auto base = gate_whitehead_graph(f, gates, v).edges;
      auto lhs = gate_whitehead_graph(fg, gates, v).edges;
      auto rhs = gate_whitehead_graph(gf, gates, v).edges;
      CHECK(std::includes(lhs.begin(), lhs.end(), base.begin(), base.end()));
      CHECK(std::includes(rhs.begin(), rhs.end(), base.begin(), base.end()));
    }
  }
}
