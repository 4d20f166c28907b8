#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace ttk;
using namespace ttk::test;

TEST_CASE("gate structure validation") {
  auto g = rose2();
  // direction covered twice
  CHECK_THROWS_AS(gates_of(g, {{"a", "b"}, {"a"}, {"~a"}, {"~b"}}), invalid_input);
  // direction missing
  CHECK_THROWS_AS(gates_of(g, {{"a", "b"}, {"~a"}}), invalid_input);
  // empty gate
  CHECK_THROWS_AS(GateStructure(g, {{}}), invalid_input);
}

TEST_CASE("legal turns and paths under G_F") {
  auto g = rose2();
  GateStructure gf = fib_gates(g);
  Dir a = *g->parse_dir_token("a"), b = *g->parse_dir_token("b");
  Dir na = *g->parse_dir_token("~a"), nb = *g->parse_dir_token("~b");

  CHECK_FALSE(gf.is_legal_turn({a, b}));
  CHECK(gf.is_legal_turn({na, nb}));
  CHECK_FALSE(gf.is_legal_turn({a, a}));  // degenerate

  CHECK(gf.is_legal_path(path(g, "a b")));
  CHECK_FALSE(gf.is_legal_path(path(g, "~a b")));
  CHECK(gf.is_legal_path(path(g, "a")));
  CHECK(gf.is_legal_path(EdgePath(0)));
}

TEST_CASE("intrinsic gates examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  CHECK(intrinsic_gates(F) == fib_gates(g));
  CHECK(intrinsic_gates(compose(F, F)) == fib_gates(g));
  // a <-> b swap: four singleton gates
  CHECK(intrinsic_gates(rose_map(g, {"b", "a"})) == GateStructure::discrete(g));
}

TEST_CASE("train track morphism examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GateStructure gf = fib_gates(g);
  GateStructure gpm = pm_gates(g);
  CHECK(is_train_track_morphism(F, gf, gf));
  CHECK(is_train_track_morphism(F, gpm, gpm));
  // a -> a ~b crosses (~a, ~b), same gate in G_pm
  CHECK_FALSE(is_train_track_morphism(rose_map(g, {"a ~b", "b"}), gpm, gpm));
}

TEST_CASE("gate morphism examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GateStructure gf = fib_gates(g);

  auto gm = gate_morphism(F, gf, gf);
  REQUIRE(gm.morphism.has_value());
  // gates in canonical order: {a,b}, {~a}, {~b}
  CHECK(gm.morphism->image[0] == 0);  // {a,b} -> {a,b}
  CHECK(gm.morphism->image[1] == 2);  // {~a} -> {~b}
  CHECK(gm.morphism->image[2] == 1);  // {~b} -> {~a}

  // identity from fine to coarse is a gate morphism, coarse to fine is not
  GraphMap id = GraphMap::identity(g);
  CHECK(gate_morphism(id, gf, pm_gates(g)).morphism.has_value());
  auto bad = gate_morphism(id, pm_gates(g), gf);
  CHECK_FALSE(bad.morphism.has_value());
  CHECK(bad.violating_gate.has_value());
}

TEST_CASE("gate stability examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GateStructure gf = fib_gates(g);
  CHECK_FALSE(is_gate_stable(F, gf));           // {~a} maps to {~b}
  CHECK(is_gate_stable(compose(F, F), gf));     // Df^2 fixes every gate
  CHECK(is_gate_stable(GraphMap::identity(g), GateStructure::discrete(g)));
}

TEST_CASE("refinement examples") {
  auto g = rose2();
  GateStructure gf = fib_gates(g);
  GateStructure gpm = pm_gates(g);
  CHECK(refines(gf, gpm));
  CHECK(refines(gf, gf));
  CHECK_FALSE(refines(gpm, gf));
}

TEST_CASE("intrinsic gates make the map a gate morphism with injective induced map") {
  auto g = rose2();
  for (const GraphMap& f : {fibonacci(g), compose(fibonacci(g), fibonacci(g)),
                            rose_map(g, {"b", "a"}), rose_map(g, {"a b", "b a b"})}) {
    GateStructure gates = intrinsic_gates(f);
    auto gm = gate_morphism(f, gates, gates);
    REQUIRE(gm.morphism.has_value());
    // injectivity per vertex
    for (Vertex v = 0; v < g->vertex_count(); ++v) {
      auto at_v = gates.gates_at(v);
      std::set<uint32_t> images;
      for (uint32_t gid : at_v) images.insert(gm.morphism->image[gid]);
      CHECK(images.size() == at_v.size());
    }
  }
}

TEST_CASE("the intrinsic structure is the finest train track structure") {
  auto g = rose2();
  std::vector<GraphMap> fixtures{fibonacci(g), compose(fibonacci(g), fibonacci(g)),
                                 rose_map(g, {"b", "a"})};
  auto all = enumerate_gate_structures(g);
  CHECK(all.size() == 15);  // Bell(4)
  for (const GraphMap& f : fixtures) {
    GateStructure intrinsic = intrinsic_gates(f);
    for (const GateStructure& gs : all)
      if (is_train_track_morphism(f, gs, gs)) CHECK(refines(intrinsic, gs));
  }
}

TEST_CASE("periodic vertices carry a gate bijection") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GateStructure gf = fib_gates(g);
  for (Vertex v : periodic_vertices(F)) {
    auto gm = gate_morphism(F, gf, gf);
    REQUIRE(gm.morphism.has_value());
    std::set<uint32_t> images;
    for (uint32_t gid : gf.gates_at(v)) images.insert(gm.morphism->image[gid]);
    CHECK(images.size() == gf.gates_at(F.vertex_image(v)).size());
  }
}

TEST_CASE("composition of train track morphisms is a train track morphism") {
  auto g = rose2();
  GateStructure gf = fib_gates(g);
  GateStructure gpm = pm_gates(g);
  GraphMap F = fibonacci(g);
  GraphMap F2 = compose(F, F);
  for (const auto& gates : {gf, gpm})
    for (const auto& [f1, f2] : {std::pair{F, F}, {F, F2}, {F2, F}})
      if (is_train_track_morphism(f1, gates, gates) && is_train_track_morphism(f2, gates, gates))
        CHECK(is_train_track_morphism(compose(f1, f2), gates, gates));
}

TEST_CASE("train track morphisms survive coarsening the source and refining the target") {
  auto g = rose2();
  auto all = enumerate_gate_structures(g);
  GraphMap F = fibonacci(g);
  for (const GateStructure& src : all)
    for (const GateStructure& tgt : all) {
      if (!is_train_track_morphism(F, src, tgt)) continue;
      for (const GateStructure& src2 : all)
        if (refines(src, src2))  // src2 coarser
          CHECK(is_train_track_morphism(F, src2, tgt));
      for (const GateStructure& tgt2 : all)
        if (refines(tgt2, tgt))  // tgt2 finer
          CHECK(is_train_track_morphism(F, src, tgt2));
    }
}
