#include "doctest.h"
#include "helpers.hpp"
#include "ttk/long_turns.hpp"

using namespace ttk;
using namespace ttk::test;

namespace {

LongTurn turn_of(const std::shared_ptr<const Graph>& g, const GateStructure& gates,
                 const std::string& b1, const std::string& b2) {
  return LongTurn::make(*g, gates, path(g, b1), path(g, b2));
}

}  // namespace

TEST_CASE("long turn legality") {
  auto g = rose2();
  GateStructure gf = fib_gates(g);
  CHECK_FALSE(lt_is_legal(gf, turn_of(g, gf, "a b", "b a")));
  CHECK(lt_is_legal(gf, turn_of(g, gf, "~a ~b", "~b ~a")));
  CHECK(lt_is_legal(gf, turn_of(g, gf, "a", "~a")));
}

TEST_CASE("long turn image examples under the Fibonacci map") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GateStructure gf = fib_gates(g);

  LTImage deg = lt_image(F, turn_of(g, gf, "a", "b"));
  CHECK(deg.degenerate());
  CHECK(deg.stripped_prefix == 1);

  LTImage img = lt_image(F, turn_of(g, gf, "a b", "b a"));
  REQUIRE_FALSE(img.degenerate());
  CHECK(*img.turn == turn_of(g, gf, "b a", "a b"));
  CHECK(img.stripped_prefix == 1);

  LTImage img2 = lt_image(compose(F, F), turn_of(g, gf, "a b", "b a"));
  REQUIRE_FALSE(img2.degenerate());
  CHECK(*img2.turn == turn_of(g, gf, "a b", "b a"));
  CHECK(img2.stripped_prefix == 3);  // prefix aba
}

TEST_CASE("truncation") {
  auto g = rose2();
  GateStructure gf = fib_gates(g);
  CHECK(lt_truncate(turn_of(g, gf, "a b a", "b a b"), 2) == turn_of(g, gf, "a b", "b a"));
  CHECK(lt_truncate(turn_of(g, gf, "a", "b"), 1) == turn_of(g, gf, "a", "b"));
  CHECK_THROWS_AS(lt_truncate(turn_of(g, gf, "a b", "b"), 2), invalid_input);
}

TEST_CASE("legal path enumeration counts") {
  auto g = rose2();
  GateStructure gf = fib_gates(g);
  auto p1 = enumerate_legal_paths(*g, gf, 0, 1);
  REQUIRE(p1.size() == 4);
  CHECK(p1[0] == path(g, "a"));
  CHECK(p1[1] == path(g, "b"));
  CHECK(p1[2] == path(g, "~a"));
  CHECK(p1[3] == path(g, "~b"));

  CHECK(enumerate_legal_paths(*g, gf, 0, 2).size() == 10);
  CHECK(enumerate_legal_paths(*g, pm_gates(g), 0, 2).size() == 8);
}

TEST_CASE("long turn enumeration counts") {
  auto g = rose2();
  GateStructure gf = fib_gates(g);
  CHECK(enumerate_lt_c(*g, gf, 1).size() == 6);
  CHECK(enumerate_lt_c(*g, gf, 2).size() == 37);
  CHECK(count_lt_c(*g, gf, 2) == 37);

  auto lt1pm = enumerate_lt_c(*g, pm_gates(g), 1);
  CHECK(lt1pm.size() == 6);
  size_t illegal = 0;
  for (const LongTurn& t : lt1pm)
    if (!lt_is_legal(pm_gates(g), t)) ++illegal;
  CHECK(illegal == 2);
}

TEST_CASE("expansion profile examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GateStructure gf = fib_gates(g);

  ExpansionProfile pf = expansion_profile(F, gf, 5);
  CHECK_FALSE(pf.strong_expansion_k.has_value());  // b^k never gains
  CHECK(pf.cancellation == 3);

  ExpansionProfile pf2 = expansion_profile(compose(F, F), gf, 5);
  REQUIRE(pf2.strong_expansion_k.has_value());
  CHECK(*pf2.strong_expansion_k == 1);
  CHECK(pf2.cancellation == 5);
  CHECK(*pf2.expansion_bound == 5);

  ExpansionProfile pid = expansion_profile(GraphMap::identity(g), gf, 5);
  CHECK_FALSE(pid.strong_expansion_k.has_value());
}

TEST_CASE("strong expansion propagates beyond the exact test length") {
  auto g = rose2();
  GraphMap F2 = compose(fibonacci(g), fibonacci(g));
  GateStructure gf = fib_gates(g);
  ExpansionProfile pf = expansion_profile(F2, gf, 5);
  REQUIRE(pf.strong_expansion_k.has_value());
  size_t k = *pf.strong_expansion_k;
  for (size_t len = k; len <= 3 * k + 2; ++len)
    for (const EdgePath& p : enumerate_legal_paths(*g, gf, 0, len))
      CHECK(apply_map(F2, p).length() >= len + 1);
}

TEST_CASE("the truncated long-turn map is total and finds the fixed turn") {
  auto g = rose2();
  GraphMap F2 = compose(fibonacci(g), fibonacci(g));
  GateStructure gf = fib_gates(g);
  LtMapC lt(F2, gf, 5, /*validate_all=*/true);

  CHECK_THROWS_AS(LtMapC(F2, gf, 4), invalid_input);  // below the bound

  // the branch-length-5 extension of {ab, ba} lying on a cycle
  LegalPathTable table(*g, gf, 5, 1u << 20);
  auto dyn = analyze_illegal_turns(F2, gf, table, 1u << 22);
  REQUIRE_FALSE(dyn.periodic.empty());
  bool found = false;
  for (const auto& pt : dyn.periodic) {
    LongTurn t{table.as_path(pt.p), table.as_path(pt.q)};
    if (t.branch1.at(0) == *g->parse_dir_token("a") && t.branch1.at(1) == *g->parse_dir_token("b") &&
        t.branch2.at(0) == *g->parse_dir_token("b") && t.branch2.at(1) == *g->parse_dir_token("a")) {
      found = true;
      CHECK(pt.period_unordered == 1);
      CHECK(pt.period_ordered == 1);
      CHECK(lt(t) == t);
    }
  }
  CHECK(found);
}

TEST_CASE("legal long turns have legal images (exhaustive at short lengths)") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GraphMap F2 = compose(F, F);
  for (const auto& gates : {fib_gates(g), pm_gates(g)}) {
    for (const GraphMap& f : {F, F2}) {
      if (!is_train_track_morphism(f, gates, gates)) continue;
      for (size_t c1 = 1; c1 <= 4; ++c1)
        for (size_t c2 = 1; c2 <= 4; ++c2)
          for (const EdgePath& p : enumerate_legal_paths(*g, gates, 0, c1))
            for (const EdgePath& q : enumerate_legal_paths(*g, gates, 0, c2)) {
              if (p.at(0) == q.at(0)) continue;
              LongTurn t = LongTurn::make(*g, gates, p, q);
              if (!lt_is_legal(gates, t)) continue;
              LTImage img = lt_image(f, t);
              REQUIRE_FALSE(img.degenerate());
              CHECK(img.stripped_prefix == 0);
              CHECK(lt_is_legal(gates, *img.turn));
            }
    }
  }
}

TEST_CASE("f-long subturns decide legality together (exhaustive at short lengths)") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GateStructure gf = fib_gates(g);
  for (size_t c = 1; c <= 4; ++c) {
    for (const EdgePath& p : enumerate_legal_paths(*g, gf, 0, c))
      for (const EdgePath& q : enumerate_legal_paths(*g, gf, 0, c)) {
        if (p.at(0) == q.at(0)) continue;
        LongTurn t = LongTurn::make(*g, gf, p, q);
        LTImage img = lt_image(F, t);
        if (img.degenerate()) continue;
        for (size_t sub = 1; sub < c; ++sub) {
          LongTurn s = lt_truncate(t, sub);
          LTImage simg = lt_image(F, s);
          if (simg.degenerate()) continue;
          CHECK(lt_is_legal(gf, *img.turn) == lt_is_legal(gf, *simg.turn));
        }
      }
  }
}

TEST_CASE("long-turn image composition law (exhaustive at branch length <= 3)") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GraphMap F2 = compose(F, F);
  for (const auto& gates : {fib_gates(g), pm_gates(g)}) {
    std::vector<std::pair<GraphMap, GraphMap>> pairs{{F, F}, {F2, F}, {F, F2}};
    for (const auto& [outer, inner] : pairs) {
      GraphMap both = compose(outer, inner);
      for (size_t c1 = 1; c1 <= 3; ++c1)
        for (size_t c2 = 1; c2 <= 3; ++c2)
          for (const EdgePath& p : enumerate_legal_paths(*g, gates, 0, c1))
            for (const EdgePath& q : enumerate_legal_paths(*g, gates, 0, c2)) {
              if (p.at(0) == q.at(0)) continue;
              LongTurn t = LongTurn::make(*g, gates, p, q);
              LTImage inner_img = lt_image(inner, t);
              LTImage both_img = lt_image(both, t);
              if (inner_img.degenerate()) {
                CHECK(both_img.degenerate());
                continue;
              }
              LTImage outer_img = lt_image(outer, *inner_img.turn);
              CHECK(both_img.degenerate() == outer_img.degenerate());
              if (!both_img.degenerate()) CHECK(*both_img.turn == *outer_img.turn);
            }
    }
  }
}

TEST_CASE("turns of branch length C(f)+1 are f-long") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GraphMap F2 = compose(F, F);
  GateStructure gf = fib_gates(g);
  for (const GraphMap& f : {F, F2}) {
    size_t c = cancellation_bound(f) + 1;
    for (const LongTurn& t : enumerate_lt_c(*g, gf, c)) CHECK_FALSE(lt_image(f, t).degenerate());
  }
}
