#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "ttk/matrix.hpp"
#include "ttk/survey.hpp"

using namespace ttk;
using namespace ttk::test;

TEST_CASE("graph invariants: involution and stars") {
  auto g = rose2();
  for (Dir d = 0; d < g->dir_count(); ++d) {
    CHECK(reversed(reversed(d)) == d);
    CHECK(reversed(d) != d);
    CHECK(g->init(reversed(d)) == g->term(d));
  }
  CHECK(g->star(0).size() == 4);
  CHECK(g->rank() == 2);
}

TEST_CASE("graph validation rejects bad inputs") {
  // valence-1 vertex
  CHECK_THROWS_AS(Graph({"u", "v"}, {{"a", 0, 1}, {"b", 0, 0}}), invalid_input);
  // disconnected
  CHECK_THROWS_AS(Graph({"u", "v"}, {{"a", 0, 0}, {"b", 1, 1}}), invalid_input);
  // duplicate labels
  CHECK_THROWS_AS(Graph({"v"}, {{"a", 0, 0}, {"a", 0, 0}}), invalid_input);
}

TEST_CASE("reduce_path examples") {
  auto g = rose2();
  CHECK(reduce_path(*g, path(g, "a ~a b")) == path(g, "b"));
  CHECK(reduce_path(*g, path(g, "a b")) == path(g, "a b"));
  CHECK(reduce_path(*g, path(g, "a b ~b ~a")) == EdgePath(0));
  CHECK(reduce_path(*g, EdgePath(0)) == EdgePath(0));
}

TEST_CASE("reduce_path agrees with the leftmost-cancellation oracle up to length 8") {
  auto g = rose2();
  for (size_t len = 0; len <= 8; ++len) {
    for (const EdgePath& p : all_rose_paths(g, len)) {
      EdgePath r = reduce_path(*g, p);
      CHECK(r == leftmost_cancellation_oracle(*g, p));
      CHECK(reduce_path(*g, r) == r);  // idempotent
      for (size_t i = 0; i + 1 < r.length(); ++i) CHECK(r.at(i + 1) != reversed(r.at(i)));
    }
  }
}

TEST_CASE("apply_map examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  CHECK(apply_map(F, path(g, "a b")) == path(g, "a b a"));
  CHECK(apply_map(F, path(g, "~b a")) == path(g, "~a a b"));  // unreduced
  CHECK(apply_map(F, EdgePath(0)) == EdgePath(0));
}

TEST_CASE("compose examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GraphMap F2 = compose(F, F);
  CHECK(F2.edge_image(0) == path(g, "a b a"));
  CHECK(F2.edge_image(1) == path(g, "a b"));
  GraphMap id = GraphMap::identity(g);
  CHECK(compose(id, F) == F);
  CHECK(compose(F, id) == F);

  IntMatrix m2 = transition_matrix(F2);
  CHECK(m2.at(0, 0) == 2);
  CHECK(m2.at(0, 1) == 1);
  CHECK(m2.at(1, 0) == 1);
  CHECK(m2.at(1, 1) == 1);
}

TEST_CASE("transition matrix examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  IntMatrix m = transition_matrix(F);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(1, 1) == 0);

  IntMatrix id = transition_matrix(GraphMap::identity(g));
  CHECK(id == IntMatrix::identity(2));

  // a -> a b ~a, b -> b: both orientations counted
  GraphMap m3 = rose_map(g, {"a b ~a", "b"});
  IntMatrix t3 = transition_matrix(m3);
  CHECK(t3.at(0, 0) == 2);
  CHECK(t3.at(1, 0) == 1);
  CHECK(t3.at(0, 1) == 0);
  CHECK(t3.at(1, 1) == 1);
}

TEST_CASE("transition matrix is functorial on seeded random pairs") {
  auto g2 = rose2();
  auto g3 = rose3();
  SplitMix64 rng{12345};
  int done = 0;
  while (done < 100) {
    auto g = (rng.below(2) == 0) ? g2 : g3;
    auto random_map = [&]() {
      std::vector<EdgePath> im;
      for (EdgeId e = 0; e < g->edge_count(); ++e) {
        size_t len = 1 + rng.below(3);
        std::vector<Dir> dirs;
        for (size_t i = 0; i < len; ++i) dirs.push_back((Dir)rng.below(g->dir_count()));
        im.emplace_back(0, dirs);
      }
      return GraphMap(g, g, {0}, std::move(im));
    };
    GraphMap f = random_map(), h = random_map();
    CHECK(transition_matrix(compose(h, f)) == transition_matrix(h) * transition_matrix(f));
    ++done;
  }
}

TEST_CASE("is_primitive examples and Wielandt bound") {
  IntMatrix fib(2, 2);
  fib.at(0, 0) = 1;
  fib.at(0, 1) = 1;
  fib.at(1, 0) = 1;
  CHECK(is_primitive(fib));

  IntMatrix swap2(2, 2);
  swap2.at(0, 1) = 1;
  swap2.at(1, 0) = 1;
  CHECK_FALSE(is_primitive(swap2));

  IntMatrix pos(2, 2);
  pos.at(0, 0) = 2;
  pos.at(0, 1) = 1;
  pos.at(1, 0) = 1;
  pos.at(1, 1) = 1;
  CHECK(is_primitive(pos));
}

TEST_CASE("is_primitive agrees with the power oracle on all 3x3 {0,1,2} matrices") {
  // oracle: check powers up to (n-1)^2 + 1 = 5 with exact arithmetic
  auto oracle = [](const IntMatrix& m) {
    IntMatrix p = m;
    for (int t = 1; t <= 5; ++t) {
      if (p.entrywise_positive()) return true;
      if (t < 5) p = p * m;
    }
    return false;
  };
  for (int code = 0; code < 19683; ++code) {
    int c = code;
    IntMatrix m(3, 3);
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 3; ++j) {
        m.at(i, j) = c % 3;
        c /= 3;
      }
    CHECK(is_primitive(m) == oracle(m));
  }
}

TEST_CASE("is_expanding examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  CHECK(is_expanding(F));  // |F^2(b)| = 2
  CHECK(is_expanding(compose(F, F)));
  CHECK_FALSE(is_expanding(rose_map(g, {"b", "a"})));
  CHECK_FALSE(is_expanding(GraphMap::identity(g)));
}

TEST_CASE("cancellation bound is the combinatorial volume") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  CHECK(cancellation_bound(F) == 3);
  CHECK(cancellation_bound(compose(F, F)) == 5);
  CHECK(cancellation_bound(GraphMap::identity(g)) == 2);
}

TEST_CASE("differential examples") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  Dir a = *g->parse_dir_token("a"), b = *g->parse_dir_token("b");
  Dir na = *g->parse_dir_token("~a"), nb = *g->parse_dir_token("~b");
  CHECK(F.differential(a) == a);
  CHECK(F.differential(b) == a);
  CHECK(F.differential(na) == nb);
  CHECK(F.differential(nb) == na);
  CHECK(F.d2({a, b}) == Turn{a, a});
  CHECK(F.d2({na, nb}) == Turn{nb, na});
}

TEST_CASE("apply/compose functoriality up to reduction on all short paths") {
  auto g = rose2();
  GraphMap F = fibonacci(g);
  GraphMap F2 = compose(F, F);
  std::vector<std::pair<GraphMap, GraphMap>> pairs{{F, F}, {F, F2}, {F2, F}};
  for (const auto& [outer, inner] : pairs) {
    GraphMap both = compose(outer, inner);
    for (size_t len = 0; len <= 6; ++len)
      for (const EdgePath& p : all_rose_paths(g, len)) {
        EdgePath lhs = reduce_path(*g, apply_map(both, p));
        EdgePath rhs = reduce_path(*g, apply_map(outer, reduce_path(*g, apply_map(inner, p))));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("map validation") {
  auto g = rose2();
  CHECK_THROWS_AS(GraphMap(g, g, {0}, std::vector<EdgePath>{EdgePath(0), path(g, "a")}),
                  invalid_input);  // contracted edge
  CHECK_THROWS_AS(rose_map(g, {"a"}), invalid_input);  // missing image
}
