#include "doctest.h"
#include "helpers.hpp"
#include "ttk/pi1.hpp"

using namespace ttk;
using namespace ttk::test;

namespace {

Word w(std::initializer_list<int> xs) { return Word(xs); }

// substitution oracle: apply the endomorphism given by `images` to a word
Word substitute(const std::vector<Word>& images, const Word& x) {
  Word out;
  for (int letter : x) {
    Word img = images[(size_t)std::abs(letter) - 1];
    if (letter < 0) img = invert_word(img);
    out.insert(out.end(), img.begin(), img.end());
  }
  return reduce_word(out);
}

}  // namespace

TEST_CASE("marked basis on the rose is the edge set") {
  auto g = rose2();
  MarkedBasis basis(g);
  CHECK(basis.rank() == 2);
  CHECK(basis.loop(0) == path(g, "a"));
  CHECK(basis.loop(1) == path(g, "b"));
}

TEST_CASE("induced endomorphism examples") {
  auto g = rose2();
  MarkedBasis basis(g);
  CHECK(induced_endomorphism(fibonacci(g), basis) == std::vector<Word>{w({1, 2}), w({1})});
  CHECK(induced_endomorphism(GraphMap::identity(g), basis) == std::vector<Word>{w({1}), w({2})});
  CHECK(induced_endomorphism(rose_map(g, {"a b", "b a"}), basis) ==
        std::vector<Word>{w({1, 2}), w({2, 1})});
}

TEST_CASE("is_automorphism examples") {
  // (ab, a): oracle is the explicit inverse a -> b, b -> ~b a
  std::vector<Word> fib{w({1, 2}), w({1})};
  std::vector<Word> inverse{w({2}), w({-2, 1})};
  CHECK(substitute(fib, substitute(inverse, w({1}))) == w({1}));
  CHECK(substitute(fib, substitute(inverse, w({2}))) == w({2}));
  CHECK(is_automorphism(fib, 2));

  // (ab, ba): abelianization determinant 0
  std::vector<Word> bad{w({1, 2}), w({2, 1})};
  CHECK(abelianization_determinant(bad, 2) == 0);
  CHECK_FALSE(is_automorphism(bad, 2));

  CHECK(is_automorphism({w({1}), w({2})}, 2));
}

TEST_CASE("is_automorphism handles conjugates and subgroups") {
  // conjugate basis
  CHECK(is_automorphism({w({2, 1, -2}), w({2})}, 2));
  // proper subgroups of rank 2
  CHECK_FALSE(is_automorphism({w({1, 1}), w({2})}, 2));
  CHECK_FALSE(is_automorphism({w({1, 2, -1}), w({1, -2, -1})}, 2));
  // rank deficiency
  CHECK_FALSE(is_automorphism({w({1}), w({1})}, 2));
}

TEST_CASE("is_automorphism is invariant under inversion and permutation") {
  SplitMix64 rng{777};
  int done = 0;
  while (done < 50) {
    size_t rank = 2 + rng.below(2);
    std::vector<Word> words;
    for (size_t i = 0; i < rank; ++i) {
      Word word;
      size_t len = 1 + rng.below(4);
      for (size_t j = 0; j < len; ++j) {
        int letter = 1 + (int)rng.below(rank);
        if (rng.below(2)) letter = -letter;
        word.push_back(letter);
      }
      words.push_back(reduce_word(word));
    }
    if (std::any_of(words.begin(), words.end(), [](const Word& x) { return x.empty(); })) continue;
    ++done;
    bool base = is_automorphism(words, rank);

    auto inverted = words;
    size_t slot = rng.below(rank);
    inverted[slot] = invert_word(words[slot]);
    CHECK(is_automorphism(inverted, rank) == base);

    auto permuted = words;
    std::rotate(permuted.begin(), permuted.begin() + 1, permuted.end());
    CHECK(is_automorphism(permuted, rank) == base);
  }
}

TEST_CASE("abelianization determinant is a unit whenever is_automorphism holds") {
  SplitMix64 rng{909};
  for (int trial = 0; trial < 200; ++trial) {
    size_t rank = 2 + rng.below(2);
    std::vector<Word> words;
    for (size_t i = 0; i < rank; ++i) {
      Word word;
      size_t len = 1 + rng.below(5);
      for (size_t j = 0; j < len; ++j) {
        int letter = 1 + (int)rng.below(rank);
        if (rng.below(2)) letter = -letter;
        word.push_back(letter);
      }
      words.push_back(reduce_word(word));
    }
    if (std::any_of(words.begin(), words.end(), [](const Word& x) { return x.empty(); })) continue;
    if (is_automorphism(words, rank)) {
      BigInt det = abelianization_determinant(words, rank);
      CHECK((det == 1 || det == -1));
    }
  }
}

TEST_CASE("composition of passing endomorphisms passes") {
  auto g = rose2();
  MarkedBasis basis(g);
  GraphMap F = fibonacci(g);
  GraphMap G = rose_map(g, {"b", "a"});
  for (const auto& [f1, f2] : {std::pair{F, G}, {F, F}, {G, G}}) {
    bool a1 = is_automorphism(induced_endomorphism(f1, basis), 2);
    bool a2 = is_automorphism(induced_endomorphism(f2, basis), 2);
    if (a1 && a2) CHECK(is_automorphism(induced_endomorphism(compose(f1, f2), basis), 2));
  }
}

TEST_CASE("marked basis on a multi-vertex graph") {
  auto theta = std::make_shared<Graph>(
      std::vector<std::string>{"u", "w"},
      std::vector<Graph::Edge>{{"p", 0, 1}, {"q", 0, 1}, {"r", 0, 1}});
  MarkedBasis basis(theta);
  CHECK(basis.rank() == 2);
  CHECK(basis.base() == *theta->find_vertex("u"));
  CHECK(induces_pi1_automorphism(GraphMap::identity(theta)));
}
