#ifndef TTK_PI1_HPP
#define TTK_PI1_HPP

#include <vector>

#include "ttk/graph_map.hpp"

namespace ttk {

// Reduced word in basis letters: nonzero entries, letter i is +-(i+1) for
// basis index i.
using Word = std::vector<int>;

Word reduce_word(const Word& w);
Word invert_word(const Word& w);
Word concat_words(const Word& a, const Word& b);

// Marking of a graph: base vertex (least vertex name), deterministic
// breadth-first spanning tree, one basis loop per non-tree positive edge.
class MarkedBasis {
public:
  explicit MarkedBasis(std::shared_ptr<const Graph> graph);

  const Graph& graph() const { return *graph_; }
  Vertex base() const { return base_; }
  size_t rank() const { return loops_.size(); }
  const EdgePath& loop(size_t i) const { return loops_[i]; }
  bool is_tree_edge(EdgeId e) const { return tree_edge_[e]; }

  // Reduced tree path between two vertices.
  EdgePath tree_path(Vertex from, Vertex to) const;

  // Rewrites a reduced base-anchored loop as a word in the basis letters.
  Word rewrite(const EdgePath& loop) const;

private:
  std::shared_ptr<const Graph> graph_;
  Vertex base_{0};
  std::vector<char> tree_edge_;
  std::vector<EdgePath> loops_;          // one per non-tree edge, label order
  std::vector<int> letter_of_edge_;      // edge -> basis letter (0 if tree edge)
  std::vector<std::vector<Dir>> to_base_;  // per vertex, tree path to base
};

// Words of the images of the basis loops, conjugated back to the base vertex
// along the spanning tree.
std::vector<Word> induced_endomorphism(const GraphMap& map, const MarkedBasis& basis);

// True iff the words form a basis of the rank-N free group. Decided by
// Stallings folding of the wedge of N labeled loops: the folded based core
// must be the rank-N rose. N generators spanning F_N form a basis by
// hopficity.
bool is_automorphism(const std::vector<Word>& words, size_t rank);

// Determinant of the abelianization matrix, an exact integer.
BigInt abelianization_determinant(const std::vector<Word>& words, size_t rank);

// Convenience: does the self-map induce an automorphism of pi1?
bool induces_pi1_automorphism(const GraphMap& map);

}  // namespace ttk

#endif
