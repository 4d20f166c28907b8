#ifndef TTK_SURVEY_HPP
#define TTK_SURVEY_HPP

#include <map>

#include "ttk/certify.hpp"

namespace ttk {

// Deterministic stream generator; the per-sample state is derived from the
// seed and the sample index, so outcomes do not depend on scheduling.
struct SplitMix64 {
  uint64_t state;
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return next() % n; }
};

std::shared_ptr<const Graph> rose_graph(size_t rank);

// Random positive automorphism of the rank-N rose: a composition of
// 5..25 elementary moves x_i -> x_i x_j (i != j), applied first-to-last.
GraphMap random_positive_automorphism(size_t rank, uint64_t seed, uint64_t index);

struct SurveyOptions {
  size_t rank{2};
  size_t count{10};
  uint64_t seed{0};
  size_t threads{1};
  SearchBudget budget{};
};

struct SurveyResult {
  std::map<std::string, size_t> histogram;  // canonical outcome key -> count
};

SurveyResult run_survey(const SurveyOptions& options);

std::string survey_report(const SurveyOptions& options, const SurveyResult& result);

}  // namespace ttk

#endif
