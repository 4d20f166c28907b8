#include "ttk/survey.hpp"

#include <sstream>
#include <thread>

namespace ttk {

std::shared_ptr<const Graph> rose_graph(size_t rank) {
  if (rank < 2) throw invalid_input("rank must be >= 2");
  if (rank > 26) throw invalid_input("rose labels support rank <= 26");
  std::vector<Graph::Edge> edges;
  for (size_t i = 0; i < rank; ++i) edges.push_back({std::string(1, (char)('a' + i)), 0, 0});
  return std::make_shared<Graph>(std::vector<std::string>{"v"}, edges);
}

namespace {

GraphMap nielsen_move(const std::shared_ptr<const Graph>& rose, size_t i, size_t j) {
  // x_i -> x_i x_j, every other edge fixed
  std::vector<EdgePath> im;
  for (EdgeId e = 0; e < rose->edge_count(); ++e) {
    std::vector<Dir> dirs{forward_dir(e)};
    if (e == i) dirs.push_back(forward_dir((EdgeId)j));
    im.emplace_back(0, std::move(dirs));
  }
  return GraphMap(rose, rose, {0}, std::move(im));
}

}  // namespace

GraphMap random_positive_automorphism(size_t rank, uint64_t seed, uint64_t index) {
  auto rose = rose_graph(rank);
  SplitMix64 rng{seed * 0x9e3779b97f4a7c15ull + index * 0xd1b54a32d192ed03ull + 1};
  size_t k = 5 + (size_t)rng.below(21);  // uniform over 5..25
  GraphMap out = GraphMap::identity(rose);
  for (size_t step = 0; step < k; ++step) {
    size_t i = (size_t)rng.below(rank);
    size_t j = (size_t)rng.below(rank - 1);
    if (j >= i) ++j;
    out = compose(nielsen_move(rose, i, j), out);
  }
  return out;
}

namespace {

std::string classify(const GraphMap& map, const SearchBudget& budget) {
  IwipReport report = certify_iwip(map, budget);
  if (report.certified) {
    if (report.index.total.twice > 2 * ((long long)map.source().rank() - 1))
      throw internal_error("certified sample violates the index bound");
    std::string list = "[";
    for (size_t i = 0; i < report.index.entries.size(); ++i) {
      if (i) list += ", ";
      list += report.index.entries[i].index.str();
    }
    list += "]";
    return "certified " + list;
  }
  if (report.inp) return "inconclusive: periodic INP";
  return "inconclusive: other";
}

}  // namespace

SurveyResult run_survey(const SurveyOptions& options) {
  if (options.rank < 2) throw invalid_input("rank must be >= 2");
  size_t threads = std::max<size_t>(1, options.threads);
  threads = std::min(threads, std::max<size_t>(1, options.count));

  std::vector<std::map<std::string, size_t>> partial(threads);
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (size_t i = t; i < options.count; i += threads) {
        GraphMap sample = random_positive_automorphism(options.rank, options.seed, i);
        partial[t][classify(sample, options.budget)]++;
      }
    });
  }
  for (auto& th : pool) th.join();

  SurveyResult result;
  for (const auto& m : partial)
    for (const auto& [key, n] : m) result.histogram[key] += n;
  return result;
}

std::string survey_report(const SurveyOptions& options, const SurveyResult& result) {
  std::ostringstream os;
  os << "survey rank=" << options.rank << " count=" << options.count << " seed=" << options.seed
     << '\n';
  for (const auto& [key, n] : result.histogram) os << "  " << n << "  " << key << '\n';
  return os.str();
}

}  // namespace ttk
