#include "ttk/long_turns.hpp"

#include <algorithm>

namespace ttk {

namespace {

// legal continuations per direction, canonical order
std::vector<std::vector<Dir>> continuations(const Graph& g, const GateStructure& gates) {
  std::vector<std::vector<Dir>> cont(g.dir_count());
  for (Dir d = 0; d < g.dir_count(); ++d) {
    for (Dir e : g.star(g.term(d)))
      if (gates.gate_of(e) != gates.gate_of(reversed(d))) cont[d].push_back(e);
  }
  return cont;
}

constexpr uint64_t kCountCap = uint64_t(1) << 62;

}  // namespace

LongTurn LongTurn::make(const Graph& g, const GateStructure& gates, EdgePath a, EdgePath b) {
  if (a.empty() || b.empty()) throw invalid_input("long turn branches must be nonempty");
  if (a.initial(g) != b.initial(g)) throw invalid_input("long turn branches at different vertices");
  if (a.at(0) == b.at(0)) throw invalid_input("long turn branches share the first direction");
  if (!gates.is_legal_path(a) || !gates.is_legal_path(b))
    throw invalid_input("long turn branches must be legal");
  if (compare_paths(g, a.dirs(), b.dirs()) > 0) std::swap(a, b);
  return LongTurn{std::move(a), std::move(b)};
}

bool lt_is_legal(const GateStructure& gates, const LongTurn& turn) {
  return gates.gate_of(turn.branch1.at(0)) != gates.gate_of(turn.branch2.at(0));
}

namespace {

// Streams the letters of the image of a fixed path without materializing it.
struct ImageStream {
  const GraphMap& map;
  std::span<const Dir> path;
  size_t edge = 0;    // index into path
  size_t letter = 0;  // index into the image of path[edge]

  bool done() const { return edge == path.size(); }
  Dir peek() const { return map.image_letter(path[edge], letter); }
  void advance() {
    if (++letter == map.image_length(path[edge])) {
      letter = 0;
      ++edge;
    }
  }
};

}  // namespace

LTImage lt_image(const GraphMap& map, const LongTurn& turn) {
  ImageStream s1{map, turn.branch1.dirs()};
  ImageStream s2{map, turn.branch2.dirs()};
  size_t stripped = 0;
  while (!s1.done() && !s2.done() && s1.peek() == s2.peek()) {
    s1.advance();
    s2.advance();
    ++stripped;
  }
  if (s1.done() || s2.done()) return LTImage{std::nullopt, stripped, false};

  const Graph& tg = map.target();
  Vertex v = tg.init(s1.peek());
  EdgePath r1(v), r2(v);
  for (; !s1.done(); s1.advance()) r1.append(s1.peek());
  for (; !s2.done(); s2.advance()) r2.append(s2.peek());
  bool swapped = compare_paths(tg, r1.dirs(), r2.dirs()) > 0;
  if (swapped) std::swap(r1, r2);
  return LTImage{LongTurn{std::move(r1), std::move(r2)}, stripped, swapped};
}

LongTurn lt_truncate(const LongTurn& turn, size_t c) {
  if (c < 1) throw invalid_input("truncation length must be >= 1");
  if (turn.branch1.length() < c || turn.branch2.length() < c)
    throw invalid_input("truncation length exceeds a branch length");
  auto cut = [&](const EdgePath& p) {
    return EdgePath(p.anchor(), std::vector<Dir>(p.dirs().begin(), p.dirs().begin() + c));
  };
  // prefixes keep the first directions, so the canonical order is unchanged
  return LongTurn{cut(turn.branch1), cut(turn.branch2)};
}

std::vector<uint64_t> legal_path_counts(const Graph& g, const GateStructure& gates, size_t c) {
  auto cont = continuations(g, gates);
  std::vector<uint64_t> cur(g.dir_count(), 1);
  for (size_t k = 1; k < c; ++k) {
    std::vector<uint64_t> nxt(g.dir_count(), 0);
    for (Dir d = 0; d < g.dir_count(); ++d) {
      uint64_t total = 0;
      for (Dir e : cont[d]) {
        total += cur[e];
        if (total >= kCountCap) { total = kCountCap; break; }
      }
      nxt[d] = total;
    }
    cur = std::move(nxt);
  }
  return cur;
}

uint64_t count_lt_c(const Graph& g, const GateStructure& gates, size_t c) {
  auto counts = legal_path_counts(g, gates, c);
  uint64_t total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto star = g.star(v);
    for (size_t i = 0; i < star.size(); ++i)
      for (size_t j = i + 1; j < star.size(); ++j) {
        uint64_t prod;
        if (counts[star[i]] != 0 && counts[star[j]] > kCountCap / counts[star[i]])
          prod = kCountCap;
        else
          prod = counts[star[i]] * counts[star[j]];
        total = (total > kCountCap - prod) ? kCountCap : total + prod;
      }
  }
  return total;
}

std::vector<EdgePath> enumerate_legal_paths(const Graph& g, const GateStructure& gates, Vertex v,
                                            size_t c, size_t max_paths) {
  if (c < 1) throw invalid_input("path length must be >= 1");
  auto cont = continuations(g, gates);
  std::vector<EdgePath> out;
  std::vector<Dir> stack;
  auto rec = [&](auto&& self, Dir d) -> void {
    stack.push_back(d);
    if (stack.size() == c) {
      if (out.size() >= max_paths) throw budget_exceeded("too many legal paths to enumerate");
      out.emplace_back(v, stack);
    } else {
      for (Dir e : cont[d]) self(self, e);
    }
    stack.pop_back();
  };
  for (Dir d : g.star(v)) rec(rec, d);
  return out;
}

std::vector<LongTurn> enumerate_lt_c(const Graph& g, const GateStructure& gates, size_t c,
                                     size_t max_turns) {
  LegalPathTable table(g, gates, c, max_turns);
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto star = g.star(v);
    for (size_t i = 0; i < star.size(); ++i)
      for (size_t j = i + 1; j < star.size(); ++j) {
        for (uint32_t p = table.block_begin(star[i]); p < table.block_end(star[i]); ++p)
          for (uint32_t q = table.block_begin(star[j]); q < table.block_end(star[j]); ++q) {
            if (pairs.size() >= max_turns) throw budget_exceeded("too many long turns to enumerate");
            pairs.emplace_back(p, q);
          }
      }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<LongTurn> out;
  out.reserve(pairs.size());
  for (auto [p, q] : pairs) out.push_back(LongTurn{table.as_path(p), table.as_path(q)});
  return out;
}

ExpansionProfile expansion_profile(const GraphMap& map, const GateStructure& gates,
                                   size_t search_bound) {
  if (!map.is_self_map()) throw invalid_input("expansion profile needs a self-map");
  const Graph& g = map.source();
  auto cont = continuations(g, gates);

  ExpansionProfile out;
  out.cancellation = cancellation_bound(map);

  constexpr uint64_t kInf = UINT64_MAX;
  // min total image length over legal paths of length k starting at d;
  // kInf when no legal length-k path starts at d
  std::vector<uint64_t> cur(g.dir_count());
  for (Dir d = 0; d < g.dir_count(); ++d) cur[d] = map.image_length(d);
  for (size_t k = 1; k <= search_bound; ++k) {
    bool every_path_gains = true;
    for (Dir d = 0; d < g.dir_count(); ++d)
      if (cur[d] != kInf && cur[d] < (uint64_t)k + 1) { every_path_gains = false; break; }
    if (every_path_gains) {
      out.strong_expansion_k = k;
      out.expansion_bound = std::max(k, k * out.cancellation);
      return out;
    }
    if (k == search_bound) break;
    std::vector<uint64_t> nxt(g.dir_count(), kInf);
    for (Dir d = 0; d < g.dir_count(); ++d) {
      uint64_t best = kInf;
      for (Dir e : cont[d])
        if (cur[e] != kInf) best = std::min(best, cur[e]);
      if (best != kInf) nxt[d] = best + map.image_length(d);
    }
    cur = std::move(nxt);
  }
  return out;
}

std::optional<size_t> turn_cancellation_bound(const GraphMap& map, const GateStructure& gates,
                                              size_t cap) {
  if (!map.is_self_map()) throw invalid_input("turn cancellation bound needs a self-map");
  const Graph& g = map.source();
  auto cont = continuations(g, gates);

  // state: the two streams sit at letter i of f(d1) and letter j of f(d2);
  // value = sup of further agreement from here (SIZE_MAX marks infinity)
  const size_t nd = g.dir_count();
  size_t maxlen = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) maxlen = std::max(maxlen, map.edge_image(e).length());
  auto key = [&](Dir d1, size_t i, Dir d2, size_t j) {
    return ((d1 * maxlen + i) * nd + d2) * maxlen + j;
  };
  std::vector<int8_t> mark(nd * maxlen * nd * maxlen, 0);  // 0 new, 1 open, 2 done
  std::vector<size_t> best(nd * maxlen * nd * maxlen, 0);

  auto rec = [&](auto&& self, Dir d1, size_t i, Dir d2, size_t j) -> size_t {
    // roll over exhausted streams before comparing
    if (i == map.image_length(d1)) {
      size_t out = 0;
      for (Dir c1 : cont[d1]) {
        size_t v = self(self, c1, 0, d2, j);
        if (v == SIZE_MAX) return SIZE_MAX;
        out = std::max(out, v);
      }
      return out;
    }
    if (j == map.image_length(d2)) {
      size_t out = 0;
      for (Dir c2 : cont[d2]) {
        size_t v = self(self, d1, i, c2, 0);
        if (v == SIZE_MAX) return SIZE_MAX;
        out = std::max(out, v);
      }
      return out;
    }
    size_t k = key(d1, i, d2, j);
    if (mark[k] == 2) return best[k];
    if (mark[k] == 1) return SIZE_MAX;  // agreement cycle: unbounded
    mark[k] = 1;
    size_t out = 0;
    if (map.image_letter(d1, i) == map.image_letter(d2, j)) {
      size_t v = self(self, d1, i + 1, d2, j + 1);
      out = (v == SIZE_MAX) ? SIZE_MAX : v + 1;
    }
    mark[k] = 2;
    best[k] = out;
    return out;
  };

  size_t bound = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto star = g.star(v);
    for (size_t i = 0; i < star.size(); ++i)
      for (size_t j = i + 1; j < star.size(); ++j) {
        size_t val = rec(rec, star[i], 0, star[j], 0);
        if (val == SIZE_MAX || val > cap) return std::nullopt;
        bound = std::max(bound, val);
      }
  }
  return bound;
}

std::optional<size_t> pipeline_expansion_bound(const GraphMap& map, const GateStructure& gates,
                                               size_t k_search_bound) {
  ExpansionProfile profile = expansion_profile(map, gates, k_search_bound);
  if (!profile.strong_expansion_k) return std::nullopt;
  size_t k = *profile.strong_expansion_k;
  size_t via_volume = profile.cancellation;
  auto tight = turn_cancellation_bound(map, gates);
  size_t bound = tight ? std::min(via_volume, *tight + 1) : via_volume;
  return std::max(k, k * bound);
}

LegalPathTable::LegalPathTable(const Graph& g, const GateStructure& gates, size_t c,
                               uint64_t max_paths)
    : graph_(&g), c_(c) {
  if (c < 1) throw invalid_input("path length must be >= 1");
  auto counts = legal_path_counts(g, gates, c);
  uint64_t total = 0;
  for (Dir d = 0; d < g.dir_count(); ++d) {
    total += counts[d];
    if (total > max_paths)
      throw budget_exceeded("legal path table would exceed the budget (length " +
                            std::to_string(c) + ")");
  }
  count_ = (size_t)total;
  flat_.reserve(count_ * c_);
  block_begin_.assign(g.dir_count() + 1, 0);

  auto cont = continuations(g, gates);
  std::vector<Dir> stack;
  auto rec = [&](auto&& self, Dir d) -> void {
    stack.push_back(d);
    if (stack.size() == c_)
      flat_.insert(flat_.end(), stack.begin(), stack.end());
    else
      for (Dir e : cont[d]) self(self, e);
    stack.pop_back();
  };
  for (uint32_t r = 0; r < g.dir_count(); ++r) {
    block_begin_[r] = (uint32_t)(flat_.size() / c_);
    rec(rec, g.dir_at_rank(r));
  }
  block_begin_[g.dir_count()] = (uint32_t)(flat_.size() / c_);
  if (flat_.size() / c_ != count_) throw internal_error("path count mismatch");
}

uint32_t LegalPathTable::find(std::span<const Dir> dirs) const {
  if (dirs.size() != c_) throw internal_error("find: wrong path length");
  uint32_t lo = block_begin(dirs[0]), hi = block_end(dirs[0]);
  while (lo < hi) {
    uint32_t mid = lo + (hi - lo) / 2;
    if (compare_paths(*graph_, path(mid), dirs) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo >= block_end(dirs[0]) || !std::equal(dirs.begin(), dirs.end(), path(lo).begin()))
    throw internal_error("image path missing from the legal path table");
  return lo;
}

EdgePath LegalPathTable::as_path(uint32_t id) const {
  auto p = path(id);
  return EdgePath(graph_->init(p[0]), std::vector<Dir>(p.begin(), p.end()));
}

StepResult lt_step(const GraphMap& map, const GateStructure& gates, const LegalPathTable& table,
                   uint32_t p, uint32_t q) {
  ImageStream s1{map, table.path(p)};
  ImageStream s2{map, table.path(q)};
  size_t stripped = 0;
  while (!s1.done() && !s2.done() && s1.peek() == s2.peek()) {
    s1.advance();
    s2.advance();
    ++stripped;
  }
  if (s1.done() || s2.done())
    throw internal_error("degenerate image inside the truncated long-turn map");

  const size_t c = table.length();
  std::vector<Dir> r1, r2;
  r1.reserve(c);
  r2.reserve(c);
  for (; r1.size() < c; s1.advance()) {
    if (s1.done()) throw internal_error("image branch shorter than the truncation length");
    r1.push_back(s1.peek());
  }
  for (; r2.size() < c; s2.advance()) {
    if (s2.done()) throw internal_error("image branch shorter than the truncation length");
    r2.push_back(s2.peek());
  }

  StepResult out;
  out.stripped = stripped;
  out.swapped = map.source().dir_rank(r1[0]) > map.source().dir_rank(r2[0]);
  uint32_t ip = table.find(r1), iq = table.find(r2);
  if (out.swapped) std::swap(ip, iq);
  out.p = ip;
  out.q = iq;
  out.legal = gates.gate_of(r1[0]) != gates.gate_of(r2[0]);
  return out;
}

LtMapC::LtMapC(const GraphMap& map, const GateStructure& gates, size_t c, bool validate_all,
               uint64_t max_turns)
    : map_(&map), gates_(&gates), c_(c) {
  if (!map.is_self_map()) throw invalid_input("the truncated long-turn map needs a self-map");
  auto profile = expansion_profile(map, gates, c);
  if (!profile.expansion_bound || c < *profile.expansion_bound)
    throw invalid_input("truncation length below the expansion bound");
  if (validate_all) {
    LegalPathTable table(map.source(), gates, c, max_turns);
    const Graph& g = map.source();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      auto star = g.star(v);
      for (size_t i = 0; i < star.size(); ++i)
        for (size_t j = i + 1; j < star.size(); ++j)
          for (uint32_t p = table.block_begin(star[i]); p < table.block_end(star[i]); ++p)
            for (uint32_t q = table.block_begin(star[j]); q < table.block_end(star[j]); ++q)
              lt_step(map, gates, table, p, q);  // throws if not total
    }
  }
}

LongTurn LtMapC::operator()(const LongTurn& turn) const {
  if (turn.branch1.length() != c_ || turn.branch2.length() != c_)
    throw invalid_input("turn branch length does not match the map's truncation length");
  LTImage img = lt_image(*map_, turn);
  if (img.degenerate()) throw internal_error("degenerate image inside the truncated long-turn map");
  if (img.turn->branch1.length() < c_ || img.turn->branch2.length() < c_)
    throw internal_error("image branch shorter than the truncation length");
  return lt_truncate(*img.turn, c_);
}

IllegalTurnDynamics analyze_illegal_turns(const GraphMap& map, const GateStructure& gates,
                                          const LegalPathTable& table, uint64_t max_turns) {
  const Graph& g = map.source();

  // same-gate first-direction pairs; each contributes a dense block of turns
  struct Block {
    Dir d1, d2;
    uint32_t n1, n2;
    uint64_t offset;
  };
  std::vector<Block> blocks;
  std::vector<int32_t> pair_index(g.dir_count() * g.dir_count(), -1);
  uint64_t total = 0;
  for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
    auto members = gates.gate_members(gid);
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j) {
        Dir d1 = members[i], d2 = members[j];
        uint32_t n1 = table.block_end(d1) - table.block_begin(d1);
        uint32_t n2 = table.block_end(d2) - table.block_begin(d2);
        if (n1 == 0 || n2 == 0) continue;
        pair_index[d1 * g.dir_count() + d2] = (int32_t)blocks.size();
        blocks.push_back({d1, d2, n1, n2, total});
        total += (uint64_t)n1 * n2;
        if (total > max_turns)
          throw budget_exceeded("illegal long-turn set exceeds the budget (" +
                                std::to_string(total) + " turns)");
      }
  }

  IllegalTurnDynamics out;
  out.illegal_turn_count = total;
  if (total == 0) {
    out.max_steps_to_legal = 0;
    return out;
  }

  // res: 0 unseen, -1 on stack, -2 feeds a cycle, -(3+cid) on cycle cid,
  // k >= 1 steps until the image turn is legal
  std::vector<int32_t> res(total, 0);
  std::vector<std::pair<uint32_t, uint32_t>> cycle_meta;  // (length, parity)

  auto node_of = [&](uint32_t p, uint32_t q) -> int64_t {
    Dir d1 = table.path(p)[0], d2 = table.path(q)[0];
    int32_t b = pair_index[d1 * g.dir_count() + d2];
    if (b < 0) return -1;
    const Block& blk = blocks[b];
    return (int64_t)(blk.offset + (uint64_t)(p - table.block_begin(d1)) * blk.n2 +
                     (q - table.block_begin(d2)));
  };

  struct Frame {
    uint64_t node;
    uint32_t p, q;
    bool swap_out;  // step leaving this node swaps the branches
  };
  std::vector<Frame> stack;
  uint32_t max_steps = 0;
  bool has_cycle = false;

  for (const Block& blk : blocks) {
    for (uint32_t i = 0; i < blk.n1; ++i)
      for (uint32_t j = 0; j < blk.n2; ++j) {
        uint64_t start = blk.offset + (uint64_t)i * blk.n2 + j;
        if (res[start] != 0) continue;
        uint32_t p = table.block_begin(blk.d1) + i;
        uint32_t q = table.block_begin(blk.d2) + j;
        stack.clear();
        uint64_t node = start;
        int32_t tail;  // steps value the unwind starts from; <=0 markers handled below
        bool tail_feeds = false, tail_cycle_member = false;
        while (true) {
          res[node] = -1;
          StepResult step = lt_step(map, gates, table, p, q);
          stack.push_back({node, p, q, step.swapped});
          if (step.legal) {
            tail = 0;
            break;
          }
          int64_t next = node_of(step.p, step.q);
          if (next < 0) throw internal_error("illegal image turn not in the illegal-turn table");
          if (res[next] == -1) {
            // found a new cycle: frames from `next` to the top
            size_t k = stack.size();
            while (stack[k - 1].node != (uint64_t)next) --k;
            uint32_t len = (uint32_t)(stack.size() - (k - 1));
            uint32_t parity = 0;
            for (size_t t = k - 1; t < stack.size(); ++t) parity ^= stack[t].swap_out ? 1 : 0;
            uint32_t cid = (uint32_t)cycle_meta.size();
            cycle_meta.emplace_back(len, parity);
            for (size_t t = k - 1; t < stack.size(); ++t) res[stack[t].node] = -(int32_t)(3 + cid);
            stack.resize(k - 1);
            tail_cycle_member = true;
            tail = 0;
            has_cycle = true;
            break;
          }
          if (res[next] != 0) {
            if (res[next] >= 1)
              tail = res[next];
            else {
              tail_feeds = true;
              tail = 0;
            }
            break;
          }
          node = (uint64_t)next;
          p = step.p;
          q = step.q;
        }
        // unwind
        for (size_t t = stack.size(); t-- > 0;) {
          if (tail_feeds || tail_cycle_member) {
            res[stack[t].node] = -2;
            tail_feeds = true;
            tail_cycle_member = false;
          } else {
            ++tail;
            res[stack[t].node] = tail;
            max_steps = std::max(max_steps, (uint32_t)tail);
          }
        }
      }
  }

  // collect periodic turns in canonical order
  for (const Block& blk : blocks) {
    for (uint32_t i = 0; i < blk.n1; ++i)
      for (uint32_t j = 0; j < blk.n2; ++j) {
        int32_t r = res[blk.offset + (uint64_t)i * blk.n2 + j];
        if (r <= -3) {
          uint32_t cid = (uint32_t)(-r - 3);
          auto [len, parity] = cycle_meta[cid];
          out.periodic.push_back({table.block_begin(blk.d1) + i, table.block_begin(blk.d2) + j,
                                  len, parity ? 2 * len : len});
        }
      }
  }
  std::sort(out.periodic.begin(), out.periodic.end(),
            [](const IllegalTurnDynamics::PeriodicTurn& a, const IllegalTurnDynamics::PeriodicTurn& b) {
              return std::make_pair(a.p, a.q) < std::make_pair(b.p, b.q);
            });
  if (!has_cycle) out.max_steps_to_legal = max_steps;
  return out;
}

}  // namespace ttk
