#include "ttk/inp.hpp"

#include <algorithm>
#include <sstream>

namespace ttk {

namespace {

// Increasing piecewise-linear function on a rational interval, given by its
// breakpoints. Branch position maps are built from integer data; composition
// introduces rational breakpoints.
struct PL {
  std::vector<std::pair<Rat, Rat>> pts;  // strictly increasing in x and y

  Rat lo() const { return pts.front().first; }
  Rat hi() const { return pts.back().first; }

  Rat eval(const Rat& x) const {
    if (x < lo() || x > hi()) throw internal_error("PL evaluation outside the domain");
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      if (x <= pts[i + 1].first) {
        const auto& [x0, y0] = pts[i];
        const auto& [x1, y1] = pts[i + 1];
        if (x == x0) return y0;
        Rat slope = (y1 - y0) / (x1 - x0);
        return y0 + slope * (x - x0);
      }
    }
    return pts.back().second;
  }

  // x with eval(x) == y; requires y within the value range
  Rat preimage(const Rat& y) const {
    if (y < pts.front().second || y > pts.back().second)
      throw internal_error("PL preimage outside the value range");
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      if (y <= pts[i + 1].second) {
        const auto& [x0, y0] = pts[i];
        const auto& [x1, y1] = pts[i + 1];
        if (y == y0) return x0;
        Rat slope = (y1 - y0) / (x1 - x0);
        return x0 + (y - y0) / slope;
      }
    }
    return pts.back().first;
  }
};

// outer(inner(x)) restricted to the x where inner(x) lies in outer's domain.
PL compose_clipped(const PL& outer, const PL& inner) {
  // domain of the composite: { x : outer.lo <= inner(x) <= outer.hi }
  Rat x_lo = inner.lo(), x_hi = inner.hi();
  if (inner.pts.front().second < outer.lo()) x_lo = inner.preimage(outer.lo());
  if (inner.pts.back().second > outer.hi()) x_hi = inner.preimage(outer.hi());
  if (x_hi < x_lo) throw internal_error("empty domain while composing branch maps");

  std::vector<Rat> xs{x_lo, x_hi};
  for (const auto& [x, y] : inner.pts)
    if (x_lo < x && x < x_hi) xs.push_back(x);
  for (const auto& [x, y] : outer.pts) {
    if (inner.eval(x_lo) < x && x < inner.eval(x_hi)) xs.push_back(inner.preimage(x));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  PL out;
  for (const Rat& x : xs) out.pts.emplace_back(x, outer.eval(inner.eval(x)));
  return out;
}

// least positive fixed point, with a multiplicity note when a whole segment
// is fixed
std::optional<Rat> least_positive_fixed_point(const PL& f, std::vector<std::string>& notes) {
  std::optional<Rat> best;
  auto consider = [&](const Rat& x) {
    if (x > Rat(0) && (!best || x < *best)) best = x;
  };
  for (size_t i = 0; i + 1 < f.pts.size(); ++i) {
    const auto& [x0, y0] = f.pts[i];
    const auto& [x1, y1] = f.pts[i + 1];
    Rat slope = (y1 - y0) / (x1 - x0);
    if (slope == Rat(1)) {
      if (y0 == x0) {
        notes.push_back("fixed segment [" + x0.str() + ", " + x1.str() + "]; taking the least positive point");
        consider(x0 > Rat(0) ? x0 : x1);
      }
      continue;
    }
    // y0 + s (x - x0) = x
    Rat x = (y0 - slope * x0) / (Rat(1) - slope);
    if (x0 <= x && x <= x1) consider(x);
  }
  if (f.pts.back().second == f.pts.back().first) consider(f.pts.back().first);
  return best;
}

EdgePath reduced_iterate(const GraphMap& map, const EdgePath& path, uint32_t times) {
  EdgePath cur = path;
  for (uint32_t i = 0; i < times; ++i) cur = reduce_path(map.target(), apply_map(map, cur));
  return cur;
}

}  // namespace

std::string INPCertificate::str(const Graph& g) const {
  std::ostringstream os;
  if (eta)
    os << "eta = " << eta->str(g);
  else
    os << "eta = reverse(" << branch1.str(g) << " @" << end1.position().str() << ") * ("
       << branch2.str(g) << " @" << end2.position().str() << ")";
  if (inp_period_ordered) os << ", period " << *inp_period_ordered << " (ordered)";
  if (inp_period_unordered) os << ", period " << *inp_period_unordered << " (unordered)";
  os << "; turn " << turn.str(g) << " has period " << turn_period_unordered
     << " (unordered), " << turn_period_ordered << " (ordered) under power " << map_power;
  return os.str();
}

std::vector<std::pair<LongTurn, uint32_t>> periodic_illegal_turns(const GraphMap& map,
                                                                  const GateStructure& gates,
                                                                  size_t c,
                                                                  const SearchBudget& budget) {
  if (!map.is_self_map()) throw invalid_input("periodic turn search needs a self-map");
  if (!is_train_track_morphism(map, gates, gates))
    throw invalid_input("map is not a train track morphism w.r.t. the gates");
  if (!induces_pi1_automorphism(map))
    throw invalid_input("map does not induce a pi1-automorphism");
  auto bound = pipeline_expansion_bound(map, gates, c);
  if (!bound || c < *bound)
    throw invalid_input("truncation length below the expansion bound");

  LegalPathTable table(map.source(), gates, c, budget.max_paths);
  auto dyn = analyze_illegal_turns(map, gates, table, budget.max_turns);
  std::vector<std::pair<LongTurn, uint32_t>> out;
  for (const auto& pt : dyn.periodic)
    out.emplace_back(LongTurn{table.as_path(pt.p), table.as_path(pt.q)}, pt.period_unordered);
  return out;
}

INPCertificate extract_inp(const GraphMap& map, const LongTurn& turn, uint32_t period) {
  const Graph& g = map.source();
  if (!map.is_self_map()) throw invalid_input("INP extraction needs a self-map");
  if (turn.branch1.length() != turn.branch2.length())
    throw invalid_input("INP extraction needs equal branch lengths");
  const size_t c = turn.branch1.length();
  if (period == 0) throw invalid_input("period must be positive");

  INPCertificate cert;
  cert.turn = turn;
  cert.turn_period_unordered = period;

  // follow the physical (unswapped) pair until it returns; the ordered period
  // is the unordered one or twice it
  EdgePath p1 = turn.branch1, p2 = turn.branch2;
  std::vector<PL> steps1, steps2;
  BigInt total_strip = 0;
  uint32_t t_phys = 0;
  for (uint32_t step = 1; step <= 2 * period; ++step) {
    // images and maximal common prefix
    EdgePath i1 = apply_map(map, p1), i2 = apply_map(map, p2);
    size_t m = 0;
    while (m < i1.length() && m < i2.length() && i1.at(m) == i2.at(m)) ++m;
    if (m == i1.length() || m == i2.length())
      throw invalid_input("turn is not genuinely periodic: image degenerates");
    if (i1.length() - m < c || i2.length() - m < c)
      throw invalid_input("turn is not genuinely periodic: image branch too short");
    total_strip += m;

    // branch position maps (positions after stripping the common prefix)
    auto step_pl = [&](const EdgePath& src) {
      PL pl;
      pl.pts.emplace_back(Rat(0), Rat(BigInt(0) - (long long)m));
      BigInt cum = 0;
      for (size_t i = 0; i < src.length(); ++i) {
        cum += (long long)map.image_length(src.at(i));
        pl.pts.emplace_back(Rat(BigInt(i + 1)), Rat(cum - (long long)m));
      }
      return pl;
    };
    steps1.push_back(step_pl(p1));
    steps2.push_back(step_pl(p2));

    auto cut = [&](const EdgePath& img) {
      return EdgePath(g.init(img.at(m)),
                      std::vector<Dir>(img.dirs().begin() + m, img.dirs().begin() + m + c));
    };
    p1 = cut(i1);
    p2 = cut(i2);
    if (p1 == turn.branch1 && p2 == turn.branch2) { t_phys = step; break; }
  }
  if (t_phys == 0) throw invalid_input("turn did not return within twice the stated period");
  cert.turn_period_ordered = t_phys;
  if (total_strip == 0)
    throw invalid_input("turn never strips a common prefix; it is not illegal-periodic");

  // clip every step to [0, c] and compose around the cycle
  auto window = [&](PL pl) {
    PL id;
    id.pts.emplace_back(Rat(0), Rat(0));
    id.pts.emplace_back(Rat(BigInt(c)), Rat(BigInt(c)));
    return compose_clipped(id, pl);  // restricts the range to [0, c]
  };
  auto solve_branch = [&](std::vector<PL>& steps, const char* name) {
    PL psi = window(steps[0]);
    for (size_t i = 1; i < steps.size(); ++i) psi = compose_clipped(window(steps[i]), psi);
    std::optional<Rat> x = least_positive_fixed_point(psi, cert.transcript);
    if (!x) throw internal_error(std::string("no positive fixed point on ") + name);
    cert.transcript.push_back(std::string(name) + " fixed point at " + x->str() +
                              " (verified psi(x) = x exactly)");
    if (psi.eval(*x) != *x) throw internal_error("fixed point does not verify");
    return *x;
  };
  Rat x1 = solve_branch(steps1, "branch 1");
  Rat x2 = solve_branch(steps2, "branch 2");

  auto split = [&](const EdgePath& branch, const Rat& x, EdgePath& prefix,
                   INPCertificate::BranchEnd& end) {
    BigInt whole = x.num / x.den;
    Rat frac = x - Rat(whole);
    size_t full = (size_t)(unsigned long long)whole;
    prefix = EdgePath(branch.anchor(),
                      std::vector<Dir>(branch.dirs().begin(), branch.dirs().begin() + full));
    end.full_edges = full;
    end.offset = frac;
  };
  split(turn.branch1, x1, cert.branch1, cert.end1);
  split(turn.branch2, x2, cert.branch2, cert.end2);

  if (cert.end1.at_vertex() && cert.end2.at_vertex()) {
    EdgePath eta = cert.branch1.reversed_path(g);
    eta.append(cert.branch2);
    eta = reduce_path(g, eta);
    EdgePath back = reduced_iterate(map, eta, t_phys);
    if (!(back == eta))
      throw internal_error("extracted path is not fixed by the stated power");
    cert.transcript.push_back("[f^" + std::to_string(t_phys) + "(eta)] = eta verified by free reduction");
    cert.eta = eta;
    for (uint32_t s = 1; s <= t_phys; ++s) {
      EdgePath it = reduced_iterate(map, eta, s);
      if (!cert.inp_period_unordered && (it == eta || it == eta.reversed_path(g)))
        cert.inp_period_unordered = s;
      if (it == eta) { cert.inp_period_ordered = s; break; }
    }
  } else {
    cert.transcript.push_back("endpoints are interior; piecewise-linear fixed-point equations verified");
  }

  if (cert.eta && !(reduce_path(g, *cert.eta) == *cert.eta))
    throw internal_error("INP path is not reduced");
  return cert;
}

InpSearchOutcome has_periodic_inp(const GraphMap& map, const GateStructure& gates,
                                  const SearchBudget& budget) {
  if (!map.is_self_map()) throw invalid_input("INP search needs a self-map");
  if (!is_train_track_morphism(map, gates, gates))
    throw invalid_input("map is not a train track morphism w.r.t. the gates");
  if (!is_expanding(map)) throw invalid_input("map is not expanding");
  if (!induces_pi1_automorphism(map))
    throw invalid_input("map does not induce a pi1-automorphism");

  InpSearchOutcome out;

  // no illegal turn at all: nothing can be a periodic INP
  uint64_t illegal_germs = 0;
  for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
    size_t sz = gates.gate_members(gid).size();
    illegal_germs += sz * (sz - 1) / 2;
  }
  if (illegal_germs == 0) {
    out.transcript.push_back("no illegal turns exist; periodic INPs are impossible");
    return out;
  }

  // least power with every edge image of length >= 2 (strongly 1-expanding)
  size_t max_img = 2;
  for (EdgeId e = 0; e < map.source().edge_count(); ++e)
    max_img = std::max(max_img, map.edge_image(e).length());
  size_t p_bound = map.source().dir_count() * max_img;
  GraphMap fp = map;
  uint32_t p = 1;
  auto strongly_1 = [](const GraphMap& m) {
    for (EdgeId e = 0; e < m.source().edge_count(); ++e)
      if (m.edge_image(e).length() < 2) return false;
    return true;
  };
  while (!strongly_1(fp)) {
    if (++p > p_bound) throw invalid_input("no strongly 1-expanding power within the search bound");
    fp = compose(map, fp);
    if (fp.volume() > budget.max_power_volume)
      throw budget_exceeded("power volume exceeds the budget while searching for strong expansion");
  }
  out.power = p;

  auto tight = pipeline_expansion_bound(fp, gates, 4);
  size_t cstar = tight ? *tight : std::max<size_t>(1, fp.volume());
  out.expansion_bound = cstar;
  if (cstar > budget.max_expansion_bound)
    throw budget_exceeded("expansion bound " + std::to_string(cstar) + " exceeds the budget");
  out.transcript.push_back("using power " + std::to_string(p) + " with expansion bound " +
                           std::to_string(cstar));

  LegalPathTable table(map.source(), gates, cstar, budget.max_paths);
  auto dyn = analyze_illegal_turns(fp, gates, table, budget.max_turns);
  out.illegal_turns_searched = dyn.illegal_turn_count;
  out.transcript.push_back("searched " + std::to_string(dyn.illegal_turn_count) +
                           " illegal turns of branch length " + std::to_string(cstar) + "; " +
                           std::to_string(dyn.periodic.size()) + " periodic");
  if (dyn.periodic.empty()) return out;

  const auto& pt = dyn.periodic.front();
  LongTurn turn{table.as_path(pt.p), table.as_path(pt.q)};
  INPCertificate cert = extract_inp(fp, turn, pt.period_unordered);
  cert.map_power = p;
  if (cert.eta && count_illegal_turns(gates, *cert.eta) != 1)
    throw internal_error("INP must cross exactly one illegal turn");
  if (!gates.is_legal_path(cert.branch1) || !gates.is_legal_path(cert.branch2))
    throw internal_error("INP branches must be legal");
  if (cert.eta && p > 1) {
    // re-express the INP periods in terms of the original map
    uint32_t bound = p * cert.turn_period_ordered;
    cert.inp_period_ordered.reset();
    cert.inp_period_unordered.reset();
    const Graph& g = map.source();
    for (uint32_t s = 1; s <= bound; ++s) {
      EdgePath it = reduced_iterate(map, *cert.eta, s);
      if (!cert.inp_period_unordered && (it == *cert.eta || it == cert.eta->reversed_path(g)))
        cert.inp_period_unordered = s;
      if (it == *cert.eta) { cert.inp_period_ordered = s; break; }
    }
  }
  out.certificate = std::move(cert);
  return out;
}

namespace {

// first-letter step: enough to decide image legality of one turn
struct LightStep {
  bool degenerate;
  bool legal;
};

LightStep light_step(const GraphMap& map, const GateStructure& gates, std::span<const Dir> a,
                     std::span<const Dir> b) {
  struct S {
    const GraphMap& m;
    std::span<const Dir> p;
    size_t e = 0, l = 0;
    bool done() const { return e == p.size(); }
    Dir peek() const { return m.image_letter(p[e], l); }
    void adv() {
      if (++l == m.image_length(p[e])) { l = 0; ++e; }
    }
  } s1{map, a}, s2{map, b};
  while (!s1.done() && !s2.done() && s1.peek() == s2.peek()) {
    s1.adv();
    s2.adv();
  }
  if (s1.done() || s2.done()) return {true, false};
  return {false, gates.gate_of(s1.peek()) != gates.gate_of(s2.peek())};
}

uint64_t illegal_germ_count(const GateStructure& gates) {
  uint64_t n = 0;
  for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
    size_t sz = gates.gate_members(gid).size();
    n += sz * (sz - 1) / 2;
  }
  return n;
}

}  // namespace

LegalizingResult is_legalizing(const GraphMap& map, const GateStructure& gates,
                               const SearchBudget& budget) {
  if (!map.is_self_map()) throw invalid_input("legalizing test needs a self-map");
  if (!is_train_track_morphism(map, gates, gates))
    throw invalid_input("map is not a train track morphism w.r.t. the gates");
  if (illegal_germ_count(gates) == 0) return {true, std::nullopt};
  if (!induces_pi1_automorphism(map))
    throw invalid_input("map has no cancellation bound: it is not a pi1-automorphism");

  const size_t c = cancellation_bound(map) + 1;
  LegalPathTable table(map.source(), gates, c, budget.max_paths);
  for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
    auto members = gates.gate_members(gid);
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j)
        for (uint32_t p = table.block_begin(members[i]); p < table.block_end(members[i]); ++p)
          for (uint32_t q = table.block_begin(members[j]); q < table.block_end(members[j]); ++q) {
            LightStep st = light_step(map, gates, table.path(p), table.path(q));
            if (st.degenerate)
              throw internal_error("turn of branch length C(f)+1 must be f-long");
            if (!st.legal)
              return {false, LongTurn{table.as_path(p), table.as_path(q)}};
          }
  }
  return {true, std::nullopt};
}

LegalizingResult is_legalizing_composite(const std::vector<const GraphMap*>& factors,
                                         const GateStructure& gates, size_t c,
                                         const SearchBudget& budget) {
  if (factors.empty()) throw invalid_input("composite legalizing test needs factors");
  for (const GraphMap* f : factors) {
    auto bound = pipeline_expansion_bound(*f, gates, c);
    if (!bound || c < *bound)
      throw invalid_input("truncation length below a factor's expansion bound");
  }
  if (illegal_germ_count(gates) == 0) return {true, std::nullopt};

  LegalPathTable table(gates.graph(), gates, c, budget.max_paths);
  for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
    auto members = gates.gate_members(gid);
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j)
        for (uint32_t p0 = table.block_begin(members[i]); p0 < table.block_end(members[i]); ++p0)
          for (uint32_t q0 = table.block_begin(members[j]); q0 < table.block_end(members[j]); ++q0) {
            uint32_t p = p0, q = q0;
            bool legal = false;
            for (const GraphMap* f : factors) {
              StepResult st = lt_step(*f, gates, table, p, q);
              p = st.p;
              q = st.q;
              if (st.legal) { legal = true; break; }  // legal turns stay legal
            }
            if (!legal)
              return {false, LongTurn{table.as_path(p0), table.as_path(q0)}};
          }
  }
  return {true, std::nullopt};
}

std::optional<size_t> legalizing_power(const GraphMap& map, const GateStructure& gates,
                                       size_t max_power, const SearchBudget& budget) {
  if (illegal_germ_count(gates) == 0) return 1;  // vacuously legalizing
  if (is_legalizing(map, gates, budget).legalizing) return 1;

  auto search = has_periodic_inp(map, gates, budget);
  if (search.certificate) return std::nullopt;  // dichotomy: INP side

  if (max_power == 0) {
    uint64_t card = count_lt_c(map.source(), gates, search.expansion_bound);
    max_power = (size_t)std::min<uint64_t>(card, 1u << 20);
  }

  // drive the branch-length-C* dynamics of f; k-fold composite legality
  // matches legality for f^k by the subturn property
  auto own_bound = pipeline_expansion_bound(map, gates, search.expansion_bound);
  if (own_bound && *own_bound <= search.expansion_bound) {
    LegalPathTable table(map.source(), gates, search.expansion_bound, budget.max_paths);
    auto dyn = analyze_illegal_turns(map, gates, table, budget.max_turns);
    if (dyn.max_steps_to_legal && *dyn.max_steps_to_legal <= max_power)
      return std::max<size_t>(1, *dyn.max_steps_to_legal);
    return std::nullopt;
  }

  // the map itself has no strong expansion constant; test powers directly
  for (size_t k = 2; k <= max_power; ++k) {
    GraphMap fk = map_power(map, k);
    if (fk.volume() > budget.max_power_volume)
      throw budget_exceeded("power volume exceeds the budget in the legalizing power search");
    if (is_legalizing(fk, gates, budget).legalizing) return k;
  }
  return std::nullopt;
}

size_t count_illegal_turns(const GateStructure& gates, const EdgePath& path) {
  size_t n = 0;
  for (const Turn& t : crossed_turns(path))
    if (!gates.is_legal_turn(t)) ++n;
  return n;
}

}  // namespace ttk
