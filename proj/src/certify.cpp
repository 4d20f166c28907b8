#include "ttk/certify.hpp"

#include <algorithm>
#include <sstream>

namespace ttk {

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

// smallest C dominating every factor's expansion bound
size_t chain_working_length(const std::vector<const GraphMap*>& factors,
                            const GateStructure& gates, const SearchBudget& budget) {
  size_t c = 1;
  for (const GraphMap* f : factors) {
    auto bound = pipeline_expansion_bound(*f, gates, budget.max_expansion_bound);
    if (!bound) throw budget_exceeded("a factor has no expansion bound within the search bound");
    c = std::max(c, *bound);
  }
  if (c > budget.max_expansion_bound)
    throw budget_exceeded("chain expansion bound exceeds the budget");
  return c;
}

// no-INP through the dichotomy: an expanding pi1-automorphism composite that
// is legalizing has no periodic INP
std::optional<InpSearchOutcome> no_inp_via_legalizing(const GraphMap& composite,
                                                      const std::vector<const GraphMap*>& factors,
                                                      const GateStructure& gates,
                                                      const SearchBudget& budget) {
  if (factors.empty()) return std::nullopt;
  if (!is_expanding(composite) || !induces_pi1_automorphism(composite)) return std::nullopt;
  size_t c = chain_working_length(factors, gates, budget);
  LegalizingResult lr = is_legalizing_composite(factors, gates, c, budget);
  if (!lr.legalizing) return std::nullopt;
  InpSearchOutcome out;
  out.power = 1;
  out.expansion_bound = c;
  out.transcript.push_back(
      "composite verified legalizing at branch length " + std::to_string(c) +
      " through its " + std::to_string(factors.size()) +
      " factors; a legalizing expanding pi1-automorphism has no periodic INP");
  return out;
}

}  // namespace

std::vector<std::string> IwipReport::failed_names() const {
  std::vector<std::string> out;
  for (const auto& c : conditions)
    if (!c.passed) out.push_back(c.name);
  return out;
}

std::string IwipReport::str(const Graph& g) const {
  std::ostringstream os;
  os << (certified ? "Certified-iwip" : "Inconclusive (" + join(failed_names(), ", ") + ")");
  for (const auto& c : conditions) {
    os << "\n  " << (c.passed ? "pass" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
  }
  if (inp) os << "\n  periodic INP: " << inp->str(g);
  os << "\n  gate index list " << index.str(g);
  return os.str();
}

IwipReport certify_iwip(const GraphMap& map, const SearchBudget& budget,
                        const std::vector<const GraphMap*>& factorization) {
  IwipReport report;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    report.conditions.push_back({name, ok, detail});
    return ok;
  };

  if (!add("self-map", map.is_self_map())) return report;
  bool pi1 = add("pi1-automorphism", induces_pi1_automorphism(map));
  bool expanding = add("expanding", is_expanding(map));
  GateStructure gates = intrinsic_gates(map);
  bool tt = add("train track w.r.t. intrinsic gates", is_train_track_morphism(map, gates, gates));
  report.index = gate_index_list(map, gates);

  add("primitive transition matrix", is_primitive(transition_matrix(map)));

  {
    bool all_connected = true;
    std::string detail;
    for (Vertex v = 0; v < map.source().vertex_count(); ++v) {
      if (!gate_whitehead_graph(map, gates, v).connected()) {
        all_connected = false;
        detail = "disconnected at " + map.source().vertex_name(v);
        break;
      }
    }
    add("gate-Whitehead graph connected at every vertex", all_connected, detail);
  }

  if (pi1 && expanding && tt) {
    try {
      InpSearchOutcome search = has_periodic_inp(map, gates, budget);
      report.inp_search = search;
      if (search.certificate) {
        report.inp = search.certificate;
        add("no periodic INP", false, "periodic INP found");
      } else {
        add("no periodic INP", true, join(search.transcript, "; "));
      }
    } catch (const budget_exceeded& e) {
      std::optional<InpSearchOutcome> via;
      try {
        via = no_inp_via_legalizing(map, factorization, gates, budget);
      } catch (const budget_exceeded&) {
      }
      if (via) {
        report.inp_search = via;
        add("no periodic INP", true, join(via->transcript, "; "));
      } else {
        add("no periodic INP", false, std::string("search exceeded budget: ") + e.what());
      }
    }
  } else {
    add("no periodic INP", false, "not evaluated: prerequisites failed");
  }

  report.certified = true;
  for (const auto& c : report.conditions) report.certified = report.certified && c.passed;
  return report;
}

bool MainTheoremReport::all_conclusions_certified() const {
  return hypotheses_pass && composite_iwip && composite_iwip->certified && no_inp_search &&
         !no_inp_search->certificate && certified_index && certified_index->certified_stable;
}

std::string MainTheoremReport::str(const Graph& g) const {
  std::ostringstream os;
  os << "hypotheses " << (hypotheses_pass ? "pass" : "FAIL");
  for (const auto& c : hypotheses) {
    os << "\n  " << (c.passed ? "pass" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
  }
  if (!hypotheses_pass) {
    os << "\nno conclusions emitted";
    return os.str();
  }
  os << "\ncomposite (" << composite_order << "):";
  os << "\n  no periodic INP: "
     << (no_inp_search && !no_inp_search->certificate ? "verified" : "FAILED");
  if (no_inp_search) os << " (" << join(no_inp_search->transcript, "; ") << ")";
  os << "\n  iwip: " << (composite_iwip && composite_iwip->certified ? "Certified-iwip" : "NOT certified");
  if (certified_index) os << "\n  certified index list " << certified_index->str(g);
  return os.str();
}

namespace {

MainTheoremReport theorem_impl(const GraphMap& f, const GraphMap& g,
                               const std::optional<GateStructure>& gates_opt, bool swapped,
                               const SearchBudget& budget,
                               const std::vector<const GraphMap*>& g_factors) {
  MainTheoremReport report;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    report.hypotheses.push_back({name, ok, detail});
    return ok;
  };

  bool graphs_ok = f.is_self_map() && g.is_self_map() &&
                   f.source().same_structure(g.source());
  add("f and g are self-maps of one graph", graphs_ok);
  if (!graphs_ok) return report;

  GateStructure gates = gates_opt ? *gates_opt : intrinsic_gates(f);
  if (!gates.graph().same_structure(f.source()))
    throw invalid_input("gate structure on wrong graph");

  bool f_tt = add("f train track w.r.t. G", is_train_track_morphism(f, gates, gates));
  add("f pi1-automorphism", induces_pi1_automorphism(f));
  add("M(f) positive", transition_matrix(f).entrywise_positive());

  bool f_gate_morphism = gate_morphism(f, gates, gates).morphism.has_value();
  if (swapped)
    add("f gate structure morphism w.r.t. G", f_gate_morphism,
        f_gate_morphism ? "" : "Df splits a gate");

  {
    bool connected = true;
    std::string detail;
    if (!f_gate_morphism) {
      connected = false;
      detail = "not evaluated: f is not a gate structure morphism w.r.t. G";
    } else {
      for (Vertex v : periodic_vertices(f)) {
        if (!gate_whitehead_graph(f, gates, v).connected()) {
          connected = false;
          detail = "disconnected at " + f.source().vertex_name(v);
          break;
        }
      }
    }
    add("gate-Whitehead graph of f connected at every periodic vertex", connected, detail);
  }

  bool g_tt = add("g train track w.r.t. G", is_train_track_morphism(g, gates, gates));
  bool g_pi1 = add("g pi1-automorphism", induces_pi1_automorphism(g));
  if (g_tt && g_pi1) {
    try {
      LegalizingResult lr = is_legalizing(g, gates, budget);
      add("g legalizing w.r.t. G", lr.legalizing,
          lr.legalizing ? "" : "witness " + lr.witness->str(g.source()));
    } catch (const budget_exceeded& e) {
      // drive the factorization instead when one is supplied
      bool resolved = false;
      if (!g_factors.empty()) {
        try {
          size_t c = chain_working_length(g_factors, gates, budget);
          LegalizingResult lr = is_legalizing_composite(g_factors, gates, c, budget);
          add("g legalizing w.r.t. G", lr.legalizing,
              lr.legalizing
                  ? "verified through " + std::to_string(g_factors.size()) + " factors"
                  : "witness " + lr.witness->str(g.source()));
          resolved = true;
        } catch (const budget_exceeded&) {
        }
      }
      if (!resolved) add("g legalizing w.r.t. G", false, std::string("budget: ") + e.what());
    }
  } else {
    add("g legalizing w.r.t. G", false, "not evaluated: prerequisites failed");
  }
  add("g gate-stable", is_gate_stable(g, gates));

  report.hypotheses_pass = true;
  for (const auto& c : report.hypotheses) report.hypotheses_pass &= c.passed;
  if (!report.hypotheses_pass) return report;
  (void)f_tt;

  GraphMap composite = swapped ? compose(g, f) : compose(f, g);
  report.composite_order = swapped ? "g after f" : "f after g";
  std::vector<const GraphMap*> chain;  // application order
  if (swapped) {
    chain.push_back(&f);
    if (g_factors.empty())
      chain.push_back(&g);
    else
      chain.insert(chain.end(), g_factors.begin(), g_factors.end());
  } else {
    if (g_factors.empty())
      chain.push_back(&g);
    else
      chain.insert(chain.end(), g_factors.begin(), g_factors.end());
    chain.push_back(&f);
  }
  bool conclusions_ok = false;
  try {
    try {
      report.no_inp_search = has_periodic_inp(composite, gates, budget);
    } catch (const budget_exceeded&) {
      report.no_inp_search = no_inp_via_legalizing(composite, chain, gates, budget);
    }
    report.composite_iwip = certify_iwip(composite, budget, chain);
    conclusions_ok = report.no_inp_search && !report.no_inp_search->certificate &&
                     report.composite_iwip->certified;
  } catch (const budget_exceeded&) {
    conclusions_ok = false;
  }

  IndexReport index = gate_index_list(f, gates);
  index.certified_stable = conclusions_ok;
  if (conclusions_ok && index.total.twice > 2 * ((long long)f.source().rank() - 1))
    throw internal_error("certified index sum exceeds N-1");
  report.certified_index = index;
  return report;
}

}  // namespace

MainTheoremReport theorem_main(const GraphMap& f, const GraphMap& g,
                               const std::optional<GateStructure>& gates,
                               const SearchBudget& budget,
                               const std::vector<const GraphMap*>& g_factors) {
  return theorem_impl(f, g, gates, false, budget, g_factors);
}

MainTheoremReport theorem_main_swapped(const GraphMap& f, const GraphMap& g,
                                       const std::optional<GateStructure>& gates,
                                       const SearchBudget& budget,
                                       const std::vector<const GraphMap*>& g_factors) {
  return theorem_impl(f, g, gates, true, budget, g_factors);
}

MonoidSetup monoid_setup(const std::vector<MonoidGenerator>& generators,
                         const GateStructure& gates, const SearchBudget& budget) {
  MonoidSetup setup;
  setup.admissible = true;
  for (const auto& gen : generators) {
    const GraphMap& f = *gen.map;
    std::vector<ConditionResult> checks;
    auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
      checks.push_back({name, ok, detail});
      if (!ok && setup.admissible) {
        setup.admissible = false;
        setup.rejection = gen.name + ": " + name + (detail.empty() ? "" : " (" + detail + ")");
      }
      return ok;
    };

    bool tt = add("train track w.r.t. G", is_train_track_morphism(f, gates, gates));
    add("intrinsic gate structure equals G", tt && intrinsic_gates(f) == gates);
    add("positive transition matrix", transition_matrix(f).entrywise_positive());
    {
      bool connected = true;
      std::string detail;
      auto gm = gate_morphism(f, gates, gates);
      if (!gm.morphism) {
        connected = false;
        detail = "not a gate structure morphism";
      } else {
        for (Vertex v = 0; v < f.source().vertex_count(); ++v)
          if (!gate_whitehead_graph(f, gates, v).connected()) {
            connected = false;
            detail = "disconnected at " + f.source().vertex_name(v);
            break;
          }
      }
      add("gate-Whitehead graph connected at every vertex", connected, detail);
    }
    {
      bool no_inp = false;
      std::string detail;
      try {
        auto search = has_periodic_inp(f, gates, budget);
        no_inp = !search.certificate;
        if (!no_inp) detail = "periodic INP found";
      } catch (const std::exception& e) {
        detail = e.what();
      }
      add("no periodic INP", no_inp, detail);
    }
    add("gate-stable", is_gate_stable(f, gates));

    size_t exponent = 0;
    if (setup.admissible) {
      try {
        auto k = legalizing_power(f, gates, 0, budget);
        if (add("legalizing power exists within card LT_C", k.has_value())) exponent = *k;
      } catch (const budget_exceeded& e) {
        add("legalizing power exists within card LT_C", false, e.what());
      }
    }
    setup.exponents.push_back(exponent);
    setup.checks.push_back(std::move(checks));
  }
  return setup;
}

MonoidCertification monoid_certify(const std::vector<MonoidGenerator>& generators,
                                   const MonoidSetup& setup, const std::vector<size_t>& word,
                                   const GateStructure& gates, const SearchBudget& budget) {
  if (!setup.admissible)
    throw invalid_input("monoid generator rejected: " + setup.rejection);
  if (word.empty()) throw invalid_input("empty monoid word");
  for (size_t i : word)
    if (i >= generators.size()) throw invalid_input("word refers to an unknown generator");

  // composition applies the rightmost factor first
  std::vector<GraphMap> powers;
  for (size_t i = 0; i < generators.size(); ++i)
    powers.push_back(map_power(*generators[i].map, setup.exponents[i]));

  GraphMap composite = powers[word.back()];
  for (size_t k = word.size() - 1; k-- > 0;) composite = compose(powers[word[k]], composite);

  MonoidCertification cert;
  std::ostringstream w;
  for (size_t k = 0; k < word.size(); ++k) {
    if (k) w << ' ';
    w << generators[word[k]].name << '^' << setup.exponents[word[k]];
  }
  cert.word = w.str();
  std::vector<const GraphMap*> chain;
  for (size_t k = word.size(); k-- > 0;) chain.push_back(&powers[word[k]]);
  cert.iwip = certify_iwip(composite, budget, chain);

  {
    size_t c = chain_working_length(chain, gates, budget);
    try {
      auto lr = is_legalizing_composite(chain, gates, c, budget);
      cert.legalizing = {"composite word legalizing", lr.legalizing,
                         lr.legalizing ? "" : "witness " + lr.witness->str(gates.graph())};
    } catch (const budget_exceeded& e) {
      cert.legalizing = {"composite word legalizing", false, std::string("budget: ") + e.what()};
    }
  }

  cert.index = gate_index_list(composite, gates);
  cert.index.certified_stable = cert.iwip.certified;
  if (cert.index.certified_stable &&
      cert.index.total.twice > 2 * ((long long)gates.graph().rank() - 1))
    throw internal_error("certified index sum exceeds N-1");
  return cert;
}

FactoryResult legalizing_factory(const std::vector<const GraphMap*>& elementary,
                                 const GraphMap& expander, const GateStructure& gates,
                                 const FactoryOptions& options) {
  const Graph& graph = gates.graph();
  const SearchBudget& budget = options.budget;
  const size_t L = options.branch_length;
  auto graph_ptr = gates.graph_ptr();

  for (const GraphMap* g : elementary) {
    if (!g->is_self_map() || !g->source().same_structure(graph))
      throw invalid_input("elementary legalizer is not a self-map of the gate structure's graph");
    if (!is_train_track_morphism(*g, gates, gates))
      throw invalid_input("elementary legalizer is not a train track morphism w.r.t. G");
    if (!induces_pi1_automorphism(*g))
      throw invalid_input("elementary legalizer does not induce a pi1-automorphism");
  }
  if (!is_train_track_morphism(expander, gates, gates))
    throw invalid_input("expander is not a train track morphism w.r.t. G");
  if (!induces_pi1_automorphism(expander))
    throw invalid_input("expander does not induce a pi1-automorphism");
  auto h_profile = expansion_profile(expander, gates, budget.max_expansion_bound);
  if (!h_profile.strong_expansion_k)
    throw invalid_input("expander is not strongly K-expanding within the search bound");

  // assign a legalizer to every illegal branch-length-L turn
  LegalPathTable ltable(graph, gates, L, budget.max_paths);
  struct Assignment {
    uint32_t p, q;     // L-turn path ids
    size_t legalizer;  // index into `elementary`
  };
  std::vector<Assignment> assignments;
  std::map<std::pair<uint32_t, uint32_t>, size_t> assigned;  // L-turn -> assignment index
  for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
    auto members = gates.gate_members(gid);
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j)
        for (uint32_t p = ltable.block_begin(members[i]); p < ltable.block_end(members[i]); ++p)
          for (uint32_t q = ltable.block_begin(members[j]); q < ltable.block_end(members[j]); ++q) {
            LongTurn turn{ltable.as_path(p), ltable.as_path(q)};
            std::optional<size_t> found;
            for (size_t k = 0; k < elementary.size(); ++k) {
              LTImage img = lt_image(*elementary[k], turn);
              if (!img.degenerate() && lt_is_legal(gates, *img.turn)) { found = k; break; }
            }
            if (!found)
              throw invalid_input("missing elementary legalizer for turn " + turn.str(graph));
            assigned[{p, q}] = assignments.size();
            assignments.push_back({p, q, *found});
          }
  }

  // g'_t = expander after g_t, per assigned legalizer
  std::vector<GraphMap> primed;
  primed.reserve(elementary.size());
  size_t c = L;
  for (size_t k = 0; k < elementary.size(); ++k) {
    primed.push_back(compose(expander, *elementary[k]));
    auto bound = pipeline_expansion_bound(primed.back(), gates, budget.max_expansion_bound);
    if (!bound) throw budget_exceeded("no expansion bound for a composed legalizer");
    c = std::max(c, *bound);
  }

  std::vector<GraphMap> factors;
  std::vector<FactoryStep> steps;

  if (assignments.empty())
    return FactoryResult{GraphMap::identity(graph_ptr), std::move(factors), std::move(steps), c};

  // survivors: illegal C-turns whose image under the factor chain is illegal,
  // tracked with their current image turn; kept in canonical (p, q) order
  LegalPathTable table(graph, gates, c, budget.max_paths);
  struct Tracked {
    uint32_t p0, q0;  // original turn
    uint32_t p, q;    // image under the chain so far
  };
  std::vector<Tracked> survivors;
  uint64_t total_illegal = 0;
  for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
    auto members = gates.gate_members(gid);
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j)
        for (uint32_t p = table.block_begin(members[i]); p < table.block_end(members[i]); ++p)
          for (uint32_t q = table.block_begin(members[j]); q < table.block_end(members[j]); ++q) {
            if (++total_illegal > budget.max_turns)
              throw budget_exceeded("factory working set exceeds the budget");
            survivors.push_back({p, q, p, q});
          }
  }
  std::sort(survivors.begin(), survivors.end(),
            [](const Tracked& a, const Tracked& b) {
              return std::make_pair(a.p0, a.q0) < std::make_pair(b.p0, b.q0);
            });

  while (!survivors.empty()) {
    const Tracked& least = survivors.front();
    // branch-length-L subturn of the current image of the least survivor
    LongTurn image{table.as_path(least.p), table.as_path(least.q)};
    LongTurn sub = lt_truncate(image, L);
    uint32_t sp = ltable.find(std::span<const Dir>(sub.branch1.dirs()));
    uint32_t sq = ltable.find(std::span<const Dir>(sub.branch2.dirs()));
    auto it = assigned.find({sp, sq});
    if (it == assigned.end()) throw internal_error("image subturn missing an assignment");
    size_t legalizer = assignments[it->second].legalizer;

    FactoryStep step;
    step.fixed_turn = sub;
    step.illegal_before = survivors.size();

    factors.push_back(primed[legalizer]);
    const GraphMap& factor = factors.back();
    std::vector<Tracked> next;
    for (const Tracked& t : survivors) {
      StepResult st = lt_step(factor, gates, table, t.p, t.q);
      if (!st.legal) next.push_back({t.p0, t.q0, st.p, st.q});
    }
    step.illegal_after = next.size();
    if (next.size() >= survivors.size())
      throw internal_error("factory working set failed to shrink");
    steps.push_back(std::move(step));
    survivors = std::move(next);
  }

  // materialize the composition, applied first-to-last
  GraphMap result = GraphMap::identity(graph_ptr);
  for (const GraphMap& factor : factors) {
    result = compose(factor, result);
    if (result.volume() > budget.max_power_volume)
      throw budget_exceeded("factory composition volume exceeds the budget");
  }

  // the emptied working set certifies the legalizing property; re-verify
  std::vector<const GraphMap*> chain;
  for (const GraphMap& factor : factors) chain.push_back(&factor);
  {
    auto lr = is_legalizing_composite(chain, gates, c, budget);
    if (!lr.legalizing) throw internal_error("factory output is not legalizing");
  }
  try {
    auto direct = is_legalizing(result, gates, budget);
    if (!direct.legalizing) throw internal_error("factory output fails the direct legalizing test");
  } catch (const budget_exceeded&) {
    // the composite verification above already covers it
  }
  return FactoryResult{std::move(result), std::move(factors), std::move(steps), c};
}

namespace {

// legal reduced paths of bounded length between two vertices, lexicographic
std::vector<EdgePath> legal_paths_between(const Graph& g, const GateStructure& gates, Vertex from,
                                          Vertex to, size_t max_len) {
  std::vector<EdgePath> out;
  std::vector<Dir> stack;
  auto rec = [&](auto&& self, Vertex at) -> void {
    if (!stack.empty() && at == to) out.emplace_back(from, stack);
    if (stack.size() == max_len) return;
    for (Dir d : g.star(at)) {
      if (!stack.empty() && gates.gate_of(d) == gates.gate_of(reversed(stack.back()))) continue;
      stack.push_back(d);
      self(self, g.term(d));
      stack.pop_back();
    }
  };
  rec(rec, from);
  return out;
}

}  // namespace

std::optional<GraphMap> search_elementary_legalizer(const LongTurn& turn,
                                                    const GateStructure& gates,
                                                    size_t max_image_length,
                                                    uint64_t max_candidates) {
  auto graph_ptr = gates.graph_ptr();
  const Graph& g = *graph_ptr;
  uint64_t budget = max_candidates;

  // enumerate vertex maps lexicographically
  size_t nv = g.vertex_count();
  std::vector<Vertex> vmap(nv, 0);
  while (true) {
    // candidate images per edge under this vertex map
    std::vector<std::vector<EdgePath>> images(g.edge_count());
    bool feasible = true;
    for (EdgeId e = 0; e < g.edge_count() && feasible; ++e) {
      images[e] =
          legal_paths_between(g, gates, vmap[g.edge(e).from], vmap[g.edge(e).to], max_image_length);
      feasible = !images[e].empty();
    }

    if (feasible) {
      std::vector<size_t> pick(g.edge_count(), 0);
      std::vector<EdgePath> chosen(g.edge_count(), EdgePath(0));

      auto consistent_prefix = [&](size_t upto) {
        // check the train track turn condition on transitions both of whose
        // directions have decided differentials
        for (Vertex v = 0; v < nv; ++v) {
          auto star = g.star(v);
          for (size_t i = 0; i < star.size(); ++i)
            for (size_t j = i + 1; j < star.size(); ++j) {
              if (edge_of(star[i]) > upto || edge_of(star[j]) > upto) continue;
              Turn t{star[i], star[j]};
              if (!gates.is_legal_turn(t)) continue;
              auto first_letter = [&](Dir d) {
                const EdgePath& img = chosen[edge_of(d)];
                return is_forward(d) ? img.at(0) : reversed(img.at(img.length() - 1));
              };
              Turn image{first_letter(t.a), first_letter(t.b)};
              if (!gates.is_legal_turn(image)) return false;
            }
        }
        return true;
      };

      auto rec = [&](auto&& self, EdgeId e) -> std::optional<GraphMap> {
        if (e == g.edge_count()) {
          std::vector<EdgePath> eimg = chosen;
          GraphMap cand(graph_ptr, graph_ptr, vmap, std::move(eimg));
          if (!is_train_track_morphism(cand, gates, gates)) return std::nullopt;
          LTImage img = lt_image(cand, turn);
          if (img.degenerate() || !lt_is_legal(gates, *img.turn)) return std::nullopt;
          if (!induces_pi1_automorphism(cand)) return std::nullopt;
          return cand;
        }
        for (size_t k = 0; k < images[e].size(); ++k) {
          if (budget == 0) return std::nullopt;
          --budget;
          chosen[e] = images[e][k];
          if (!consistent_prefix(e)) continue;
          auto found = self(self, e + 1);
          if (found) return found;
        }
        return std::nullopt;
      };
      auto found = rec(rec, 0);
      if (found) return found;
    }

    if (budget == 0) return std::nullopt;
    size_t v = 0;
    while (v < nv && ++vmap[v] == nv) vmap[v++] = 0;
    if (v == nv) break;
  }
  return std::nullopt;
}

}  // namespace ttk
