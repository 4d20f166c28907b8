// scratch: search small rank-3 fixtures for the test suite
#include <iostream>

#include "ttk/certify.hpp"
#include "ttk/io.hpp"
#include "ttk/survey.hpp"

using namespace ttk;

namespace {

std::shared_ptr<const Graph> k4() {
  return std::make_shared<Graph>(
      std::vector<std::string>{"1", "2", "3", "4"},
      std::vector<Graph::Edge>{{"p", 0, 1}, {"q", 0, 2}, {"r", 0, 3},
                               {"s", 1, 2}, {"t", 1, 3}, {"u", 2, 3}});
}

// reduced paths between endpoints, length in [1, maxlen]
std::vector<EdgePath> paths_between(const Graph& g, Vertex from, Vertex to, size_t maxlen) {
  std::vector<EdgePath> out;
  std::vector<Dir> stack;
  auto rec = [&](auto&& self, Vertex at) -> void {
    if (!stack.empty() && at == to) out.emplace_back(from, stack);
    if (stack.size() == maxlen) return;
    for (Dir d : g.star(at)) {
      if (!stack.empty() && d == reversed(stack.back())) continue;
      stack.push_back(d);
      self(self, g.term(d));
      stack.pop_back();
    }
  };
  rec(rec, from);
  return out;
}

bool locally_injective(const GraphMap& m) {
  const Graph& g = m.source();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto star = g.star(v);
    for (size_t i = 0; i < star.size(); ++i)
      for (size_t j = i + 1; j < star.size(); ++j)
        if (m.differential(star[i]) == m.differential(star[j])) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string mode = argc > 1 ? argv[1] : "k4";
  auto g = k4();
  GateStructure discrete = GateStructure::discrete(g);
  uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  size_t maxlen = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 2;

  if (mode == "k4") {
    // random vertex permutation + random short images; keep tt/pi1/expanding/
    // primitive/Wh-connected maps
    SplitMix64 rng{seed};
    std::vector<Vertex> perm{0, 1, 2, 3};
    uint64_t n_inj = 0, n_exp = 0, n_intr = 0, n_pi1 = 0, n_prim = 0;
    for (uint64_t trial = 0; trial < 20000000; ++trial) {
      if (trial % 1000000 == 999999)
        std::cerr << "trial " << trial << " inj " << n_inj << " exp " << n_exp << " intr "
                  << n_intr << " pi1 " << n_pi1 << " prim " << n_prim << "\n";
      std::vector<Vertex> vm = perm;
      for (size_t i = 3; i > 0; --i) std::swap(vm[i], vm[rng.below(i + 1)]);
      std::vector<EdgePath> im;
      bool ok = true;
      for (EdgeId e = 0; e < g->edge_count() && ok; ++e) {
        auto cands = paths_between(*g, vm[g->edge(e).from], vm[g->edge(e).to], maxlen);
        if (cands.empty()) { ok = false; break; }
        im.push_back(cands[rng.below(cands.size())]);
      }
      if (!ok) continue;
      GraphMap f(g, g, vm, std::move(im));
      if (!locally_injective(f)) continue;
      ++n_inj;
      if (!is_expanding(f)) continue;
      ++n_exp;
      if (!(intrinsic_gates(f) == discrete)) continue;
      ++n_intr;
      if (!induces_pi1_automorphism(f)) continue;
      ++n_pi1;
      if (!is_primitive(transition_matrix(f))) continue;
      ++n_prim;
      bool wh = true;
      for (Vertex v = 0; v < 4 && wh; ++v)
        wh = gate_whitehead_graph(f, discrete, v).connected();
      if (!wh) continue;

      // need a power with positive matrix and workable volume
      GraphMap fk = f;
      size_t k = 1;
      while (k <= 26 && !transition_matrix(fk).entrywise_positive() && fk.volume() < 3000) {
        fk = compose(f, fk);
        ++k;
      }
      if (!transition_matrix(fk).entrywise_positive()) continue;

      Document doc;
      doc.add_graph("K4", g);
      doc.add_map("f0", f);
      std::cout << "trial " << trial << " power " << k << " volume " << f.volume() << " -> "
                << fk.volume() << "\n"
                << serialize_document(doc);
      IwipReport rep = certify_iwip(fk);
      std::cout << "certify f0^" << k << ": " << rep.str(*g) << "\n";
      return 0;
    }
    std::cout << "no fixture found\n";
    return 1;
  }

  if (mode == "rose3") {
    // random expanding maps with image lengths 2..3 and primitive matrix
    auto rose = rose_graph(3);
    SplitMix64 rng{seed};
    uint64_t n_tt = 0, n_pi1 = 0, n_prim = 0, n_noinp = 0;
    for (uint64_t trial = 0; trial < 30000000; ++trial) {
      if (trial % 1000000 == 999999)
        std::cerr << "trial " << trial << " tt " << n_tt << " pi1 " << n_pi1 << " prim " << n_prim
                  << " noinp " << n_noinp << "\n";
      std::vector<EdgePath> im;
      for (EdgeId e = 0; e < 3; ++e) {
        size_t len = 2 + rng.below(maxlen - 1);
        std::vector<Dir> w;
        for (size_t i = 0; i < len; ++i) {
          while (true) {
            Dir d = (Dir)rng.below(6);
            if (!w.empty() && d == reversed(w.back())) continue;
            w.push_back(d);
            break;
          }
        }
        im.emplace_back(0, w);
      }
      GraphMap f(rose, rose, {0}, std::move(im));
      GateStructure gates = intrinsic_gates(f);
      if (!is_train_track_morphism(f, gates, gates)) continue;
      ++n_tt;
      if (!induces_pi1_automorphism(f)) continue;
      ++n_pi1;
      if (!is_primitive(transition_matrix(f))) continue;
      ++n_prim;
      if (f.volume() > 8) continue;
      auto pb = pipeline_expansion_bound(f, gates, 4);
      if (!pb || *pb > 6) continue;
      SearchBudget budget;
      budget.max_expansion_bound = 8;
      budget.max_turns = 1u << 20;
      budget.max_paths = 1u << 18;
      try {
        auto search = has_periodic_inp(f, gates, budget);
        if (search.certificate) continue;
        ++n_noinp;
        auto lp = legalizing_power(f, gates, 64, budget);
        bool stable = is_gate_stable(f, gates);
        bool wh = gate_whitehead_graph(f, gates, 0).connected();
        // power with positive matrix
        size_t kpos = 1;
        {
          IntMatrix M = transition_matrix(f), P = M;
          while (kpos <= 26 && !P.entrywise_positive()) { P = P * M; ++kpos; }
        }
        std::cout << "NO-INP a->";
        for (Dir d : f.edge_image(0).dirs()) std::cout << rose->dir_token(d) << ".";
        std::cout << " b->";
        for (Dir d : f.edge_image(1).dirs()) std::cout << rose->dir_token(d) << ".";
        std::cout << " c->";
        for (Dir d : f.edge_image(2).dirs()) std::cout << rose->dir_token(d) << ".";
        std::cout << " | vol " << f.volume() << " C* " << search.expansion_bound << " turns "
                  << search.illegal_turns_searched << " gates " << gates.gate_count() << " legpow "
                  << (lp ? std::to_string(*lp) : "-") << " stable " << stable << " Wh " << wh
                  << " kpos " << kpos << " gatestr [" << gates.str() << "]\n";
        if (n_noinp >= 40) break;
      } catch (const budget_exceeded&) {
        continue;
      }
    }
    std::cerr << "tt " << n_tt << " pi1 " << n_pi1 << " prim " << n_prim << " noinp " << n_noinp
              << "\n";
    return n_noinp > 0 ? 0 : 1;
  }

  if (mode == "legalizers") {
    auto rose = rose_graph(3);
    auto pathst = [&](const std::string& toks) {
      std::vector<Dir> dirs;
      std::string cur;
      auto flush = [&]() {
        if (cur.empty()) return;
        dirs.push_back(*rose->parse_dir_token(cur));
        cur.clear();
      };
      for (char ch : toks) {
        if (ch == ' ') flush();
        else cur += ch;
      }
      flush();
      return EdgePath(0, dirs);
    };
    GraphMap m(rose, rose, {0},
               {pathst("a ~c b"), pathst("~b ~c b"), pathst("c ~a")});
    GateStructure gates = intrinsic_gates(m);
    std::cout << "gates: " << gates.str() << "\n";
    std::cout << "m stable " << is_gate_stable(m, gates) << " legpow "
              << legalizing_power(m, gates).value_or(0) << "\n";

    // all illegal germ turns (branch length 1)
    std::vector<GraphMap> found;
    for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
      auto members = gates.gate_members(gid);
      for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j) {
          LongTurn t = LongTurn::make(*rose, gates, EdgePath(0, {members[i]}),
                                      EdgePath(0, {members[j]}));
          auto res = search_elementary_legalizer(t, gates, maxlen, 3000000);
          std::cout << "turn " << t.str(*rose) << ": ";
          if (!res) {
            std::cout << "NOT FOUND\n";
            continue;
          }
          std::cout << "g_t: a->" << res->edge_image(0).str(*rose) << ", b->"
                    << res->edge_image(1).str(*rose) << ", c->" << res->edge_image(2).str(*rose)
                    << "\n";
          found.push_back(*res);
        }
    }

    // try the factory with the found legalizers and expander m
    std::vector<const GraphMap*> elem;
    for (const auto& g2 : found) elem.push_back(&g2);
    for (const auto& g2 : found) {
      GraphMap primed = compose(m, g2);
      auto pb = pipeline_expansion_bound(primed, gates, 16);
      auto bb = turn_cancellation_bound(primed, gates);
      std::cout << "composed vol " << primed.volume() << " B "
                << (bb ? std::to_string(*bb) : "-") << " C* "
                << (pb ? std::to_string(*pb) : "-") << "\n";
    }
    try {
      FactoryOptions opt;
      opt.branch_length = 1;
      opt.budget.max_expansion_bound = 16;
      FactoryResult fr = legalizing_factory(elem, m, gates, opt);
      std::cout << "factory OK: steps " << fr.steps.size() << " C " << fr.working_length
                << " result vol " << fr.result.volume() << "\n";
      for (auto& st : fr.steps)
        std::cout << "  fixed " << st.fixed_turn.str(*rose) << " " << st.illegal_before << " -> "
                  << st.illegal_after << "\n";
      std::cout << "result gate-stable " << is_gate_stable(fr.result, gates) << "\n";
      std::cout << "result intrinsic == G " << (intrinsic_gates(fr.result) == gates) << "\n";
      Document doc;
      doc.add_graph("R3", rose);
      doc.add_map("gfac", fr.result);
      std::cout << serialize_document(doc);
    } catch (const std::exception& e) {
      std::cout << "factory failed: " << e.what() << "\n";
    }
    return 0;
  }

  if (mode == "pool") {
    auto rose = rose_graph(3);
    auto pathst = [&](const std::string& toks) {
      std::vector<Dir> dirs;
      std::string cur;
      auto flush = [&]() {
        if (cur.empty()) return;
        dirs.push_back(*rose->parse_dir_token(cur));
        cur.clear();
      };
      for (char ch : toks) {
        if (ch == ' ') flush();
        else cur += ch;
      }
      flush();
      return EdgePath(0, dirs);
    };
    GraphMap m(rose, rose, {0}, {pathst("a ~c b"), pathst("~b ~c b"), pathst("c ~a")});
    GateStructure gates = intrinsic_gates(m);

    std::vector<LongTurn> germs;
    for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
      auto members = gates.gate_members(gid);
      for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
          germs.push_back(LongTurn::make(*rose, gates, EdgePath(0, {members[i]}),
                                         EdgePath(0, {members[j]})));
    }

    // pool of tt pi1-automorphisms with legal images of length <= maxlen
    SplitMix64 rng{seed};
    std::vector<GraphMap> pool;
    std::set<std::string> seen;
    auto cont_ok = [&](const std::vector<Dir>& w, Dir d) {
      return w.empty() || gates.gate_of(d) != gates.gate_of(reversed(w.back()));
    };
    for (uint64_t trial = 0; trial < 3000000 && pool.size() < 4000; ++trial) {
      std::vector<EdgePath> im;
      for (EdgeId e = 0; e < 3; ++e) {
        size_t len = 1 + rng.below(maxlen);
        std::vector<Dir> w;
        for (size_t i = 0; i < len; ++i) {
          for (int guard = 0; guard < 40; ++guard) {
            Dir d = (Dir)rng.below(6);
            if (cont_ok(w, d)) { w.push_back(d); break; }
          }
        }
        if (w.empty()) break;
        im.emplace_back(0, w);
      }
      if (im.size() != 3) continue;
      GraphMap f(rose, rose, {0}, std::move(im));
      if (!is_train_track_morphism(f, gates, gates)) continue;
      if (!induces_pi1_automorphism(f)) continue;
      std::string key;
      for (EdgeId e = 0; e < 3; ++e) key += f.edge_image(e).str(*rose) + "|";
      if (!seen.insert(key).second) continue;
      pool.push_back(f);
    }
    std::cerr << "pool size " << pool.size() << "\n";

    // expander candidates: strongly 1-expanding pool members
    std::vector<size_t> expanders;
    for (size_t i = 0; i < pool.size(); ++i) {
      bool all2 = true;
      for (EdgeId e = 0; e < 3; ++e) all2 = all2 && pool[i].edge_image(e).length() >= 2;
      if (all2) expanders.push_back(i);
    }
    std::cerr << "expanders " << expanders.size() << "\n";

    // legalizer lists per germ
    std::vector<std::vector<size_t>> legalizes(germs.size());
    for (size_t i = 0; i < pool.size(); ++i)
      for (size_t t = 0; t < germs.size(); ++t) {
        LTImage img = lt_image(pool[i], germs[t]);
        if (!img.degenerate() && lt_is_legal(gates, *img.turn)) legalizes[t].push_back(i);
      }
    for (size_t t = 0; t < germs.size(); ++t)
      std::cerr << "turn " << germs[t].str(*rose) << ": " << legalizes[t].size()
                << " legalizers\n";

    // pick h and per-turn g_t with all B(h.g_t) small
    size_t best_c = SIZE_MAX;
    for (size_t hi : expanders) {
      std::vector<size_t> choice(germs.size(), SIZE_MAX);
      std::vector<size_t> bounds(germs.size(), SIZE_MAX);
      for (size_t t = 0; t < germs.size(); ++t) {
        for (size_t gi : legalizes[t]) {
          GraphMap primed = compose(pool[hi], pool[gi]);
          auto pb = pipeline_expansion_bound(primed, gates, 8);
          if (pb && *pb < bounds[t]) {
            bounds[t] = *pb;
            choice[t] = gi;
          }
          if (bounds[t] <= 4) break;
        }
      }
      size_t c = 1;
      bool ok = true;
      for (size_t t = 0; t < germs.size(); ++t) {
        if (choice[t] == SIZE_MAX) { ok = false; break; }
        c = std::max(c, bounds[t]);
      }
      if (!ok) continue;
      if (c < best_c) {
        best_c = c;
        std::cout << "h = (" << pool[hi].edge_image(0).str(*rose) << " | "
                  << pool[hi].edge_image(1).str(*rose) << " | "
                  << pool[hi].edge_image(2).str(*rose) << ") C = " << c << "\n";
        for (size_t t = 0; t < germs.size(); ++t)
          std::cout << "  " << germs[t].str(*rose) << " <- ("
                    << pool[choice[t]].edge_image(0).str(*rose) << " | "
                    << pool[choice[t]].edge_image(1).str(*rose) << " | "
                    << pool[choice[t]].edge_image(2).str(*rose) << ") C* " << bounds[t] << "\n";
        if (best_c <= 4) break;
      }
    }
    std::cout << "best C = " << best_c << "\n";
    return 0;
  }

  if (mode == "merged2") {
    // exhaustive over vertex maps and all-length-2 legal images
    Dir dp = forward_dir(0), dq = forward_dir(1);
    std::vector<std::vector<Dir>> blocks;
    blocks.push_back({dp, dq});
    for (Dir d = 0; d < g->dir_count(); ++d)
      if (d != dp && d != dq) blocks.push_back({d});
    GateStructure gates(g, blocks);

    uint64_t n_tt = 0, n_intr = 0, n_pi1 = 0, n_noinp = 0;
    std::vector<Vertex> vm{0, 1, 2, 3};
    std::vector<GraphMap> good;
    auto try_vm = [&](const std::vector<Vertex>& vmap) {
      std::vector<std::vector<EdgePath>> cands(g->edge_count());
      for (EdgeId e = 0; e < g->edge_count(); ++e) {
        for (const EdgePath& p :
             paths_between(*g, vmap[g->edge(e).from], vmap[g->edge(e).to], 2))
          if (p.length() == 2 && gates.is_legal_path(p)) cands[e].push_back(p);
        if (cands[e].empty()) return;
      }
      std::vector<size_t> pick(g->edge_count(), 0);
      while (true) {
        std::vector<EdgePath> im;
        for (EdgeId e = 0; e < g->edge_count(); ++e) im.push_back(cands[e][pick[e]]);
        GraphMap f(g, g, vmap, std::move(im));
        if (is_train_track_morphism(f, gates, gates)) {
          ++n_tt;
          if (intrinsic_gates(f) == gates) {
            ++n_intr;
            if (induces_pi1_automorphism(f)) {
              ++n_pi1;
              SearchBudget budget;
              budget.max_expansion_bound = 16;
              budget.max_turns = 1u << 23;
              try {
                auto search = has_periodic_inp(f, gates, budget);
                std::cout << "candidate vol " << f.volume() << " searched "
                          << search.illegal_turns_searched
                          << (search.certificate ? " INP" : " NO-INP") << "\n";
                if (!search.certificate) {
                  ++n_noinp;
                  good.push_back(f);
                  Document doc;
                  doc.add_graph("K4", g);
                  doc.add_gates("GM", gates);
                  doc.add_map("m" + std::to_string(good.size()), f);
                  std::cout << serialize_document(doc);
                  auto lp = legalizing_power(f, gates);
                  std::cout << "legalizing power: " << (lp ? std::to_string(*lp) : "absent")
                            << ", gate-stable: " << is_gate_stable(f, gates)
                            << ", M positive: "
                            << transition_matrix(f).entrywise_positive();
                  bool wh = true;
                  for (Vertex v = 0; v < 4 && wh; ++v)
                    wh = gate_whitehead_graph(f, gates, v).connected();
                  std::cout << ", Wh connected: " << wh << "\n";
                }
              } catch (const budget_exceeded& e) {
                std::cout << "budget: " << e.what() << "\n";
              }
            }
          }
        }
        size_t e = 0;
        while (e < g->edge_count() && ++pick[e] == cands[e].size()) pick[e++] = 0;
        if (e == g->edge_count()) break;
      }
    };
    // vertex maps: permutations fixing enough structure; try all 256 maps
    for (uint32_t code = 0; code < 256; ++code) {
      std::vector<Vertex> vmap{(Vertex)(code & 3), (Vertex)((code >> 2) & 3),
                               (Vertex)((code >> 4) & 3), (Vertex)((code >> 6) & 3)};
      try_vm(vmap);
      if (n_noinp >= 3) break;
    }
    std::cerr << "tt " << n_tt << " intr " << n_intr << " pi1 " << n_pi1 << " noinp " << n_noinp
              << "\n";
    return n_noinp > 0 ? 0 : 1;
  }

  if (mode == "merged") {
    // gates: {p, q} merged at vertex 1 (directions toward 2 and 3), all else
    // singletons; f must fold p,q immediately and keep everything else
    // injective forever
    Dir dp = forward_dir(0), dq = forward_dir(1);
    std::vector<std::vector<Dir>> blocks;
    blocks.push_back({dp, dq});
    for (Dir d = 0; d < g->dir_count(); ++d)
      if (d != dp && d != dq) blocks.push_back({d});
    GateStructure gates(g, blocks);

    SplitMix64 rng{seed};
    uint64_t n_tt = 0, n_intr = 0, n_exp = 0, n_pi1 = 0;
    for (uint64_t trial = 0; trial < 50000000; ++trial) {
      if (trial % 1000000 == 999999)
        std::cerr << "trial " << trial << " tt " << n_tt << " intr " << n_intr << " exp " << n_exp
                  << " pi1 " << n_pi1 << "\n";
      std::vector<Vertex> vm{0, 1, 2, 3};
      if (rng.below(2)) {
        for (size_t i = 3; i > 0; --i) std::swap(vm[i], vm[rng.below(i + 1)]);
      }
      std::vector<EdgePath> im;
      bool ok = true;
      for (EdgeId e = 0; e < g->edge_count() && ok; ++e) {
        std::vector<EdgePath> cands;
        for (const EdgePath& p : paths_between(*g, vm[g->edge(e).from], vm[g->edge(e).to], maxlen))
          if (gates.is_legal_path(p)) cands.push_back(p);
        if (cands.empty()) { ok = false; break; }
        im.push_back(cands[rng.below(cands.size())]);
      }
      if (!ok) continue;
      GraphMap f(g, g, vm, std::move(im));
      if (!is_train_track_morphism(f, gates, gates)) continue;
      ++n_tt;
      if (!(intrinsic_gates(f) == gates)) continue;
      ++n_intr;
      if (!is_expanding(f)) continue;
      ++n_exp;
      if (!induces_pi1_automorphism(f)) continue;
      ++n_pi1;

      SearchBudget budget;
      budget.max_expansion_bound = 24;
      budget.max_turns = 1u << 23;
      try {
        auto search = has_periodic_inp(f, gates, budget);
        std::cout << "trial " << trial << " volume " << f.volume() << " C* "
                  << search.expansion_bound << " searched " << search.illegal_turns_searched
                  << (search.certificate ? " INP" : " NO-INP") << "\n";
        if (search.certificate) continue;
      } catch (const budget_exceeded& e) {
        continue;
      }

      Document doc;
      doc.add_graph("K4", g);
      doc.add_gates("GM", gates);
      doc.add_map("m0", f);
      std::cout << serialize_document(doc);
      auto lp = legalizing_power(f, gates);
      std::cout << "legalizing power: " << (lp ? std::to_string(*lp) : "absent") << "\n";
      std::cout << "gate-stable: " << is_gate_stable(f, gates) << "\n";
      IwipReport rep = certify_iwip(f);
      std::cout << "certify m0: " << rep.str(*g) << "\n";
      return 0;
    }
    std::cout << "no fixture found\n";
    return 1;
  }

  std::cout << "unknown mode\n";
  return 1;
}
