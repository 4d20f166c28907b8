#include "ttk/io.hpp"

#include <sstream>

namespace ttk {

const std::shared_ptr<const Graph>& Document::graph(const std::string& name) const {
  auto it = graphs.find(name);
  if (it == graphs.end()) throw invalid_input("unknown graph: " + name);
  return it->second;
}

const GraphMap& Document::map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end()) throw invalid_input("unknown map: " + name);
  return it->second;
}

const GateStructure& Document::gate_structure(const std::string& name) const {
  auto it = gates.find(name);
  if (it == gates.end()) throw invalid_input("unknown gate structure: " + name);
  return it->second;
}

void Document::add_graph(const std::string& name, std::shared_ptr<const Graph> g) {
  if (graphs.count(name) || maps.count(name) || gates.count(name))
    throw invalid_input("duplicate name: " + name);
  graphs.emplace(name, std::move(g));
  items.push_back({Kind::Graph, name});
}

void Document::add_map(const std::string& name, GraphMap m) {
  if (graphs.count(name) || maps.count(name) || gates.count(name))
    throw invalid_input("duplicate name: " + name);
  maps.emplace(name, std::move(m));
  items.push_back({Kind::Map, name});
}

void Document::add_gates(const std::string& name, GateStructure g) {
  if (graphs.count(name) || maps.count(name) || gates.count(name))
    throw invalid_input("duplicate name: " + name);
  gates.emplace(name, std::move(g));
  items.push_back({Kind::Gates, name});
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == '#') break;
    if (isspace((unsigned char)ch)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;

  enum class Mode { Top, Graph, Map, Gates } mode = Mode::Top;
  size_t block_line = 0;
  std::string block_name;

  // graph block state
  std::vector<std::string> vnames;
  std::vector<Graph::Edge> edges;
  std::map<std::string, Vertex> vindex;

  // map block state
  std::shared_ptr<const Graph> msrc, mtgt;
  std::map<Vertex, Vertex> vmap_entries;
  std::map<EdgeId, std::pair<EdgePath, size_t>> emap_entries;  // path and line

  // gates block state
  std::shared_ptr<const Graph> ggraph;
  std::vector<std::vector<Dir>> gate_blocks;

  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;

    switch (mode) {
      case Mode::Top: {
        if (tok[0] == "graph") {
          if (tok.size() != 2) throw parse_error(lineno, "expected: graph NAME");
          mode = Mode::Graph;
          block_line = lineno;
          block_name = tok[1];
          vnames.clear();
          edges.clear();
          vindex.clear();
        } else if (tok[0] == "map") {
          if (tok.size() != 5 || tok[3] != "->")
            throw parse_error(lineno, "expected: map NAME SRC -> TGT");
          mode = Mode::Map;
          block_line = lineno;
          block_name = tok[1];
          if (!doc.graphs.count(tok[2])) throw parse_error(lineno, "unknown graph: " + tok[2]);
          if (!doc.graphs.count(tok[4])) throw parse_error(lineno, "unknown graph: " + tok[4]);
          msrc = doc.graphs.at(tok[2]);
          mtgt = doc.graphs.at(tok[4]);
          vmap_entries.clear();
          emap_entries.clear();
        } else if (tok[0] == "gates") {
          if (tok.size() != 3) throw parse_error(lineno, "expected: gates NAME GRAPH");
          mode = Mode::Gates;
          block_line = lineno;
          block_name = tok[1];
          if (!doc.graphs.count(tok[2])) throw parse_error(lineno, "unknown graph: " + tok[2]);
          ggraph = doc.graphs.at(tok[2]);
          gate_blocks.clear();
        } else {
          throw parse_error(lineno, "unexpected token: " + tok[0]);
        }
        break;
      }
      case Mode::Graph: {
        if (tok[0] == "vertex") {
          if (tok.size() < 2) throw parse_error(lineno, "expected: vertex ID...");
          for (size_t i = 1; i < tok.size(); ++i) {
            if (vindex.count(tok[i])) throw parse_error(lineno, "duplicate vertex id: " + tok[i]);
            vindex[tok[i]] = (Vertex)vnames.size();
            vnames.push_back(tok[i]);
          }
        } else if (tok[0] == "edge") {
          if (tok.size() != 4) throw parse_error(lineno, "expected: edge LABEL FROM TO");
          auto from = vindex.find(tok[2]);
          auto to = vindex.find(tok[3]);
          if (from == vindex.end()) throw parse_error(lineno, "unknown vertex: " + tok[2]);
          if (to == vindex.end()) throw parse_error(lineno, "unknown vertex: " + tok[3]);
          edges.push_back({tok[1], from->second, to->second});
        } else if (tok[0] == "endgraph") {
          try {
            doc.add_graph(block_name, std::make_shared<Graph>(vnames, edges));
          } catch (const invalid_input& e) {
            throw parse_error(block_line, e.what());
          }
          mode = Mode::Top;
        } else {
          throw parse_error(lineno, "unexpected token in graph block: " + tok[0]);
        }
        break;
      }
      case Mode::Map: {
        if (tok[0] == "vmap") {
          if (tok.size() != 3) throw parse_error(lineno, "expected: vmap V V'");
          auto v = msrc->find_vertex(tok[1]);
          auto w = mtgt->find_vertex(tok[2]);
          if (!v) throw parse_error(lineno, "unknown source vertex: " + tok[1]);
          if (!w) throw parse_error(lineno, "unknown target vertex: " + tok[2]);
          vmap_entries[*v] = *w;
        } else if (tok[0] == "emap") {
          if (tok.size() < 2) throw parse_error(lineno, "expected: emap LABEL TOK...");
          auto e = msrc->find_edge(tok[1]);
          if (!e) throw parse_error(lineno, "unknown source edge: " + tok[1]);
          if (tok.size() == 2) throw parse_error(lineno, "contracted edge: " + tok[1]);
          std::vector<Dir> dirs;
          for (size_t i = 2; i < tok.size(); ++i) {
            auto d = mtgt->parse_dir_token(tok[i]);
            if (!d) throw parse_error(lineno, "unknown direction token: " + tok[i]);
            dirs.push_back(*d);
          }
          Vertex anchor = mtgt->init(dirs[0]);
          emap_entries.emplace(*e, std::make_pair(EdgePath(anchor, std::move(dirs)), lineno));
        } else if (tok[0] == "endmap") {
          std::vector<Vertex> vm(msrc->vertex_count());
          for (Vertex v = 0; v < msrc->vertex_count(); ++v) {
            auto it = vmap_entries.find(v);
            if (it == vmap_entries.end())
              throw parse_error(block_line, "missing vmap for vertex " + msrc->vertex_name(v));
            vm[v] = it->second;
          }
          std::vector<EdgePath> im;
          for (EdgeId e = 0; e < msrc->edge_count(); ++e) {
            auto it = emap_entries.find(e);
            if (it == emap_entries.end())
              throw parse_error(block_line, "missing emap for edge " + msrc->edge_label(e));
            im.push_back(it->second.first);
          }
          try {
            doc.add_map(block_name, GraphMap(msrc, mtgt, std::move(vm), std::move(im)));
          } catch (const invalid_input& e) {
            throw parse_error(block_line, e.what());
          }
          mode = Mode::Top;
        } else {
          throw parse_error(lineno, "unexpected token in map block: " + tok[0]);
        }
        break;
      }
      case Mode::Gates: {
        if (tok[0] == "gate") {
          if (tok.size() < 3) throw parse_error(lineno, "expected: gate VERTEX TOK...");
          auto v = ggraph->find_vertex(tok[1]);
          if (!v) throw parse_error(lineno, "unknown vertex: " + tok[1]);
          std::vector<Dir> dirs;
          for (size_t i = 2; i < tok.size(); ++i) {
            auto d = ggraph->parse_dir_token(tok[i]);
            if (!d) throw parse_error(lineno, "unknown direction token: " + tok[i]);
            if (ggraph->init(*d) != *v)
              throw parse_error(lineno, "direction " + tok[i] + " does not start at " + tok[1]);
            dirs.push_back(*d);
          }
          gate_blocks.push_back(std::move(dirs));
        } else if (tok[0] == "endgates") {
          try {
            doc.add_gates(block_name, GateStructure(ggraph, gate_blocks));
          } catch (const invalid_input& e) {
            throw parse_error(block_line, e.what());
          }
          mode = Mode::Top;
        } else {
          throw parse_error(lineno, "unexpected token in gates block: " + tok[0]);
        }
        break;
      }
    }
  }
  if (mode != Mode::Top) throw parse_error(block_line, "unterminated block: " + block_name);
  return doc;
}

std::string document_graph_name(const Document& doc, const Graph& g) {
  for (const auto& [name, ptr] : doc.graphs)
    if (ptr.get() == &g || ptr->same_structure(g)) return name;
  throw invalid_input("graph is not part of the document");
}

std::string serialize_document(const Document& doc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& item : doc.items) {
    if (!first) os << '\n';
    first = false;
    switch (item.kind) {
      case Document::Kind::Graph: {
        const Graph& g = *doc.graphs.at(item.name);
        os << "graph " << item.name << '\n';
        os << "vertex";
        for (Vertex v = 0; v < g.vertex_count(); ++v) os << ' ' << g.vertex_name(v);
        os << '\n';
        for (EdgeId e = 0; e < g.edge_count(); ++e)
          os << "edge " << g.edge_label(e) << ' ' << g.vertex_name(g.edge(e).from) << ' '
             << g.vertex_name(g.edge(e).to) << '\n';
        os << "endgraph\n";
        break;
      }
      case Document::Kind::Map: {
        const GraphMap& m = doc.maps.at(item.name);
        os << "map " << item.name << ' ' << document_graph_name(doc, m.source()) << " -> "
           << document_graph_name(doc, m.target()) << '\n';
        for (Vertex v = 0; v < m.source().vertex_count(); ++v)
          os << "vmap " << m.source().vertex_name(v) << ' '
             << m.target().vertex_name(m.vertex_image(v)) << '\n';
        for (EdgeId e = 0; e < m.source().edge_count(); ++e) {
          os << "emap " << m.source().edge_label(e);
          for (Dir d : m.edge_image(e).dirs()) os << ' ' << m.target().dir_token(d);
          os << '\n';
        }
        os << "endmap\n";
        break;
      }
      case Document::Kind::Gates: {
        const GateStructure& gs = doc.gates.at(item.name);
        os << "gates " << item.name << ' ' << document_graph_name(doc, gs.graph()) << '\n';
        for (uint32_t gid = 0; gid < gs.gate_count(); ++gid) {
          os << "gate " << gs.graph().vertex_name(gs.gate_vertex(gid));
          for (Dir d : gs.gate_members(gid)) os << ' ' << gs.graph().dir_token(d);
          os << '\n';
        }
        os << "endgates\n";
        break;
      }
    }
  }
  return os.str();
}

Json to_json(const Graph& g, const GateStructure& gates) {
  Json out = Json::array();
  for (uint32_t gid = 0; gid < gates.gate_count(); ++gid) {
    Json gate;
    gate["vertex"] = g.vertex_name(gates.gate_vertex(gid));
    Json dirs = Json::array();
    for (Dir d : gates.gate_members(gid)) dirs.push_back(g.dir_token(d));
    gate["directions"] = dirs;
    out.push_back(gate);
  }
  return out;
}

Json to_json(const Graph& g, const IndexReport& report) {
  Json out;
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"vertex", g.vertex_name(e.vertex)},
                       {"gates", e.gate_count},
                       {"index", e.index.str()}});
  }
  out["entries"] = entries;
  out["total"] = report.total.str();
  out["rank"] = report.rank;
  out["certified_stable"] = report.certified_stable;
  return out;
}

Json to_json(const Graph& g, const INPCertificate& cert) {
  Json out;
  out["turn"] = {{"branch1", cert.turn.branch1.str(g)}, {"branch2", cert.turn.branch2.str(g)}};
  out["turn_period_unordered"] = cert.turn_period_unordered;
  out["turn_period_ordered"] = cert.turn_period_ordered;
  out["map_power"] = cert.map_power;
  out["branch1"] = {{"path", cert.branch1.str(g)}, {"position", cert.end1.position().str()}};
  out["branch2"] = {{"path", cert.branch2.str(g)}, {"position", cert.end2.position().str()}};
  out["endpoints_at_vertices"] = cert.end1.at_vertex() && cert.end2.at_vertex();
  if (cert.eta) out["eta"] = cert.eta->str(g);
  if (cert.inp_period_ordered) out["period_ordered"] = *cert.inp_period_ordered;
  if (cert.inp_period_unordered) out["period_unordered"] = *cert.inp_period_unordered;
  out["transcript"] = cert.transcript;
  return out;
}

Json to_json(const Graph& g, const InpSearchOutcome& outcome) {
  Json out;
  out["found"] = outcome.certificate.has_value();
  if (outcome.certificate) out["certificate"] = to_json(g, *outcome.certificate);
  out["power"] = outcome.power;
  out["expansion_bound"] = outcome.expansion_bound;
  out["illegal_turns_searched"] = outcome.illegal_turns_searched;
  out["transcript"] = outcome.transcript;
  return out;
}

Json to_json(const std::vector<ConditionResult>& conditions) {
  Json out = Json::array();
  for (const auto& c : conditions)
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

Json to_json(const Graph& g, const IwipReport& report) {
  Json out;
  out["verdict"] = report.certified ? "certified-iwip" : "inconclusive";
  out["failed_conditions"] = report.failed_names();
  out["conditions"] = to_json(report.conditions);
  if (report.inp) out["inp"] = to_json(g, *report.inp);
  if (report.inp_search) out["inp_search"] = to_json(g, *report.inp_search);
  out["index"] = to_json(g, report.index);
  return out;
}

Json to_json(const Graph& g, const MainTheoremReport& report) {
  Json out;
  out["hypotheses"] = to_json(report.hypotheses);
  out["hypotheses_pass"] = report.hypotheses_pass;
  out["composite_order"] = report.composite_order;
  out["all_conclusions_certified"] = report.all_conclusions_certified();
  if (report.composite_iwip) out["composite_iwip"] = to_json(g, *report.composite_iwip);
  if (report.no_inp_search) out["no_inp_search"] = to_json(g, *report.no_inp_search);
  if (report.certified_index) out["certified_index"] = to_json(g, *report.certified_index);
  return out;
}

}  // namespace ttk
