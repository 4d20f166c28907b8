// Train track kit command line: validates documents, computes gate
// structures and index lists, searches for periodic INPs, certifies iwip
// automorphisms, and drives the legalizing factory.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ttk/io.hpp"
#include "ttk/survey.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInconclusive = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ttk::invalid_input("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ttk::invalid_input("cannot write file: " + path);
  out << content;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

size_t env_threads() {
  const char* v = std::getenv("TTK_THREADS");
  if (!v) return 1;
  long n = std::strtol(v, nullptr, 10);
  return n >= 1 ? (size_t)n : 1;
}

void emit(bool json, const ttk::Json& j, const std::string& text) {
  if (json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"train track kit"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable report");

  std::string file, map_name, gates_name, f_name, g_name, maps_arg, word_arg, out_path;
  std::string new_name, legalizers_arg, expander_name;
  bool swapped = false;
  size_t branch_length = 1;
  size_t rank = 2, count = 10;
  uint64_t seed = 0;

  auto* c_validate = app.add_subcommand("validate", "parse and check a document");
  c_validate->add_option("file", file)->required();

  auto* c_gates = app.add_subcommand("gates", "intrinsic gate structure of a self-map");
  c_gates->add_option("file", file)->required();
  c_gates->add_option("--map", map_name)->required();

  auto* c_certify = app.add_subcommand("certify", "iwip criterion report");
  c_certify->add_option("file", file)->required();
  c_certify->add_option("--map", map_name)->required();

  auto* c_inp = app.add_subcommand("inp", "periodic INP search");
  c_inp->add_option("file", file)->required();
  c_inp->add_option("--map", map_name)->required();

  auto* c_legal = app.add_subcommand("legalizing", "legalizing test with witness");
  c_legal->add_option("file", file)->required();
  c_legal->add_option("--map", map_name)->required();
  c_legal->add_option("--gates", gates_name)->required();

  auto* c_index = app.add_subcommand("index", "gate index list");
  c_index->add_option("file", file)->required();
  c_index->add_option("--map", map_name)->required();
  c_index->add_option("--gates", gates_name);

  auto* c_compose = app.add_subcommand("compose", "compose maps (written order, rightmost first)");
  c_compose->add_option("file", file)->required();
  c_compose->add_option("--maps", maps_arg)->required();
  c_compose->add_option("--out", out_path)->required();
  c_compose->add_option("--name", new_name)->default_val("composite");

  auto* c_theorem = app.add_subcommand("theorem", "main theorem pipeline for a pair (f, g)");
  c_theorem->add_option("file", file)->required();
  c_theorem->add_option("--f", f_name)->required();
  c_theorem->add_option("--g", g_name)->required();
  c_theorem->add_option("--gates", gates_name);
  c_theorem->add_flag("--swapped", swapped, "certify g after f instead");

  auto* c_factory = app.add_subcommand("factory", "compose a legalizing morphism");
  c_factory->add_option("file", file)->required();
  c_factory->add_option("--gates", gates_name)->required();
  c_factory->add_option("--legalizers", legalizers_arg)->required();
  c_factory->add_option("--expander", expander_name)->required();
  c_factory->add_option("--out", out_path)->required();
  c_factory->add_option("--L", branch_length)->default_val(1);
  c_factory->add_option("--name", new_name)->default_val("legalizer");

  auto* c_monoid = app.add_subcommand("monoid", "certify a positive word in generators");
  c_monoid->add_option("file", file)->required();
  c_monoid->add_option("--maps", maps_arg)->required();
  c_monoid->add_option("--word", word_arg)->required();
  c_monoid->add_option("--gates", gates_name);

  auto* c_survey = app.add_subcommand("survey", "random positive automorphism survey");
  c_survey->add_option("--rank", rank)->required();
  c_survey->add_option("--count", count)->required();
  c_survey->add_option("--seed", seed)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_validate->parsed()) {
      try {
        ttk::Document doc = ttk::parse_document(read_file(file));
        ttk::Json j{{"command", "validate"},
                    {"ok", true},
                    {"graphs", doc.graphs.size()},
                    {"maps", doc.maps.size()},
                    {"gate_structures", doc.gates.size()}};
        emit(json, j,
             "ok: " + std::to_string(doc.graphs.size()) + " graphs, " +
                 std::to_string(doc.maps.size()) + " maps, " + std::to_string(doc.gates.size()) +
                 " gate structures");
        return kOk;
      } catch (const ttk::parse_error& e) {
        if (json)
          std::cout << ttk::Json{{"command", "validate"}, {"ok", false}, {"error", e.what()}}.dump(2)
                    << '\n';
        else
          std::cerr << "error: " << e.what() << '\n';
        return kInputError;
      }
    }

    ttk::Document doc;
    if (!c_survey->parsed()) doc = ttk::parse_document(read_file(file));

    if (c_gates->parsed()) {
      const ttk::GraphMap& m = doc.map(map_name);
      ttk::GateStructure gs = ttk::intrinsic_gates(m);
      ttk::Json j{{"command", "gates"},
                  {"map", map_name},
                  {"gates", ttk::to_json(m.source(), gs)}};
      emit(json, j, "intrinsic gates of " + map_name + ": " + gs.str());
      return kOk;
    }

    if (c_certify->parsed()) {
      const ttk::GraphMap& m = doc.map(map_name);
      ttk::IwipReport report = ttk::certify_iwip(m);
      ttk::Json j{{"command", "certify"},
                  {"map", map_name},
                  {"report", ttk::to_json(m.source(), report)}};
      emit(json, j, "certify " + map_name + ": " + report.str(m.source()));
      return report.certified ? kOk : kInconclusive;
    }

    if (c_inp->parsed()) {
      const ttk::GraphMap& m = doc.map(map_name);
      try {
        ttk::GateStructure gs = ttk::intrinsic_gates(m);
        ttk::InpSearchOutcome search = ttk::has_periodic_inp(m, gs);
        ttk::Json j{{"command", "inp"},
                    {"map", map_name},
                    {"search", ttk::to_json(m.source(), search)}};
        std::string text = search.certificate
                               ? "periodic INP found: " + search.certificate->str(m.source())
                               : "no periodic INP";
        for (const auto& line : search.transcript) text += "\n  " + line;
        emit(json, j, text);
        return kOk;
      } catch (const std::runtime_error& e) {
        ttk::Json j{{"command", "inp"}, {"map", map_name}, {"error", e.what()}};
        emit(json, j, std::string("inconclusive: ") + e.what());
        return kInconclusive;
      }
    }

    if (c_legal->parsed()) {
      const ttk::GraphMap& m = doc.map(map_name);
      const ttk::GateStructure& gs = doc.gate_structure(gates_name);
      ttk::LegalizingResult r = ttk::is_legalizing(m, gs);
      ttk::Json j{{"command", "legalizing"},
                  {"map", map_name},
                  {"gates", gates_name},
                  {"legalizing", r.legalizing}};
      if (r.witness) j["witness"] = r.witness->str(m.source());
      emit(json, j,
           r.legalizing ? map_name + " is legalizing w.r.t. " + gates_name
                        : map_name + " is not legalizing; witness " + r.witness->str(m.source()));
      return r.legalizing ? kOk : kInconclusive;
    }

    if (c_index->parsed()) {
      const ttk::GraphMap& m = doc.map(map_name);
      ttk::GateStructure gs =
          gates_name.empty() ? ttk::intrinsic_gates(m) : doc.gate_structure(gates_name);
      ttk::IndexReport report = ttk::gate_index_list(m, gs);
      ttk::Json j{{"command", "index"},
                  {"map", map_name},
                  {"report", ttk::to_json(m.source(), report)}};
      emit(json, j, "gate index list of " + map_name + ": " + report.str(m.source()));
      return kOk;
    }

    if (c_compose->parsed()) {
      auto names = split_commas(maps_arg);
      if (names.size() < 2) throw ttk::invalid_input("--maps needs at least two names");
      ttk::GraphMap composite = doc.map(names.back());
      for (size_t i = names.size() - 1; i-- > 0;)
        composite = ttk::compose(doc.map(names[i]), composite);
      ttk::Document out;
      out.add_graph(ttk::document_graph_name(doc, composite.source()), composite.source_ptr());
      if (!composite.target().same_structure(composite.source()))
        out.add_graph(ttk::document_graph_name(doc, composite.target()), composite.target_ptr());
      out.add_map(new_name, composite);
      write_file(out_path, ttk::serialize_document(out));
      ttk::Json j{{"command", "compose"}, {"out", out_path}, {"name", new_name}};
      emit(json, j, "wrote " + new_name + " to " + out_path);
      return kOk;
    }

    if (c_theorem->parsed()) {
      const ttk::GraphMap& f = doc.map(f_name);
      const ttk::GraphMap& g = doc.map(g_name);
      std::optional<ttk::GateStructure> gs;
      if (!gates_name.empty()) gs = doc.gate_structure(gates_name);
      ttk::MainTheoremReport report =
          swapped ? ttk::theorem_main_swapped(f, g, gs) : ttk::theorem_main(f, g, gs);
      ttk::Json j{{"command", "theorem"},
                  {"f", f_name},
                  {"g", g_name},
                  {"swapped", swapped},
                  {"report", ttk::to_json(f.source(), report)}};
      emit(json, j, report.str(f.source()));
      return report.all_conclusions_certified() ? kOk : kInconclusive;
    }

    if (c_factory->parsed()) {
      const ttk::GateStructure& gs = doc.gate_structure(gates_name);
      std::vector<const ttk::GraphMap*> elementary;
      for (const auto& name : split_commas(legalizers_arg)) elementary.push_back(&doc.map(name));
      const ttk::GraphMap& h = doc.map(expander_name);
      ttk::FactoryOptions options;
      options.branch_length = branch_length;
      try {
        ttk::FactoryResult result = ttk::legalizing_factory(elementary, h, gs, options);
        ttk::Document out;
        out.add_graph(ttk::document_graph_name(doc, result.result.source()),
                      result.result.source_ptr());
        out.add_map(new_name, result.result);
        write_file(out_path, ttk::serialize_document(out));
        std::ostringstream text;
        text << "factory succeeded in " << result.steps.size() << " steps at branch length "
             << result.working_length;
        for (const auto& s : result.steps)
          text << "\n  fixed " << s.fixed_turn.str(gs.graph()) << ": " << s.illegal_before
               << " -> " << s.illegal_after << " illegal turns";
        text << "\nwrote " << new_name << " to " << out_path;
        ttk::Json j{{"command", "factory"},
                    {"steps", result.steps.size()},
                    {"working_length", result.working_length},
                    {"out", out_path},
                    {"name", new_name}};
        emit(json, j, text.str());
        return kOk;
      } catch (const ttk::invalid_input& e) {
        ttk::Json j{{"command", "factory"}, {"error", e.what()}};
        emit(json, j, std::string("factory failed: ") + e.what());
        return kInconclusive;
      }
    }

    if (c_monoid->parsed()) {
      auto names = split_commas(maps_arg);
      std::vector<ttk::MonoidGenerator> gens;
      for (const auto& n : names) gens.push_back({n, &doc.map(n)});
      ttk::GateStructure gs = gates_name.empty() ? ttk::intrinsic_gates(*gens[0].map)
                                                 : doc.gate_structure(gates_name);
      ttk::MonoidSetup setup = ttk::monoid_setup(gens, gs);
      if (!setup.admissible) {
        ttk::Json j{{"command", "monoid"}, {"admissible", false}, {"rejection", setup.rejection}};
        emit(json, j, "generator rejected: " + setup.rejection);
        return kInconclusive;
      }
      std::vector<size_t> word;
      std::istringstream ws(word_arg);
      size_t tok;
      while (ws >> tok) {
        if (tok < 1 || tok > gens.size()) throw ttk::invalid_input("word index out of range");
        word.push_back(tok - 1);
      }
      ttk::MonoidCertification cert = ttk::monoid_certify(gens, setup, word, gs);
      const ttk::Graph& graph = gens[0].map->source();
      std::ostringstream text;
      text << "word " << cert.word << ":\n" << cert.iwip.str(graph);
      text << "\n  " << (cert.legalizing.passed ? "pass" : "FAIL") << "  " << cert.legalizing.name;
      text << "\n  index list " << cert.index.str(graph);
      ttk::Json j{{"command", "monoid"},
                  {"admissible", true},
                  {"word", cert.word},
                  {"exponents", setup.exponents},
                  {"iwip", ttk::to_json(graph, cert.iwip)},
                  {"legalizing", cert.legalizing.passed},
                  {"index", ttk::to_json(graph, cert.index)}};
      emit(json, j, text.str());
      return cert.iwip.certified && cert.legalizing.passed ? kOk : kInconclusive;
    }

    if (c_survey->parsed()) {
      ttk::SurveyOptions options;
      options.rank = rank;
      options.count = count;
      options.seed = seed;
      options.threads = env_threads();
      options.budget.max_expansion_bound = 12;
      options.budget.max_paths = 1u << 19;
      options.budget.max_turns = 1u << 21;
      ttk::SurveyResult result = ttk::run_survey(options);
      ttk::Json hist = ttk::Json::object();
      for (const auto& [key, n] : result.histogram) hist[key] = n;
      ttk::Json j{{"command", "survey"},
                  {"rank", rank},
                  {"count", count},
                  {"seed", seed},
                  {"histogram", hist}};
      emit(json, j, survey_report(options, result));
      return kOk;
    }
  } catch (const ttk::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ttk::budget_exceeded& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const ttk::invalid_input& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
