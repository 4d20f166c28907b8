#ifndef TTK_IO_HPP
#define TTK_IO_HPP

#include <map>
#include <string>

#include "ttk/certify.hpp"

#include "json.hpp"

namespace ttk {

class parse_error : public std::runtime_error {
public:
  parse_error(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  size_t line() const { return line_; }

private:
  size_t line_;
};

// Named graphs, maps and gate structures parsed from one text document.
// Serialization is canonical: serialize(parse(x)) is byte-identical for
// canonical files.
struct Document {
  enum class Kind { Graph, Map, Gates };
  struct Item {
    Kind kind;
    std::string name;
  };
  std::vector<Item> items;  // document order
  std::map<std::string, std::shared_ptr<const Graph>> graphs;
  std::map<std::string, GraphMap> maps;
  std::map<std::string, GateStructure> gates;

  const std::shared_ptr<const Graph>& graph(const std::string& name) const;
  const GraphMap& map(const std::string& name) const;
  const GateStructure& gate_structure(const std::string& name) const;

  void add_graph(const std::string& name, std::shared_ptr<const Graph> g);
  void add_map(const std::string& name, GraphMap m);
  void add_gates(const std::string& name, GateStructure g);
};

Document parse_document(const std::string& text);
std::string serialize_document(const Document& doc);

// the graph's name within a document (maps and gates serialize references)
std::string document_graph_name(const Document& doc, const Graph& g);

using Json = nlohmann::json;

Json to_json(const Graph& g, const GateStructure& gates);
Json to_json(const Graph& g, const IndexReport& report);
Json to_json(const Graph& g, const INPCertificate& cert);
Json to_json(const Graph& g, const InpSearchOutcome& outcome);
Json to_json(const Graph& g, const IwipReport& report);
Json to_json(const Graph& g, const MainTheoremReport& report);
Json to_json(const std::vector<ConditionResult>& conditions);

}  // namespace ttk

#endif
