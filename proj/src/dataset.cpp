#include "dataset.hpp"

#include <fstream>

#include <json.hpp>

#include "errors.hpp"
#include "turtle.hpp"

namespace shapeforge::dataset {

using nlohmann::json;

std::string example_to_json_line(const DualExample& ex) {
  json j;
  j["entity"] = ex.entity;
  j["abstract_plain"] = ex.abstract_plain;
  j["abstract_md"] = ex.abstract_md;
  j["graph_ttl"] = rdf::serialize_turtle(ex.graph);
  j["created_date"] = ex.created_date;
  j["wiki_page_id"] = ex.wiki_page_id;
  j["synthetic"] = ex.synthetic;
  return j.dump();
}

DualExample example_from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid dataset record: ") + e.what());
  }
  DualExample ex;
  ex.entity = j.at("entity").get<std::string>();
  ex.abstract_plain = j.at("abstract_plain").get<std::string>();
  ex.abstract_md = j.value("abstract_md", std::string{});
  ex.created_date = j.value("created_date", std::string{});
  ex.wiki_page_id = j.value("wiki_page_id", std::int64_t{0});
  ex.synthetic = j.value("synthetic", false);
  if (ex.abstract_plain.empty()) {
    throw ParseError("dataset record for " + ex.entity + " has an empty abstract");
  }
  const rdf::Graph parsed = rdf::parse_turtle(j.at("graph_ttl").get<std::string>());
  ex.graph = rdf::Graph::description(rdf::Iri{ex.entity}, parsed.triples());
  return ex;
}

Dataset read_dataset_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset: " + path);
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      ds.push_back(example_from_json_line(line));
    } catch (const Error& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return ds;
}

void write_dataset_jsonl(const std::string& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write dataset: " + path);
  for (const auto& ex : ds) out << example_to_json_line(ex) << "\n";
  if (!out) throw IoError("failed while writing dataset: " + path);
}

}  // namespace shapeforge::dataset
