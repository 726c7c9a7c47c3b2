#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdf_model.hpp"

namespace shapeforge::dataset {

// One record of the dual base: a text in both renderings paired with the
// entity's description graph.
struct DualExample {
  std::string entity;
  std::string abstract_plain;
  std::string abstract_md;
  rdf::Graph graph;
  std::string created_date;  // ISO date, empty when unknown
  std::int64_t wiki_page_id = 0;
  bool synthetic = false;
};

using Dataset = std::vector<DualExample>;

// JSON Lines with fields {entity, abstract_plain, abstract_md, graph_ttl,
// created_date, wiki_page_id, synthetic}. graph_ttl is Turtle under the
// standard prefixes, and the read validates that every triple's subject is
// the record's entity.
Dataset read_dataset_jsonl(const std::string& path);
void write_dataset_jsonl(const std::string& path, const Dataset& ds);

std::string example_to_json_line(const DualExample& ex);
DualExample example_from_json_line(const std::string& line);

}  // namespace shapeforge::dataset
