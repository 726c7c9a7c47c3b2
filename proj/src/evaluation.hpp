#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "rules.hpp"
#include "shacl.hpp"

namespace shapeforge::eval {

struct Prediction {
  std::string entity;
  std::string raw_output;
  std::optional<rdf::Graph> decoded;  // absent when the output is malformed

  bool well_formed() const { return decoded.has_value(); }
};

// Decodes the raw linearized output; malformed text yields a prediction
// with no graph, which scores as all-missed.
Prediction make_prediction(const std::string& entity, const std::string& raw_output);

// JSON Lines {entity, raw_output}.
std::vector<Prediction> read_predictions_jsonl(const std::string& path);
void write_predictions_jsonl(const std::string& path,
                             const std::vector<Prediction>& preds);

struct Tally {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  double precision() const;
  double recall() const;
  double f1() const;
};

struct GraphScore {
  std::string entity;
  bool well_formed = false;
  bool present = true;  // a prediction existed for this gold entity
  bool subject_match = false;
  std::set<rdf::Triple> tp_triples;
  std::set<rdf::Triple> fp_triples;
  std::set<rdf::Triple> fn_triples;

  Tally tally() const;
};

struct PropertyScore {
  std::string property;
  Tally tally;
};

struct Report {
  std::vector<GraphScore> per_graph;        // gold order
  std::vector<PropertyScore> per_property;  // ascending property IRI

  // Example-averaged aggregates (mean of per-graph scores).
  double precision = 0.0;
  double recall = 0.0;
  double f1_micro = 0.0;  // mean of per-graph F1
  double f1_macro = 0.0;  // mean of per-property F1
  // Pool-based aggregates over all triples, labeled separately.
  double pool_precision = 0.0;
  double pool_recall = 0.0;

  double wellformed_rate = 0.0;  // over predictions matched to gold entities
  std::optional<double> subject_match_rate;  // absent when nothing decoded

  std::size_t missing_predictions = 0;
  std::size_t unknown_entities = 0;
  std::size_t corrections_applied = 0;
};

// Strict triple-level comparison of predictions against the gold graphs.
// Missing predictions score as empty graphs; malformed ones miss all gold
// triples. Predictions for entities outside the gold set are counted and
// skipped.
Report score(const dataset::Dataset& gold, const std::vector<Prediction>& preds,
             const shacl::Shape& s);

// Fraction of well-formed predictions whose every subject equals the
// expected entity IRI; absent when no prediction decoded.
std::optional<double> subject_match_rate(const std::vector<Prediction>& preds,
                                         const dataset::Dataset& gold);

enum class CorrectionClass { FalsePositive, FalseNegative };
enum class CorrectionVerdict { NewFact, Omission, KgNoise };

struct Correction {
  std::string entity;
  rdf::Triple triple;
  CorrectionClass cls = CorrectionClass::FalsePositive;
  CorrectionVerdict verdict = CorrectionVerdict::NewFact;
};

using CorrectionSet = std::vector<Correction>;

// CSV columns: entity, triple (Turtle, one statement), class {FP|FN},
// verdict {new-fact|omission|kg-noise}. Fields may be double-quoted.
CorrectionSet corrections_from_csv(const std::string& text);

// Adjudicated overlay: a false positive judged a new fact becomes a true
// positive; a false negative judged KG noise leaves the gold pool; all
// other combinations stay as scored. Unmatched corrections warn.
Report apply_corrections(const Report& report, const CorrectionSet& corrections,
                         std::vector<std::string>* warnings = nullptr);

struct LabeledTriple {
  std::string subject_text;
  std::string relation_label;
  std::string object_text;
};

std::vector<LabeledTriple> labeled_triples_from_jsonl(const std::string& path);

struct RelationMapping {
  enum class Kind { Object, Date, String };
  std::string label;         // source relation label
  std::string property_iri;  // target property
  Kind kind = Kind::Object;
};

// CSV columns: label, property IRI, kind {object|date|string}.
std::vector<RelationMapping> relation_mappings_from_csv(const std::string& text);

class Linker {
 public:
  virtual ~Linker() = default;
  virtual std::optional<std::string> link(const std::string& text) const = 0;
};

class MapLinker : public Linker {
 public:
  explicit MapLinker(std::map<std::string, std::string> entries)
      : entries_(std::move(entries)) {}

  std::optional<std::string> link(const std::string& text) const override {
    const auto it = entries_.find(text);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::map<std::string, std::string> entries_;
};

struct AlignDiagnostics {
  std::size_t unmapped_labels = 0;
  std::size_t link_failures = 0;
  std::size_t unparsed_dates = 0;
};

// Turns labeled text triples into graph predictions: maps relation labels
// onto properties, links subjects (and objects of object properties) to
// resources, normalizes date strings to xsd:date, then enriches each
// description with the rule closure.
std::vector<Prediction> align_baseline(const std::vector<LabeledTriple>& triples,
                                       const std::vector<RelationMapping>& mapping,
                                       const Linker& linker,
                                       const rules::RuleSet& rs,
                                       const rules::TripleLookup* aux,
                                       AlignDiagnostics* diagnostics = nullptr);

// "D Month YYYY", "Month D, YYYY" or "YYYY-MM-DD" -> ISO "YYYY-MM-DD".
std::optional<std::string> parse_date_text(const std::string& text);

std::string report_to_json(const Report& report);
std::string per_property_tsv(const Report& report);

}  // namespace shapeforge::eval
