#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "sampling.hpp"

namespace shapeforge::linearize {

inline const char* kLinearizationName = "turtlelight-v1";

// Single-line, subject-factorised rendering of an entity description:
//   dbr:E dbo:p "a", "b"; dbo:q dbr:X .
// Predicates sorted ascending, objects sorted ascending, prefixed names
// everywhere, literals keep their datatype/language suffix. Deterministic,
// and decode() inverts it exactly.
std::string encode(const rdf::Graph& g,
                   const rdf::PrefixMap& prefixes = rdf::PrefixMap::standard());

struct DecodeResult {
  std::optional<rdf::Graph> graph;
  std::size_t error_pos = 0;
  std::string error;

  bool ok() const { return graph.has_value(); }
};

// Never throws on malformed text: evaluation counts such outputs instead.
// Decoding is order-insensitive and also accepts <full-iri> tokens.
DecodeResult decode(const std::string& text,
                    const rdf::PrefixMap& prefixes = rdf::PrefixMap::standard());

// "<entity-iri> : <abstract>"
std::string build_prompt(const std::string& entity_iri, const std::string& abstract);

// Splits at the first " : ", which is the authoritative separator.
std::pair<std::string, std::string> split_prompt(const std::string& prompt);

struct WeightTable {
  std::map<std::string, double> by_label;
  bool degenerate = false;  // single stratum: every weight is ln(1) = 0
};

// Inverse-log frequency per stratum: weight(c) = ln(total / |c|).
WeightTable compute_weights(const std::vector<sampling::Stratum>& strata);

std::string weights_to_json(const WeightTable& weights);
WeightTable weights_from_json(const std::string& text);

// Reference calculator for validating an external trainer's loss: the
// token-averaged cross entropy -(1/T) * sum_t gold_t . log(pred_t).
// Returns +infinity when a gold-supported token has zero probability.
double reference_cross_entropy(const std::vector<std::vector<double>>& gold,
                               const std::vector<std::vector<double>>& predicted);

inline double weighted_cross_entropy(const std::vector<std::vector<double>>& gold,
                                     const std::vector<std::vector<double>>& predicted,
                                     double weight) {
  return weight * reference_cross_entropy(gold, predicted);
}

enum class TextSource { Plain, Markdown };

struct ExportOptions {
  TextSource text = TextSource::Plain;
};

// Writes fold{f}_{train,validation,test}.jsonl files under out_dir, one
// weighted example per line with fields {prompt, target, weight, stratum,
// fold, synthetic, entity}. Returns the file paths in write order.
std::vector<std::string> export_training_set(
    const dataset::Dataset& ds, const std::vector<sampling::Stratum>& strata,
    const WeightTable& weights, const std::vector<sampling::FoldSplit>& folds,
    const std::string& out_dir, const ExportOptions& options = {});

}  // namespace shapeforge::linearize
