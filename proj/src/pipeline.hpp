#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace shapeforge::pipeline {

// File-to-file stage functions behind the CLI and the C API. Each returns
// a small JSON summary for display and writes a manifest when a manifest
// path is given.

struct IngestOptions {
  std::string kg_path;                 // Turtle dump of description graphs
  std::string entities_path;           // optional: one IRI per line
  std::string out_path;                // dual-base JSON Lines
  std::string manifest_path;           // optional
  std::string fixtures_dir;            // fetch cache directory
  bool live = false;
  double rate_limit = 1.0;
  std::optional<std::size_t> sample_size;
  std::uint64_t seed = 0;
  std::string summary_url;             // optional endpoint overrides
  std::string data_url;
  std::string lookup_url;
};
nlohmann::json run_ingest(const IngestOptions& options);

struct DistillOptions {
  std::string shape_path;
  std::string rules_path;
  std::string in_path;
  std::string out_path;
  std::string diagnostics_path;  // optional JSONL of verdicts
  std::string manifest_path;     // optional
  std::string fixtures_dir;      // lookups via the fetch cache
  std::string aux_ttl_path;      // or lookups via a background graph
  bool live = false;
  double rate_limit = 1.0;
  int jobs = 1;
};
nlohmann::json run_distill(const DistillOptions& options);

struct StatsOptions {
  std::string in_path;
  std::string shape_path;
  std::string out_path;  // TSV; empty prints to the returned summary only
};
nlohmann::json run_stats(const StatsOptions& options);

struct SplitOptions {
  std::string classification_stats_path;  // TSV
  std::string threshold_stats_path;       // TSV
  std::string out_path;                   // JSON
};
nlohmann::json run_split(const SplitOptions& options);

struct SampleOptions {
  std::string spec_path;     // SampleSpec JSON
  std::string in_path;
  std::string shape_path;
  std::string split_path;    // optional frequency split JSON
  std::string exclude_path;  // optional dataset whose entities are held out
  std::string out_path;
  std::string manifest_path;  // optional
};
nlohmann::json run_sample(const SampleOptions& options);

struct StratifyOptions {
  std::string in_path;
  std::string split_path;  // rare properties come from the split
  std::uint64_t seed = 0;
  std::string out_path;    // strata JSON
};
nlohmann::json run_stratify(const StratifyOptions& options);

struct AugmentOptions {
  std::string base_path;  // donor pool
  std::string in_path;    // dataset being augmented
  std::string shape_path;
  std::string target_property;
  std::int64_t threshold = 0;
  std::string strategy = "KR0";
  std::uint64_t seed = 0;
  std::string out_path;
  std::string manifest_path;  // optional
};
nlohmann::json run_augment(const AugmentOptions& options);

struct WeightsOptions {
  std::string strata_path;
  std::string out_path;  // weights JSON
};
nlohmann::json run_weights(const WeightsOptions& options);

struct ExportOptions {
  std::string in_path;
  std::string strata_path;
  std::string weights_path;
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::string text = "plain";  // or "md"
  std::string out_dir;  // manifest.json is written alongside the folds
};
nlohmann::json run_export(const ExportOptions& options);

struct EvaluateOptions {
  std::string gold_path;
  std::string pred_path;
  std::string shape_path;
  std::string pred_format = "linearized";  // or "labeled"
  std::string corrections_path;            // optional CSV
  std::string baseline_map_path;           // labeled mode: relation CSV
  std::string linker_map_path;             // labeled mode: text->IRI CSV
  std::string rules_path;                  // labeled mode enrichment
  std::string aux_ttl_path;                // labeled mode lookups
  std::string fixtures_dir;                // or fetch-cache lookups
  std::string report_path;
  std::string tsv_path;  // optional per-property TSV
};
nlohmann::json run_evaluate(const EvaluateOptions& options);

}  // namespace shapeforge::pipeline
