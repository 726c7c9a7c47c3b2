#include <sstream>
#include "pipeline.hpp"

#include <filesystem>
#include <fstream>

#include "dataset.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "evidence.hpp"
#include "ingest.hpp"
#include "linearize.hpp"
#include "manifest.hpp"
#include "sampling.hpp"
#include "shacl.hpp"
#include "turtle.hpp"

namespace shapeforge::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text_file(const std::string& path, const std::string& body) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << body;
  if (!out) throw IoError("failed while writing " + path);
}

shacl::Shape load_shape(const std::string& path) {
  return shacl::parse_shape(read_text_file(path));
}

ingest::FetchPolicy policy_from(const std::string& fixtures_dir, bool live,
                                double rate_limit, const std::string& summary_url,
                                const std::string& data_url,
                                const std::string& lookup_url) {
  ingest::FetchPolicy policy;
  policy.mode = live ? ingest::FetchMode::LiveWithCache
                     : ingest::FetchMode::FixtureOnly;
  policy.rate_limit = rate_limit;
  policy.cache_dir = fixtures_dir;
  if (!summary_url.empty()) policy.endpoints.summary_url = summary_url;
  if (!data_url.empty()) policy.endpoints.data_url = data_url;
  if (!lookup_url.empty()) policy.endpoints.lookup_url = lookup_url;
  return policy;
}

// Type lookup over the fetch cache; misses propagate as lookup failures
// which the distillation records per triple.
class FetcherTypeLookup : public evidence::TypeLookup {
 public:
  explicit FetcherTypeLookup(ingest::Fetcher& fetcher) : fetcher_(fetcher) {}

  std::set<std::string> types(const std::string& entity_iri) const override {
    return fetcher_.type_lookup(entity_iri);
  }

 private:
  ingest::Fetcher& fetcher_;
};

class FetcherLinker : public eval::Linker {
 public:
  explicit FetcherLinker(ingest::Fetcher& fetcher) : fetcher_(fetcher) {}

  std::optional<std::string> link(const std::string& text) const override {
    try {
      return fetcher_.link_lookup(text);
    } catch (const LookupError&) {
      return std::nullopt;
    }
  }

 private:
  ingest::Fetcher& fetcher_;
};

void maybe_write_manifest(const std::string& path, const std::string& command,
                          const std::string& config_json, std::uint64_t seed,
                          const std::map<std::string, std::string>& inputs,
                          const json& extra) {
  if (path.empty()) return;
  auto m = manifest::make_manifest(command, config_json, seed, inputs);
  m.extra = extra;
  manifest::write_manifest(path, m);
}

json property_counts(const dataset::Dataset& ds) {
  std::map<std::string, std::int64_t> examples, triples;
  for (const auto& ex : ds) {
    for (const auto& t : ex.graph.triples()) ++triples[t.predicate.value];
    for (const auto& p : ex.graph.property_set()) ++examples[p];
  }
  json j;
  j["examples_per_property"] = examples;
  j["triples_per_property"] = triples;
  return j;
}

}  // namespace

json run_ingest(const IngestOptions& options) {
  if (options.fixtures_dir.empty()) {
    throw InvalidArgumentError("ingest needs a fixtures/cache directory");
  }
  const rdf::Graph kg = rdf::parse_turtle(read_text_file(options.kg_path));
  std::vector<std::string> entities;
  if (!options.entities_path.empty()) {
    std::istringstream in(read_text_file(options.entities_path));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') entities.push_back(line);
    }
  } else {
    entities = ingest::dump_subjects(kg);
  }

  ingest::Fetcher fetcher(policy_from(options.fixtures_dir, options.live,
                                      options.rate_limit, options.summary_url,
                                      options.data_url, options.lookup_url));
  ingest::IngestOptions opts;
  opts.sample_size = options.sample_size;
  opts.seed = options.seed;
  const auto outcome = ingest::build_dual_base(kg, entities, fetcher, opts);
  dataset::write_dataset_jsonl(options.out_path, outcome.examples);

  json summary;
  summary["command"] = "ingest";
  summary["entities_considered"] = entities.size();
  summary["examples_written"] = outcome.examples.size();
  summary["exclusions"] = outcome.warnings;
  summary["network_calls"] = fetcher.network_calls();

  json config;
  config["kg"] = options.kg_path;
  config["live"] = options.live;
  config["rate_limit"] = options.rate_limit;
  config["sample_size"] = options.sample_size ? json(*options.sample_size) : json();
  maybe_write_manifest(options.manifest_path, "ingest", config.dump(),
                       options.seed, {{"kg", options.kg_path}},
                       json{{"examples_written", outcome.examples.size()},
                            {"excluded", outcome.warnings.size()}});
  return summary;
}

json run_distill(const DistillOptions& options) {
  const auto shape = load_shape(options.shape_path);
  const auto ruleset = rules::parse_rules(read_text_file(options.rules_path));
  const auto base = dataset::read_dataset_jsonl(options.in_path);

  std::optional<ingest::Fetcher> fetcher;
  std::optional<ingest::FetcherLookup> fetcher_lookup;
  std::optional<rules::GraphLookup> graph_lookup;
  std::optional<evidence::GraphTypeLookup> graph_types;
  std::optional<FetcherTypeLookup> fetcher_types;

  const rules::TripleLookup* aux = nullptr;
  const evidence::TypeLookup* types = nullptr;
  if (!options.aux_ttl_path.empty()) {
    const rdf::Graph background = rdf::parse_turtle(read_text_file(options.aux_ttl_path));
    graph_lookup.emplace(background);
    graph_types.emplace(background);
    aux = &*graph_lookup;
    types = &*graph_types;
  } else if (!options.fixtures_dir.empty()) {
    fetcher.emplace(policy_from(options.fixtures_dir, options.live,
                                options.rate_limit, "", "", ""));
    fetcher_lookup.emplace(*fetcher, "http://dbpedia.org/ontology/country");
    fetcher_types.emplace(*fetcher);
    aux = &*fetcher_lookup;
    types = &*fetcher_types;
  } else {
    throw InvalidArgumentError(
        "distill needs --fixtures DIR or --aux background.ttl for lookups");
  }

  evidence::DistillDiagnostics diagnostics;
  const auto distilled = evidence::distill(base, shape, ruleset, aux, *types,
                                           &diagnostics, options.jobs);
  dataset::write_dataset_jsonl(options.out_path, distilled);

  if (!options.diagnostics_path.empty()) {
    std::ostringstream out;
    const auto& prefixes = rdf::PrefixMap::standard();
    for (const auto& e : diagnostics.entries) {
      json j;
      j["entity"] = e.entity;
      j["triple"] = rdf::write_iri(e.triple.subject.value, prefixes) + " " +
                    rdf::write_iri(e.triple.predicate.value, prefixes) + " " +
                    rdf::write_term(e.triple.object, prefixes) + " .";
      j["supported"] = e.supported;
      j["reason"] = evidence::reason_name(e.reason);
      if (e.lookup_failed) j["lookup_failed"] = true;
      if (!e.note.empty()) j["note"] = e.note;
      out << j.dump() << "\n";
    }
    write_text_file(options.diagnostics_path, out.str());
  }

  json summary;
  summary["command"] = "distill";
  summary["examples_in"] = diagnostics.examples_in;
  summary["examples_out"] = diagnostics.examples_out;
  summary["examples_dropped"] = diagnostics.examples_dropped;
  summary["triples_checked"] = diagnostics.entries.size();
  summary["rule_warnings"] = diagnostics.rule_warnings;

  json config;
  config["shape"] = options.shape_path;
  config["rules"] = options.rules_path;
  config["aux"] = options.aux_ttl_path;
  config["fixtures"] = options.fixtures_dir;
  config["live"] = options.live;
  std::map<std::string, std::string> inputs{{"in", options.in_path},
                                            {"shape", options.shape_path},
                                            {"rules", options.rules_path}};
  if (!options.aux_ttl_path.empty()) inputs["aux"] = options.aux_ttl_path;
  maybe_write_manifest(options.manifest_path, "distill", config.dump(), 0,
                       inputs,
                       json{{"examples_out", diagnostics.examples_out}});
  return summary;
}

json run_stats(const StatsOptions& options) {
  const auto shape = load_shape(options.shape_path);
  const auto ds = dataset::read_dataset_jsonl(options.in_path);
  const auto stats = sampling::compute_stats(ds, shape);
  const std::string tsv = sampling::stats_to_tsv(stats);
  if (!options.out_path.empty()) write_text_file(options.out_path, tsv);
  json summary;
  summary["command"] = "stats";
  summary["dataset_size"] = stats.dataset_size;
  summary["tsv"] = tsv;
  return summary;
}

json run_split(const SplitOptions& options) {
  const auto classification =
      sampling::stats_from_tsv(read_text_file(options.classification_stats_path));
  const auto threshold =
      sampling::stats_from_tsv(read_text_file(options.threshold_stats_path));
  const auto split = sampling::split_by_frequency(classification, threshold);
  write_text_file(options.out_path, sampling::split_to_json(split));
  json summary;
  summary["command"] = "split";
  summary["mean_frequency"] = split.mean_frequency;
  summary["frequent"] = split.frequent;
  summary["rare"] = split.rare;
  return summary;
}

json run_sample(const SampleOptions& options) {
  const auto spec = sampling::spec_from_json(read_text_file(options.spec_path));
  const auto shape = load_shape(options.shape_path);
  const auto base = dataset::read_dataset_jsonl(options.in_path);

  std::optional<sampling::FrequencySplit> split;
  if (!options.split_path.empty()) {
    split = sampling::split_from_json(read_text_file(options.split_path));
  }
  std::optional<std::set<std::string>> exclude;
  if (!options.exclude_path.empty()) {
    exclude.emplace();
    for (const auto& ex : dataset::read_dataset_jsonl(options.exclude_path)) {
      exclude->insert(ex.entity);
    }
  }

  const auto result =
      sampling::sample(base, spec, shape, split ? &*split : nullptr,
                       exclude ? &*exclude : nullptr);
  dataset::write_dataset_jsonl(options.out_path, result.examples);

  json summary;
  summary["command"] = "sample";
  summary["eligibility"] = result.eligibility;
  summary["examples_written"] = result.examples.size();
  summary["counts"] = property_counts(result.examples);

  std::map<std::string, std::string> inputs{{"in", options.in_path},
                                            {"spec", options.spec_path},
                                            {"shape", options.shape_path}};
  if (!options.split_path.empty()) inputs["split"] = options.split_path;
  if (!options.exclude_path.empty()) inputs["exclude"] = options.exclude_path;
  maybe_write_manifest(options.manifest_path, "sample",
                       sampling::spec_to_json(spec), spec.seed, inputs,
                       json{{"eligibility", result.eligibility},
                            {"counts", property_counts(result.examples)}});
  return summary;
}

json run_stratify(const StratifyOptions& options) {
  const auto ds = dataset::read_dataset_jsonl(options.in_path);
  const auto split = sampling::split_from_json(read_text_file(options.split_path));
  const auto strata = sampling::stratify(ds, split.rare, options.seed);
  write_text_file(options.out_path, sampling::strata_to_json(strata));
  json summary;
  summary["command"] = "stratify";
  json sizes;
  for (const auto& s : strata) sizes[s.label] = s.members.size();
  summary["strata"] = sizes;
  return summary;
}

json run_augment(const AugmentOptions& options) {
  const auto shape = load_shape(options.shape_path);
  const auto base = dataset::read_dataset_jsonl(options.base_path);
  const auto ds = dataset::read_dataset_jsonl(options.in_path);
  const auto strategy = sampling::augment_strategy_from_name(options.strategy);
  const auto result =
      sampling::augment_template(base, ds, options.target_property,
                                 options.threshold, strategy, options.seed, shape);
  dataset::write_dataset_jsonl(options.out_path, result.augmented);

  json summary;
  summary["command"] = "augment";
  summary["synthetics"] = result.synthetics;
  summary["skipped_unfillable"] = result.skipped_unfillable;
  summary["examples_written"] = result.augmented.size();
  summary["counts"] = property_counts(result.augmented);

  json config;
  config["target"] = options.target_property;
  config["threshold"] = options.threshold;
  config["strategy"] = options.strategy;
  maybe_write_manifest(options.manifest_path, "augment", config.dump(),
                       options.seed,
                       {{"base", options.base_path}, {"in", options.in_path}},
                       json{{"synthetics", result.synthetics},
                            {"counts", property_counts(result.augmented)}});
  return summary;
}

json run_weights(const WeightsOptions& options) {
  const auto strata = sampling::strata_from_json(read_text_file(options.strata_path));
  const auto table = linearize::compute_weights(strata);
  write_text_file(options.out_path, linearize::weights_to_json(table));
  json summary;
  summary["command"] = "weights";
  summary["weights"] = table.by_label;
  if (table.degenerate) {
    summary["warning"] = "single stratum: every weight is ln(1) = 0";
  }
  return summary;
}

json run_export(const ExportOptions& options) {
  const auto ds = dataset::read_dataset_jsonl(options.in_path);
  const auto strata = sampling::strata_from_json(read_text_file(options.strata_path));
  const auto weights = linearize::weights_from_json(read_text_file(options.weights_path));
  const auto folds = sampling::kfold(strata, options.folds, options.seed, ds.size());

  linearize::ExportOptions export_options;
  if (options.text == "plain") {
    export_options.text = linearize::TextSource::Plain;
  } else if (options.text == "md") {
    export_options.text = linearize::TextSource::Markdown;
  } else {
    throw InvalidArgumentError("--text must be plain or md");
  }
  const auto files = linearize::export_training_set(ds, strata, weights, folds,
                                                    options.out_dir, export_options);

  json summary;
  summary["command"] = "export";
  summary["folds"] = options.folds;
  summary["files"] = files;

  // The manifest names outputs relative to the export directory so two
  // runs into different directories stay byte-identical.
  std::vector<std::string> file_names;
  for (const auto& f : files) file_names.push_back(fs::path(f).filename().string());

  json config;
  config["folds"] = options.folds;
  config["text"] = options.text;
  config["linearization"] = linearize::kLinearizationName;
  config["log_base"] = "e";
  maybe_write_manifest(
      (fs::path(options.out_dir) / "manifest.json").string(), "export",
      config.dump(), options.seed,
      {{"in", options.in_path},
       {"strata", options.strata_path},
       {"weights", options.weights_path}},
      json{{"files", file_names},
           {"linearization", linearize::kLinearizationName},
           {"log_base", "e"},
           {"fold_layout", "test=cell k, validation=cell k+1 mod folds, train=rest"}});
  return summary;
}

json run_evaluate(const EvaluateOptions& options) {
  const auto shape = load_shape(options.shape_path);
  const auto gold = dataset::read_dataset_jsonl(options.gold_path);

  std::vector<eval::Prediction> preds;
  eval::AlignDiagnostics align_diag;
  if (options.pred_format == "linearized") {
    preds = eval::read_predictions_jsonl(options.pred_path);
  } else if (options.pred_format == "labeled") {
    if (options.baseline_map_path.empty() || options.rules_path.empty()) {
      throw InvalidArgumentError(
          "labeled predictions need --baseline-map and --rules");
    }
    const auto mapping = eval::relation_mappings_from_csv(
        read_text_file(options.baseline_map_path));
    const auto ruleset = rules::parse_rules(read_text_file(options.rules_path));
    const auto labeled = eval::labeled_triples_from_jsonl(options.pred_path);

    std::optional<rules::GraphLookup> graph_lookup;
    std::optional<ingest::Fetcher> fetcher;
    std::optional<ingest::FetcherLookup> fetcher_lookup;
    const rules::TripleLookup* aux = nullptr;
    if (!options.aux_ttl_path.empty()) {
      graph_lookup.emplace(rdf::parse_turtle(read_text_file(options.aux_ttl_path)));
      aux = &*graph_lookup;
    } else if (!options.fixtures_dir.empty()) {
      fetcher.emplace(policy_from(options.fixtures_dir, false, 1.0, "", "", ""));
      fetcher_lookup.emplace(*fetcher, "http://dbpedia.org/ontology/country");
      aux = &*fetcher_lookup;
    }

    std::optional<eval::MapLinker> map_linker;
    std::optional<FetcherLinker> fetcher_linker;
    const eval::Linker* linker = nullptr;
    if (!options.linker_map_path.empty()) {
      std::map<std::string, std::string> entries;
      std::istringstream in(read_text_file(options.linker_map_path));
      std::string line;
      while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos || line == "text,iri") continue;
        entries[line.substr(0, comma)] = line.substr(comma + 1);
      }
      map_linker.emplace(std::move(entries));
      linker = &*map_linker;
    } else if (fetcher) {
      fetcher_linker.emplace(*fetcher);
      linker = &*fetcher_linker;
    } else {
      throw InvalidArgumentError(
          "labeled predictions need --linker-map or --fixtures for linking");
    }
    preds = eval::align_baseline(labeled, mapping, *linker, ruleset, aux,
                                 &align_diag);
  } else {
    throw InvalidArgumentError("--pred-format must be linearized or labeled");
  }

  auto report = eval::score(gold, preds, shape);
  std::vector<std::string> correction_warnings;
  if (!options.corrections_path.empty()) {
    const auto corrections =
        eval::corrections_from_csv(read_text_file(options.corrections_path));
    report = eval::apply_corrections(report, corrections, &correction_warnings);
  }

  if (!options.report_path.empty()) {
    write_text_file(options.report_path, eval::report_to_json(report));
  }
  if (!options.tsv_path.empty()) {
    write_text_file(options.tsv_path, eval::per_property_tsv(report));
  }

  json summary;
  summary["command"] = "evaluate";
  summary["graphs"] = report.per_graph.size();
  summary["f1_micro_graph_mean"] = report.f1_micro;
  summary["f1_macro_property_mean"] = report.f1_macro;
  summary["precision_example_mean"] = report.precision;
  summary["recall_example_mean"] = report.recall;
  summary["wellformed_rate"] = report.wellformed_rate;
  if (report.subject_match_rate) {
    summary["subject_match_rate"] = *report.subject_match_rate;
  }
  summary["corrections_applied"] = report.corrections_applied;
  if (!correction_warnings.empty()) summary["correction_warnings"] = correction_warnings;
  if (options.pred_format == "labeled") {
    summary["unmapped_labels"] = align_diag.unmapped_labels;
    summary["link_failures"] = align_diag.link_failures;
  }
  return summary;
}

}  // namespace shapeforge::pipeline
