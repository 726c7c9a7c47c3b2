// Command-line front end; every subcommand drives the shared library
// through its C API.

#include <shapeforge/shapeforge.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <string>

namespace {

int finish(sf_status status, char* summary) {
  if (status == SF_OK) {
    if (summary) {
      std::fputs(summary, stdout);
      std::fputc('\n', stdout);
    }
    sf_string_free(summary);
    return 0;
  }
  std::fprintf(stderr, "error: %s\n", sf_last_error());
  sf_string_free(summary);
  return status == SF_ERR_IO ? 2 : 1;
}

const char* c_str_or_null(const std::string& s) {
  return s.empty() ? nullptr : s.c_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shape-guided relation-extraction dataset toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sf_version()));
  // Flat key=value config with one [subcommand] section per stage;
  // command-line flags override config values.
  app.set_config("--config", "", "read options from a key=value config file");

  // ingest
  std::string ing_kg, ing_entities, ing_out, ing_manifest, ing_fixtures;
  std::string ing_summary_url, ing_data_url, ing_lookup_url;
  bool ing_live = false;
  double ing_rate = 1.0;
  std::int64_t ing_sample = 0;
  std::uint64_t ing_seed = 0;
  auto* ingest = app.add_subcommand(
      "ingest", "build the dual base from a KG dump and fetched abstracts");
  ingest->add_option("--kg", ing_kg, "Turtle dump of description graphs")->required();
  ingest->add_option("--entities", ing_entities, "entity list, one IRI per line");
  ingest->add_option("--out", ing_out, "output dataset JSONL")->required();
  ingest->add_option("--manifest", ing_manifest, "manifest JSON path");
  ingest->add_option("--fixtures", ing_fixtures, "fetch cache directory")->required();
  ingest->add_flag("--live", ing_live, "query endpoints on cache misses");
  ingest->add_option("--rate-limit", ing_rate, "live requests per second");
  ingest->add_option("--sample-size", ing_sample, "seeded entity sub-sample");
  ingest->add_option("--seed", ing_seed, "sub-sample seed");
  ingest->add_option("--summary-url", ing_summary_url, "summary endpoint template");
  ingest->add_option("--data-url", ing_data_url, "entity data endpoint template");
  ingest->add_option("--lookup-url", ing_lookup_url, "entity lookup endpoint template");

  // distill
  std::string dis_shape, dis_rules, dis_in, dis_out, dis_diag, dis_manifest;
  std::string dis_fixtures, dis_aux;
  bool dis_live = false;
  double dis_rate = 1.0;
  int dis_jobs = 1;
  auto* distill = app.add_subcommand(
      "distill", "keep only text-evidenced, shape-conformant triples");
  distill->add_option("--shape", dis_shape, "SHACL shape file")->required();
  distill->add_option("--rules", dis_rules, "rule file")->required();
  distill->add_option("--in", dis_in, "input dataset JSONL")->required();
  distill->add_option("--out", dis_out, "output dataset JSONL")->required();
  distill->add_option("--diagnostics", dis_diag, "verdicts JSONL path");
  distill->add_option("--manifest", dis_manifest, "manifest JSON path");
  distill->add_option("--fixtures", dis_fixtures, "fetch cache directory");
  distill->add_option("--aux", dis_aux, "background graph Turtle file");
  distill->add_flag("--live", dis_live, "query endpoints on cache misses");
  distill->add_option("--rate-limit", dis_rate, "live requests per second");
  distill->add_option("--jobs", dis_jobs, "parallel workers");

  // stats
  std::string sta_in, sta_shape, sta_out;
  auto* stats = app.add_subcommand("stats", "per-property triple counts and frequencies");
  stats->add_option("--in", sta_in, "dataset JSONL")->required();
  stats->add_option("--shape", sta_shape, "SHACL shape file")->required();
  stats->add_option("--out", sta_out, "stats TSV path (stdout when omitted)");

  // split
  std::string spl_class, spl_threshold, spl_out;
  auto* split = app.add_subcommand(
      "split", "frequent/rare property split at the mean frequency");
  split->add_option("--classification-stats", spl_class,
                    "stats TSV classified against the threshold")->required();
  split->add_option("--threshold-stats", spl_threshold,
                    "stats TSV whose mean frequency is the threshold")->required();
  split->add_option("--out", spl_out, "split JSON path")->required();

  // sample
  std::string sam_spec, sam_in, sam_shape, sam_split, sam_exclude, sam_out,
      sam_manifest;
  auto* sample = app.add_subcommand("sample", "seeded dataset sampling");
  sample->add_option("--spec", sam_spec, "sample spec JSON")->required();
  sample->add_option("--in", sam_in, "base dataset JSONL")->required();
  sample->add_option("--shape", sam_shape, "SHACL shape file")->required();
  sample->add_option("--split", sam_split, "frequency split JSON");
  sample->add_option("--exclude", sam_exclude, "dataset whose entities are held out");
  sample->add_option("--out", sam_out, "output dataset JSONL")->required();
  sample->add_option("--manifest", sam_manifest, "manifest JSON path");

  // stratify
  std::string str_in, str_split, str_out;
  std::uint64_t str_seed = 0;
  auto* stratify = app.add_subcommand(
      "stratify", "partition examples by rare property");
  stratify->add_option("--in", str_in, "dataset JSONL")->required();
  stratify->add_option("--split", str_split, "frequency split JSON")->required();
  stratify->add_option("--seed", str_seed, "processing-order seed");
  stratify->add_option("--out", str_out, "strata JSON path")->required();

  // augment
  std::string aug_base, aug_in, aug_shape, aug_target, aug_strategy = "KR0",
                                                       aug_out, aug_manifest;
  std::int64_t aug_threshold = 0;
  std::uint64_t aug_seed = 0;
  auto* augment = app.add_subcommand(
      "augment", "template-based synthetic examples for a scarce property");
  augment->add_option("--base", aug_base, "donor pool dataset JSONL")->required();
  augment->add_option("--in", aug_in, "dataset to augment JSONL")->required();
  augment->add_option("--shape", aug_shape, "SHACL shape file")->required();
  augment->add_option("--target", aug_target, "property IRI to boost")->required();
  augment->add_option("--threshold", aug_threshold, "example floor")->required();
  augment->add_option("--strategy", aug_strategy, "KR0 or KR1");
  augment->add_option("--seed", aug_seed, "selection seed");
  augment->add_option("--out", aug_out, "output dataset JSONL")->required();
  augment->add_option("--manifest", aug_manifest, "manifest JSON path");

  // weights
  std::string wei_strata, wei_out;
  auto* weights = app.add_subcommand(
      "weights", "inverse-log-frequency loss weight per stratum");
  weights->add_option("--strata", wei_strata, "strata JSON")->required();
  weights->add_option("--out", wei_out, "weights JSON path")->required();

  // export
  std::string exp_in, exp_strata, exp_weights, exp_text = "plain", exp_out;
  std::size_t exp_folds = 5;
  std::uint64_t exp_seed = 0;
  auto* exp = app.add_subcommand(
      "export", "trainer-ready prompt/target folds with weights");
  exp->add_option("--in", exp_in, "dataset JSONL")->required();
  exp->add_option("--strata", exp_strata, "strata JSON")->required();
  exp->add_option("--weights", exp_weights, "weights JSON")->required();
  exp->add_option("--folds", exp_folds, "number of folds");
  exp->add_option("--seed", exp_seed, "fold assignment seed");
  exp->add_option("--text", exp_text, "prompt text: plain or md");
  exp->add_option("--out-dir", exp_out, "output directory")->required();

  // evaluate / correct share their options
  struct EvalArgs {
    std::string gold, pred, shape, format = "linearized", corrections;
    std::string baseline_map, linker_map, rules, aux, fixtures, report, tsv;
  };
  EvalArgs eva, cor;
  auto add_eval_options = [](CLI::App* cmd, EvalArgs& args, bool corrections_required) {
    cmd->add_option("--gold", args.gold, "gold dataset JSONL")->required();
    cmd->add_option("--pred", args.pred, "predictions JSONL")->required();
    cmd->add_option("--shape", args.shape, "SHACL shape file")->required();
    cmd->add_option("--pred-format", args.format, "linearized or labeled");
    auto* corr = cmd->add_option("--corrections", args.corrections,
                                 "adjudicated corrections CSV");
    if (corrections_required) corr->required();
    cmd->add_option("--baseline-map", args.baseline_map,
                    "relation label mapping CSV (labeled mode)");
    cmd->add_option("--linker-map", args.linker_map,
                    "text-to-IRI linking CSV (labeled mode)");
    cmd->add_option("--rules", args.rules, "rule file for enrichment (labeled mode)");
    cmd->add_option("--aux", args.aux, "background graph Turtle file");
    cmd->add_option("--fixtures", args.fixtures, "fetch cache directory");
    cmd->add_option("--report", args.report, "report JSON path");
    cmd->add_option("--tsv", args.tsv, "per-property TSV path");
  };
  auto* evaluate = app.add_subcommand(
      "evaluate", "strict micro/macro F1 scoring of predicted graphs");
  add_eval_options(evaluate, eva, false);
  auto* correct = app.add_subcommand(
      "correct", "re-score with an adjudicated correction overlay");
  add_eval_options(correct, cor, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints usage or the help text
    return code == 0 ? 0 : 1;     // usage problems exit 1, --help exits 0
  }

  char* summary = nullptr;
  if (*ingest) {
    sf_ingest_opts opts{};
    opts.kg_path = ing_kg.c_str();
    opts.entities_path = c_str_or_null(ing_entities);
    opts.out_path = ing_out.c_str();
    opts.manifest_path = c_str_or_null(ing_manifest);
    opts.fixtures_dir = ing_fixtures.c_str();
    opts.live = ing_live ? 1 : 0;
    opts.rate_limit = ing_rate;
    opts.sample_size = ing_sample;
    opts.seed = ing_seed;
    opts.summary_url = c_str_or_null(ing_summary_url);
    opts.data_url = c_str_or_null(ing_data_url);
    opts.lookup_url = c_str_or_null(ing_lookup_url);
    const sf_status status = sf_run_ingest(&opts, &summary);
    return finish(status, summary);
  }
  if (*distill) {
    sf_distill_opts opts{};
    opts.shape_path = dis_shape.c_str();
    opts.rules_path = dis_rules.c_str();
    opts.in_path = dis_in.c_str();
    opts.out_path = dis_out.c_str();
    opts.diagnostics_path = c_str_or_null(dis_diag);
    opts.manifest_path = c_str_or_null(dis_manifest);
    opts.fixtures_dir = c_str_or_null(dis_fixtures);
    opts.aux_ttl_path = c_str_or_null(dis_aux);
    opts.live = dis_live ? 1 : 0;
    opts.rate_limit = dis_rate;
    opts.jobs = dis_jobs;
    const sf_status status = sf_run_distill(&opts, &summary);
    return finish(status, summary);
  }
  if (*stats) {
    sf_stats_opts opts{};
    opts.in_path = sta_in.c_str();
    opts.shape_path = sta_shape.c_str();
    opts.out_path = c_str_or_null(sta_out);
    const sf_status status = sf_run_stats(&opts, &summary);
    if (status == SF_OK && sta_out.empty() && summary) {
      // Print the table itself rather than the JSON-escaped summary.
      try {
        const auto parsed = nlohmann::json::parse(summary);
        std::fputs(parsed.at("tsv").get<std::string>().c_str(), stdout);
        sf_string_free(summary);
        return 0;
      } catch (const nlohmann::json::exception&) {
        // fall through to the generic summary printer
      }
    }
    return finish(status, summary);
  }
  if (*split) {
    sf_split_opts opts{};
    opts.classification_stats_path = spl_class.c_str();
    opts.threshold_stats_path = spl_threshold.c_str();
    opts.out_path = spl_out.c_str();
    const sf_status status = sf_run_split(&opts, &summary);
    return finish(status, summary);
  }
  if (*sample) {
    sf_sample_opts opts{};
    opts.spec_path = sam_spec.c_str();
    opts.in_path = sam_in.c_str();
    opts.shape_path = sam_shape.c_str();
    opts.split_path = c_str_or_null(sam_split);
    opts.exclude_path = c_str_or_null(sam_exclude);
    opts.out_path = sam_out.c_str();
    opts.manifest_path = c_str_or_null(sam_manifest);
    const sf_status status = sf_run_sample(&opts, &summary);
    return finish(status, summary);
  }
  if (*stratify) {
    sf_stratify_opts opts{};
    opts.in_path = str_in.c_str();
    opts.split_path = str_split.c_str();
    opts.seed = str_seed;
    opts.out_path = str_out.c_str();
    const sf_status status = sf_run_stratify(&opts, &summary);
    return finish(status, summary);
  }
  if (*augment) {
    sf_augment_opts opts{};
    opts.base_path = aug_base.c_str();
    opts.in_path = aug_in.c_str();
    opts.shape_path = aug_shape.c_str();
    opts.target_property = aug_target.c_str();
    opts.threshold = aug_threshold;
    opts.strategy = aug_strategy.c_str();
    opts.seed = aug_seed;
    opts.out_path = aug_out.c_str();
    opts.manifest_path = c_str_or_null(aug_manifest);
    const sf_status status = sf_run_augment(&opts, &summary);
    return finish(status, summary);
  }
  if (*weights) {
    sf_weights_opts opts{};
    opts.strata_path = wei_strata.c_str();
    opts.out_path = wei_out.c_str();
    const sf_status status = sf_run_weights(&opts, &summary);
    return finish(status, summary);
  }
  if (*exp) {
    sf_export_opts opts{};
    opts.in_path = exp_in.c_str();
    opts.strata_path = exp_strata.c_str();
    opts.weights_path = exp_weights.c_str();
    opts.folds = exp_folds;
    opts.seed = exp_seed;
    opts.text = exp_text.c_str();
    opts.out_dir = exp_out.c_str();
    const sf_status status = sf_run_export(&opts, &summary);
    return finish(status, summary);
  }
  const auto run_eval = [&](const EvalArgs& args) {
    sf_evaluate_opts opts{};
    opts.gold_path = args.gold.c_str();
    opts.pred_path = args.pred.c_str();
    opts.shape_path = args.shape.c_str();
    opts.pred_format = args.format.c_str();
    opts.corrections_path = c_str_or_null(args.corrections);
    opts.baseline_map_path = c_str_or_null(args.baseline_map);
    opts.linker_map_path = c_str_or_null(args.linker_map);
    opts.rules_path = c_str_or_null(args.rules);
    opts.aux_ttl_path = c_str_or_null(args.aux);
    opts.fixtures_dir = c_str_or_null(args.fixtures);
    opts.report_path = c_str_or_null(args.report);
    opts.tsv_path = c_str_or_null(args.tsv);
    const sf_status status = sf_run_evaluate(&opts, &summary);
    return finish(status, summary);
  };
  if (*evaluate) return run_eval(eva);
  if (*correct) return run_eval(cor);
  return 1;
}
