#include "shapeforge/shapeforge.h"

#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "linearize.hpp"
#include "manifest.hpp"
#include "pipeline.hpp"
#include "shacl.hpp"
#include "turtle.hpp"

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sf_status status_of(const std::exception& e) {
  using namespace shapeforge;
  if (dynamic_cast<const ParseError*>(&e)) return SF_ERR_PARSE;
  if (dynamic_cast<const InvalidArgumentError*>(&e)) return SF_ERR_INVALID;
  if (dynamic_cast<const LookupError*>(&e)) return SF_ERR_LOOKUP;
  if (dynamic_cast<const SamplingError*>(&e)) return SF_ERR_SAMPLING;
  if (dynamic_cast<const IoError*>(&e)) return SF_ERR_IO;
  return SF_ERR_INTERNAL;
}

template <typename Fn>
sf_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return SF_OK;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return status_of(e);
  } catch (...) {
    t_last_error = "unknown error";
    return SF_ERR_INTERNAL;
  }
}

std::string opt(const char* s) { return s ? std::string(s) : std::string(); }

template <typename RunFn, typename Opts>
sf_status run_stage(const Opts* opts, char** summary, RunFn&& fn) {
  if (!opts) {
    t_last_error = "null options";
    return SF_ERR_INVALID;
  }
  return guarded([&] {
    const auto result = fn(*opts);
    if (summary) *summary = dup_string(result.dump(2));
  });
}

}  // namespace

struct sf_graph {
  shapeforge::rdf::Graph graph;
};

struct sf_shape {
  shapeforge::shacl::Shape shape;
};

extern "C" {

const char* sf_version(void) { return shapeforge::manifest::kToolVersion; }

const char* sf_last_error(void) { return t_last_error.c_str(); }

void sf_string_free(char* s) { std::free(s); }

sf_status sf_graph_parse_turtle(const char* text, sf_graph** out) {
  if (!text || !out) {
    t_last_error = "null argument";
    return SF_ERR_INVALID;
  }
  return guarded([&] {
    auto g = std::make_unique<sf_graph>();
    g->graph = shapeforge::rdf::parse_turtle(text);
    *out = g.release();
  });
}

sf_status sf_graph_serialize_turtle(const sf_graph* g, char** out) {
  if (!g || !out) {
    t_last_error = "null argument";
    return SF_ERR_INVALID;
  }
  return guarded([&] { *out = dup_string(shapeforge::rdf::serialize_turtle(g->graph)); });
}

sf_status sf_graph_encode_line(const sf_graph* g, char** out) {
  if (!g || !out) {
    t_last_error = "null argument";
    return SF_ERR_INVALID;
  }
  return guarded([&] { *out = dup_string(shapeforge::linearize::encode(g->graph)); });
}

sf_status sf_graph_decode_line(const char* line, sf_graph** out) {
  if (!line || !out) {
    t_last_error = "null argument";
    return SF_ERR_INVALID;
  }
  const auto result = shapeforge::linearize::decode(line);
  if (!result.ok()) {
    t_last_error = result.error;
    return SF_ERR_PARSE;
  }
  auto g = std::make_unique<sf_graph>();
  g->graph = *result.graph;
  *out = g.release();
  t_last_error.clear();
  return SF_OK;
}

size_t sf_graph_triple_count(const sf_graph* g) { return g ? g->graph.size() : 0; }

sf_status sf_graph_property_set(const sf_graph* g, char** out) {
  if (!g || !out) {
    t_last_error = "null argument";
    return SF_ERR_INVALID;
  }
  return guarded([&] {
    std::ostringstream joined;
    bool first = true;
    for (const auto& p : g->graph.property_set()) {
      if (!first) joined << "\n";
      joined << p;
      first = false;
    }
    *out = dup_string(joined.str());
  });
}

void sf_graph_free(sf_graph* g) { delete g; }

sf_status sf_shape_parse(const char* turtle, sf_shape** out) {
  if (!turtle || !out) {
    t_last_error = "null argument";
    return SF_ERR_INVALID;
  }
  return guarded([&] {
    auto s = std::make_unique<sf_shape>();
    s->shape = shapeforge::shacl::parse_shape(turtle);
    *out = s.release();
  });
}

sf_status sf_shape_parse_file(const char* path, sf_shape** out) {
  if (!path || !out) {
    t_last_error = "null argument";
    return SF_ERR_INVALID;
  }
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw shapeforge::IoError("cannot read " + std::string(path));
    const std::string body((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    auto s = std::make_unique<sf_shape>();
    s->shape = shapeforge::shacl::parse_shape(body);
    *out = s.release();
  });
}

size_t sf_shape_constraint_count(const sf_shape* s) {
  return s ? s->shape.constraints.size() : 0;
}

sf_status sf_shape_pattern_count(const sf_shape* s, uint64_t* out) {
  if (!s || !out) {
    t_last_error = "null argument";
    return SF_ERR_INVALID;
  }
  return guarded([&] { *out = shapeforge::shacl::pattern_count(s->shape); });
}

sf_status sf_shape_graph_matches_pattern(const sf_graph* g,
                                         const char* properties_newline_sep,
                                         int* out) {
  if (!g || !properties_newline_sep || !out) {
    t_last_error = "null argument";
    return SF_ERR_INVALID;
  }
  return guarded([&] {
    std::set<std::string> pattern;
    std::istringstream in(properties_newline_sep);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) pattern.insert(line);
    }
    *out = shapeforge::shacl::valid_against_pattern(g->graph, pattern) ? 1 : 0;
  });
}

void sf_shape_free(sf_shape* s) { delete s; }

sf_status sf_run_ingest(const sf_ingest_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_ingest_opts& o) {
    shapeforge::pipeline::IngestOptions options;
    options.kg_path = opt(o.kg_path);
    options.entities_path = opt(o.entities_path);
    options.out_path = opt(o.out_path);
    options.manifest_path = opt(o.manifest_path);
    options.fixtures_dir = opt(o.fixtures_dir);
    options.live = o.live != 0;
    options.rate_limit = o.rate_limit;
    if (o.sample_size > 0) options.sample_size = static_cast<std::size_t>(o.sample_size);
    options.seed = o.seed;
    options.summary_url = opt(o.summary_url);
    options.data_url = opt(o.data_url);
    options.lookup_url = opt(o.lookup_url);
    return shapeforge::pipeline::run_ingest(options);
  });
}

sf_status sf_run_distill(const sf_distill_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_distill_opts& o) {
    shapeforge::pipeline::DistillOptions options;
    options.shape_path = opt(o.shape_path);
    options.rules_path = opt(o.rules_path);
    options.in_path = opt(o.in_path);
    options.out_path = opt(o.out_path);
    options.diagnostics_path = opt(o.diagnostics_path);
    options.manifest_path = opt(o.manifest_path);
    options.fixtures_dir = opt(o.fixtures_dir);
    options.aux_ttl_path = opt(o.aux_ttl_path);
    options.live = o.live != 0;
    options.rate_limit = o.rate_limit;
    options.jobs = o.jobs > 0 ? o.jobs : 1;
    return shapeforge::pipeline::run_distill(options);
  });
}

sf_status sf_run_stats(const sf_stats_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_stats_opts& o) {
    shapeforge::pipeline::StatsOptions options;
    options.in_path = opt(o.in_path);
    options.shape_path = opt(o.shape_path);
    options.out_path = opt(o.out_path);
    return shapeforge::pipeline::run_stats(options);
  });
}

sf_status sf_run_split(const sf_split_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_split_opts& o) {
    shapeforge::pipeline::SplitOptions options;
    options.classification_stats_path = opt(o.classification_stats_path);
    options.threshold_stats_path = opt(o.threshold_stats_path);
    options.out_path = opt(o.out_path);
    return shapeforge::pipeline::run_split(options);
  });
}

sf_status sf_run_sample(const sf_sample_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_sample_opts& o) {
    shapeforge::pipeline::SampleOptions options;
    options.spec_path = opt(o.spec_path);
    options.in_path = opt(o.in_path);
    options.shape_path = opt(o.shape_path);
    options.split_path = opt(o.split_path);
    options.exclude_path = opt(o.exclude_path);
    options.out_path = opt(o.out_path);
    options.manifest_path = opt(o.manifest_path);
    return shapeforge::pipeline::run_sample(options);
  });
}

sf_status sf_run_stratify(const sf_stratify_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_stratify_opts& o) {
    shapeforge::pipeline::StratifyOptions options;
    options.in_path = opt(o.in_path);
    options.split_path = opt(o.split_path);
    options.seed = o.seed;
    options.out_path = opt(o.out_path);
    return shapeforge::pipeline::run_stratify(options);
  });
}

sf_status sf_run_augment(const sf_augment_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_augment_opts& o) {
    shapeforge::pipeline::AugmentOptions options;
    options.base_path = opt(o.base_path);
    options.in_path = opt(o.in_path);
    options.shape_path = opt(o.shape_path);
    options.target_property = opt(o.target_property);
    options.threshold = o.threshold;
    options.strategy = opt(o.strategy);
    options.seed = o.seed;
    options.out_path = opt(o.out_path);
    options.manifest_path = opt(o.manifest_path);
    return shapeforge::pipeline::run_augment(options);
  });
}

sf_status sf_run_weights(const sf_weights_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_weights_opts& o) {
    shapeforge::pipeline::WeightsOptions options;
    options.strata_path = opt(o.strata_path);
    options.out_path = opt(o.out_path);
    return shapeforge::pipeline::run_weights(options);
  });
}

sf_status sf_run_export(const sf_export_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_export_opts& o) {
    shapeforge::pipeline::ExportOptions options;
    options.in_path = opt(o.in_path);
    options.strata_path = opt(o.strata_path);
    options.weights_path = opt(o.weights_path);
    options.folds = o.folds > 0 ? o.folds : 5;
    options.seed = o.seed;
    options.text = o.text && *o.text ? o.text : "plain";
    options.out_dir = opt(o.out_dir);
    return shapeforge::pipeline::run_export(options);
  });
}

sf_status sf_run_evaluate(const sf_evaluate_opts* opts, char** summary) {
  return run_stage(opts, summary, [](const sf_evaluate_opts& o) {
    shapeforge::pipeline::EvaluateOptions options;
    options.gold_path = opt(o.gold_path);
    options.pred_path = opt(o.pred_path);
    options.shape_path = opt(o.shape_path);
    options.pred_format = o.pred_format && *o.pred_format ? o.pred_format : "linearized";
    options.corrections_path = opt(o.corrections_path);
    options.baseline_map_path = opt(o.baseline_map_path);
    options.linker_map_path = opt(o.linker_map_path);
    options.rules_path = opt(o.rules_path);
    options.aux_ttl_path = opt(o.aux_ttl_path);
    options.fixtures_dir = opt(o.fixtures_dir);
    options.report_path = opt(o.report_path);
    options.tsv_path = opt(o.tsv_path);
    return shapeforge::pipeline::run_evaluate(options);
  });
}

}  // extern "C"
