/*
 * shapeforge C API
 *
 * A shape-guided toolkit for building, balancing and evaluating relation
 * extraction datasets: Turtle-subset graphs, SHACL-subset shapes, rule
 * enrichment, text-evidence distillation, long-tail-aware sampling and
 * augmentation, single-line graph linearization with loss weights, and
 * strict micro/macro F1 scoring of predicted graphs.
 *
 * Conventions: every function returns sf_status (SF_OK on success) except
 * the trivial accessors; on failure sf_last_error() describes the problem
 * for the calling thread. Out-parameters are written only on success.
 * Strings returned through char** are heap-allocated and released with
 * sf_string_free(); handles are released with their *_free function.
 */

#ifndef SHAPEFORGE_H
#define SHAPEFORGE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_PARSE = 1,    /* malformed Turtle, shapes, rules, specs, records */
  SF_ERR_INVALID = 2,  /* invalid argument or violated precondition */
  SF_ERR_IO = 3,       /* filesystem or transport failure */
  SF_ERR_LOOKUP = 4,   /* lookup missing from fixtures or live endpoint */
  SF_ERR_SAMPLING = 5, /* sampler could not satisfy size or coverage */
  SF_ERR_INTERNAL = 6
} sf_status;

const char* sf_version(void);

/* Message for the most recent failing call on this thread ("" if none). */
const char* sf_last_error(void);

void sf_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Graphs                                                               */

typedef struct sf_graph sf_graph;

/* Turtle subset: prefixed names, <IRI>s, string/typed literals, ';' and
 * ',' abbreviations and the 'a' keyword. Blank nodes are rejected. */
sf_status sf_graph_parse_turtle(const char* text, sf_graph** out);

/* Canonical Turtle: prefix header plus one triple per line, sorted. */
sf_status sf_graph_serialize_turtle(const sf_graph* g, char** out);

/* Single-line linearization (factorised, sorted, bijective). */
sf_status sf_graph_encode_line(const sf_graph* g, char** out);

/* Inverse of sf_graph_encode_line; SF_ERR_PARSE on malformed input. */
sf_status sf_graph_decode_line(const char* line, sf_graph** out);

size_t sf_graph_triple_count(const sf_graph* g);

/* Distinct predicate IRIs, newline-separated, sorted. */
sf_status sf_graph_property_set(const sf_graph* g, char** out);

void sf_graph_free(sf_graph* g);

/* ------------------------------------------------------------------ */
/* Shapes                                                               */

typedef struct sf_shape sf_shape;

sf_status sf_shape_parse(const char* turtle, sf_shape** out);
sf_status sf_shape_parse_file(const char* path, sf_shape** out);

size_t sf_shape_constraint_count(const sf_shape* s);

/* 2^n - 1 property combinations; SF_ERR_INVALID beyond 62 properties. */
sf_status sf_shape_pattern_count(const sf_shape* s, uint64_t* out);

/* True iff the graph's property set equals the newline-separated list. */
sf_status sf_shape_graph_matches_pattern(const sf_graph* g,
                                         const char* properties_newline_sep,
                                         int* out);

void sf_shape_free(sf_shape* s);

/* ------------------------------------------------------------------ */
/* Pipeline stages (file to file, mirroring the CLI subcommands).       */
/* Optional paths may be NULL or empty. Each writes its outputs and     */
/* returns a JSON summary through `summary` when non-NULL.              */

typedef struct sf_ingest_opts {
  const char* kg_path;
  const char* entities_path; /* optional */
  const char* out_path;
  const char* manifest_path; /* optional */
  const char* fixtures_dir;
  int live;
  double rate_limit;
  int64_t sample_size; /* <= 0 keeps every entity */
  uint64_t seed;
  const char* summary_url; /* optional endpoint overrides */
  const char* data_url;
  const char* lookup_url;
} sf_ingest_opts;
sf_status sf_run_ingest(const sf_ingest_opts* opts, char** summary);

typedef struct sf_distill_opts {
  const char* shape_path;
  const char* rules_path;
  const char* in_path;
  const char* out_path;
  const char* diagnostics_path; /* optional */
  const char* manifest_path;    /* optional */
  const char* fixtures_dir;     /* lookups from the fetch cache */
  const char* aux_ttl_path;     /* or from a background graph */
  int live;
  double rate_limit;
  int jobs;
} sf_distill_opts;
sf_status sf_run_distill(const sf_distill_opts* opts, char** summary);

typedef struct sf_stats_opts {
  const char* in_path;
  const char* shape_path;
  const char* out_path; /* optional TSV */
} sf_stats_opts;
sf_status sf_run_stats(const sf_stats_opts* opts, char** summary);

typedef struct sf_split_opts {
  const char* classification_stats_path;
  const char* threshold_stats_path;
  const char* out_path;
} sf_split_opts;
sf_status sf_run_split(const sf_split_opts* opts, char** summary);

typedef struct sf_sample_opts {
  const char* spec_path;
  const char* in_path;
  const char* shape_path;
  const char* split_path;   /* optional */
  const char* exclude_path; /* optional */
  const char* out_path;
  const char* manifest_path; /* optional */
} sf_sample_opts;
sf_status sf_run_sample(const sf_sample_opts* opts, char** summary);

typedef struct sf_stratify_opts {
  const char* in_path;
  const char* split_path;
  uint64_t seed;
  const char* out_path;
} sf_stratify_opts;
sf_status sf_run_stratify(const sf_stratify_opts* opts, char** summary);

typedef struct sf_augment_opts {
  const char* base_path;
  const char* in_path;
  const char* shape_path;
  const char* target_property;
  int64_t threshold;
  const char* strategy; /* "KR0" or "KR1" */
  uint64_t seed;
  const char* out_path;
  const char* manifest_path; /* optional */
} sf_augment_opts;
sf_status sf_run_augment(const sf_augment_opts* opts, char** summary);

typedef struct sf_weights_opts {
  const char* strata_path;
  const char* out_path;
} sf_weights_opts;
sf_status sf_run_weights(const sf_weights_opts* opts, char** summary);

typedef struct sf_export_opts {
  const char* in_path;
  const char* strata_path;
  const char* weights_path;
  size_t folds;
  uint64_t seed;
  const char* text; /* "plain" or "md" */
  const char* out_dir;
} sf_export_opts;
sf_status sf_run_export(const sf_export_opts* opts, char** summary);

typedef struct sf_evaluate_opts {
  const char* gold_path;
  const char* pred_path;
  const char* shape_path;
  const char* pred_format;      /* "linearized" (default) or "labeled" */
  const char* corrections_path; /* optional CSV overlay */
  const char* baseline_map_path;
  const char* linker_map_path;
  const char* rules_path;
  const char* aux_ttl_path;
  const char* fixtures_dir;
  const char* report_path; /* optional JSON report */
  const char* tsv_path;    /* optional per-property TSV */
} sf_evaluate_opts;
sf_status sf_run_evaluate(const sf_evaluate_opts* opts, char** summary);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SHAPEFORGE_H */
