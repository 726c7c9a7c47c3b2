#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "shacl.hpp"

namespace shapeforge::sampling {

// Per-property usage of a dataset restricted to a shape.
struct PropertyStats {
  struct Entry {
    std::int64_t triple_count = 0;
    std::int64_t example_count = 0;
    double frequency = 0.0;  // example_count / dataset_size
  };
  std::map<std::string, Entry> per_property;  // one entry per shape path
  std::size_t dataset_size = 0;

  double frequency(const std::string& prop) const;
};

PropertyStats compute_stats(const dataset::Dataset& ds, const shacl::Shape& s);

// TSV with a dataset-size header line and one row per property, sorted by
// descending triple count. Frequencies keep full precision.
std::string stats_to_tsv(const PropertyStats& stats);
PropertyStats stats_from_tsv(const std::string& text);

struct FrequencySplit {
  double mean_frequency = 0.0;
  std::set<std::string> frequent;
  std::set<std::string> rare;
};

// The threshold is the arithmetic mean of the threshold-stats frequencies;
// a property is frequent when its classification-stats frequency strictly
// exceeds it. Both stats must cover the same properties.
FrequencySplit split_by_frequency(const PropertyStats& classification,
                                  const PropertyStats& threshold);

std::string split_to_json(const FrequencySplit& split);
FrequencySplit split_from_json(const std::string& text);

enum class SampleKind {
  BiasedDatatypeObject,  // >=1 datatype and >=1 object property
  RareBiased,            // >=1 rare property
  RandomScaled,          // unfiltered (optionally date-capped)
  SufficientExposure,    // per-property example floor
  CrossEvalUnseen,       // created on/after the cutoff date
  CrossEvalFrequent,     // property set within the frequent properties
  CrossEvalRare,         // >=1 rare property
  CrossEvalRandom,       // no filter at all
};

const char* sample_kind_name(SampleKind kind);
SampleKind sample_kind_from_name(const std::string& name);

struct SampleSpec {
  SampleKind kind = SampleKind::RandomScaled;
  std::size_t size = 0;       // ignored for SufficientExposure
  std::uint64_t seed = 0;
  std::string date_cutoff;    // ISO date; empty disables the date filter
  std::optional<std::int64_t> exposure_threshold;
};

SampleSpec spec_from_json(const std::string& text);
std::string spec_to_json(const SampleSpec& spec);

struct SampleResult {
  std::vector<std::size_t> indices;  // positions in the base, draw order
  dataset::Dataset examples;
  std::string eligibility;  // filter description recorded in manifests
};

// Seeded uniform draw without replacement from the spec's eligible subset.
// split may be null for kinds that do not involve the frequency split;
// exclude lists entity IRIs that must not be drawn (held-out sets).
SampleResult sample(const dataset::Dataset& base, const SampleSpec& spec,
                    const shacl::Shape& s, const FrequencySplit* split,
                    const std::set<std::string>* exclude = nullptr);

struct Stratum {
  std::string label;  // rare property IRI or "Other"
  std::vector<std::size_t> members;
};

inline const char* kOtherStratum = "Other";

// Multi-rare assignment decision: the candidate with the fewest members so
// far, ties broken by ascending IRI. candidates must be sorted ascending.
std::string least_represented(const std::vector<std::string>& candidates,
                              const std::map<std::string, std::size_t>& counts);

// Partition by rare property: a single rare property names the stratum, a
// multi-rare graph goes to its least represented rare property so far
// (ties by ascending IRI), everything else lands in "Other". Examples are
// processed in a seed-keyed order independent of input order.
std::vector<Stratum> stratify(const dataset::Dataset& ds,
                              const std::set<std::string>& rare,
                              std::uint64_t seed);

std::string strata_to_json(const std::vector<Stratum>& strata);
std::vector<Stratum> strata_from_json(const std::string& text);

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

// k disjoint cells covering the dataset, proportional per stratum (cells
// differ by at most one member per stratum; strata smaller than k go
// round-robin from a seeded offset). Fold i tests on cell i, validates on
// cell i+1 (mod k) and trains on the rest.
std::vector<FoldSplit> kfold(const std::vector<Stratum>& strata, std::size_t k,
                             std::uint64_t seed, std::size_t dataset_size);

// Smallest-first coverage sampler: properties are visited from the least
// to the most represented in the base, drawing unseen bearers uniformly
// until every property reaches the example threshold.
SampleResult sufficient_exposure_sample(const dataset::Dataset& base,
                                        const shacl::Shape& s,
                                        std::int64_t threshold,
                                        std::uint64_t seed);

enum class AugmentStrategy { KR0, KR1 };

AugmentStrategy augment_strategy_from_name(const std::string& name);

struct AugmentResult {
  dataset::Dataset augmented;       // input dataset plus synthetics
  std::size_t synthetics = 0;
  std::size_t skipped_unfillable = 0;
};

// Template-based augmentation: abstracts of target-property bearers whose
// gold surface forms all occur verbatim become templates; donor entities'
// gold values fill the slots until the dataset carries the target property
// at least `threshold` times. KR0 draws donors uniformly; KR1 greedily
// prefers fills that also cover other under-threshold properties.
AugmentResult augment_template(const dataset::Dataset& base,
                               const dataset::Dataset& ds,
                               const std::string& target_prop,
                               std::int64_t threshold, AugmentStrategy strategy,
                               std::uint64_t seed, const shacl::Shape& s);

}  // namespace shapeforge::sampling
