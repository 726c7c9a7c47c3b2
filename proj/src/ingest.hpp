#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "rules.hpp"

namespace shapeforge::ingest {

enum class FetchMode { FixtureOnly, LiveWithCache };

// Endpoint URL templates; {title}, {name} and {query} are substituted with
// the percent-encoded value.
struct Endpoints {
  std::string summary_url =
      "https://en.wikipedia.org/api/rest_v1/page/summary/{title}";
  std::string data_url = "https://dbpedia.org/data/{name}.json";
  std::string lookup_url =
      "https://lookup.dbpedia.org/api/search?query={query}&format=JSON&maxResults=1";
};

struct FetchPolicy {
  FetchMode mode = FetchMode::FixtureOnly;
  double rate_limit = 1.0;  // live requests per second, > 0
  std::string cache_dir;
  Endpoints endpoints;
};

struct AbstractRecord {
  std::string plain;
  std::string html;
  std::int64_t page_id = 0;
  std::string created;  // ISO date, may be empty
};

struct EntityFacts {
  std::set<std::string> types;
  std::vector<std::string> countries;
};

// Spaces out live calls so no 1-second window ever sees more than
// rate_limit requests.
class RateLimiter {
 public:
  explicit RateLimiter(double per_second);
  void acquire();

 private:
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_;
  std::mutex mu_;
};

// Filesystem name for an entity's cache record.
std::string cache_key(const std::string& entity_iri);

// Local name of an IRI: the segment after the last '/' or '#'.
std::string local_name(const std::string& iri);

// Cache-first client for the abstract, entity-facts and entity-linking
// endpoints. In fixture-only mode a cache miss raises a "not in fixture"
// LookupError; in live mode the endpoint is queried under the rate limit
// and the response cached (written atomically).
class Fetcher {
 public:
  explicit Fetcher(FetchPolicy policy);

  AbstractRecord fetch_abstract(const std::string& entity_iri);
  EntityFacts entity_facts(const std::string& entity_iri);
  std::set<std::string> type_lookup(const std::string& entity_iri);
  std::optional<std::string> link_lookup(const std::string& query);

  std::size_t network_calls() const { return network_calls_; }
  const FetchPolicy& policy() const { return policy_; }

 private:
  std::string fetch_live(const std::string& endpoint, const std::string& key,
                         const std::string& url);

  FetchPolicy policy_;
  RateLimiter limiter_;
  std::size_t network_calls_ = 0;
  std::mutex mu_;
};

// Rule-engine lookup backed by the entity-facts endpoint: only the
// configured bridge property resolves, everything else is empty. Fixture
// misses resolve to no objects and are recorded as warnings.
class FetcherLookup : public rules::TripleLookup {
 public:
  FetcherLookup(Fetcher& fetcher, std::string bridge_property);

  std::vector<rdf::Term> objects(const std::string& subject,
                                 const std::string& predicate) const override;

  std::vector<std::string> take_warnings();

 private:
  Fetcher& fetcher_;
  std::string bridge_property_;
  mutable std::mutex mu_;
  mutable std::vector<std::string> warnings_;
};

// True iff the fetched page id matches the id recorded in the KG.
bool check_temporal_consistency(const dataset::DualExample& example,
                                std::int64_t expected_page_id);

struct IngestOptions {
  std::optional<std::size_t> sample_size;  // seeded entity sub-sample
  std::uint64_t seed = 0;
};

struct IngestOutcome {
  dataset::Dataset examples;
  std::vector<std::string> warnings;  // excluded entities with reasons
};

// Builds dual-base records for the KG dump's subjects: fetches abstracts,
// converts HTML to Markdown, drops entities whose page id disagrees with
// the KG's dbo:wikiPageID (or whose abstract is missing).
IngestOutcome build_dual_base(const rdf::Graph& kg_dump,
                              const std::vector<std::string>& entities,
                              Fetcher& fetcher, const IngestOptions& options);

// Distinct subjects of the dump, sorted.
std::vector<std::string> dump_subjects(const rdf::Graph& kg_dump);

}  // namespace shapeforge::ingest
