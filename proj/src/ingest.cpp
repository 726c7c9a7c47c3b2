#include "ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "http_client.hpp"
#include "markdown.hpp"
#include "random.hpp"

namespace shapeforge::ingest {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kWikiPageId = "http://dbpedia.org/ontology/wikiPageID";

std::string substitute(const std::string& url_template, const std::string& key,
                       const std::string& value) {
  std::string out = url_template;
  const std::string marker = "{" + key + "}";
  const auto pos = out.find(marker);
  if (pos != std::string::npos) {
    out.replace(pos, marker.size(), net::percent_encode(value));
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp);
    out << body;
  }
  fs::rename(tmp, path);
}

json parse_json(const std::string& body, const std::string& what) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON from " + what + ": " + e.what());
  }
}

// Live responses are reduced to the small cache schema before being
// stored, so fixtures stay inspectable and diff-able.
json normalize_summary(const json& live, const std::string& entity) {
  json out;
  out["entity"] = entity;
  out["plain"] = live.value("extract", std::string{});
  out["html"] = live.value("extract_html", std::string{});
  out["page_id"] = live.value("pageid", std::int64_t{0});
  std::string created = live.value("timestamp", std::string{});
  if (created.size() > 10) created.resize(10);
  out["created"] = created;
  return out;
}

json normalize_data(const json& live, const std::string& entity) {
  json out;
  out["entity"] = entity;
  auto types = json::array();
  auto countries = json::array();
  if (live.contains(entity)) {
    const auto& about = live.at(entity);
    const std::string type_key = rdf::iri::rdf_type;
    if (about.contains(type_key)) {
      for (const auto& v : about.at(type_key)) {
        if (v.value("type", std::string{}) == "uri") {
          types.push_back(v.value("value", std::string{}));
        }
      }
    }
    const std::string country_key = "http://dbpedia.org/ontology/country";
    if (about.contains(country_key)) {
      for (const auto& v : about.at(country_key)) {
        if (v.value("type", std::string{}) == "uri") {
          countries.push_back(v.value("value", std::string{}));
        }
      }
    }
  }
  out["types"] = types;
  out["country"] = countries;
  return out;
}

json normalize_lookup(const json& live, const std::string& query) {
  json out;
  out["query"] = query;
  out["iri"] = nullptr;
  if (live.contains("docs") && live.at("docs").is_array() &&
      !live.at("docs").empty()) {
    const auto& doc = live.at("docs").front();
    if (doc.contains("resource") && doc.at("resource").is_array() &&
        !doc.at("resource").empty()) {
      out["iri"] = doc.at("resource").front().get<std::string>();
    }
  }
  return out;
}

}  // namespace

RateLimiter::RateLimiter(double per_second)
    : interval_(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(per_second > 0 ? 1.0 / per_second : 0))),
      next_(std::chrono::steady_clock::now()) {}

void RateLimiter::acquire() {
  std::unique_lock<std::mutex> lock(mu_);
  const auto now = std::chrono::steady_clock::now();
  if (now < next_) {
    const auto wake = next_;
    next_ += interval_;
    lock.unlock();
    std::this_thread::sleep_until(wake);
    return;
  }
  next_ = now + interval_;
}

std::string local_name(const std::string& iri) {
  const auto slash = iri.find_last_of("/#");
  return slash == std::string::npos ? iri : iri.substr(slash + 1);
}

std::string cache_key(const std::string& entity_iri) {
  const std::string local = local_name(entity_iri);
  std::string safe;
  bool altered = false;
  for (unsigned char c : local) {
    if (std::isalnum(c) || c == '_' || c == '-' || c == '.') {
      safe.push_back(static_cast<char>(c));
    } else {
      safe.push_back('_');
      altered = true;
    }
  }
  if (safe.empty() || altered || safe.size() > 120) {
    if (safe.size() > 120) safe.resize(120);
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(entity_iri)));
    safe += "-";
    safe += hex;
  }
  return safe;
}

Fetcher::Fetcher(FetchPolicy policy)
    : policy_(std::move(policy)), limiter_(policy_.rate_limit) {
  if (policy_.mode == FetchMode::LiveWithCache && policy_.rate_limit <= 0) {
    throw InvalidArgumentError("live fetching requires a positive rate limit");
  }
  if (policy_.cache_dir.empty()) {
    throw InvalidArgumentError("fetch policy needs a cache directory");
  }
}

std::string Fetcher::fetch_live(const std::string& endpoint,
                                const std::string& key,
                                const std::string& url) {
  if (policy_.mode == FetchMode::FixtureOnly) {
    throw LookupError("not in fixture: " + endpoint + "/" + key +
                      " (cache dir " + policy_.cache_dir + ")");
  }
  limiter_.acquire();
  const std::string body = net::http_get(url);
  std::lock_guard<std::mutex> lock(mu_);
  ++network_calls_;
  fs::create_directories(fs::path(policy_.cache_dir) / endpoint);
  return body;
}

namespace {

void require_iri(const std::string& value, const char* what) {
  if (value.find("://") == std::string::npos) {
    throw InvalidArgumentError(std::string(what) +
                               " needs a resource IRI, got: " + value);
  }
}

}  // namespace

AbstractRecord Fetcher::fetch_abstract(const std::string& entity_iri) {
  require_iri(entity_iri, "fetch_abstract");
  const std::string key = cache_key(entity_iri);
  const std::string url =
      substitute(policy_.endpoints.summary_url, "title", local_name(entity_iri));
  const fs::path file =
      fs::path(policy_.cache_dir) / "summary" / (key + ".json");

  json record;
  if (fs::exists(file)) {
    record = parse_json(read_text_file(file.string()), file.string());
  } else {
    const std::string body = fetch_live("summary", key, url);
    record = normalize_summary(parse_json(body, url), entity_iri);
    write_file_atomic(file.string(), record.dump(2) + "\n");
  }
  AbstractRecord out;
  out.plain = record.value("plain", std::string{});
  out.html = record.value("html", std::string{});
  out.page_id = record.value("page_id", std::int64_t{0});
  out.created = record.value("created", std::string{});
  return out;
}

EntityFacts Fetcher::entity_facts(const std::string& entity_iri) {
  require_iri(entity_iri, "entity_facts");
  const std::string key = cache_key(entity_iri);
  const std::string url =
      substitute(policy_.endpoints.data_url, "name", local_name(entity_iri));
  const fs::path file = fs::path(policy_.cache_dir) / "data" / (key + ".json");

  json record;
  if (fs::exists(file)) {
    record = parse_json(read_text_file(file.string()), file.string());
  } else {
    const std::string body = fetch_live("data", key, url);
    record = normalize_data(parse_json(body, url), entity_iri);
    write_file_atomic(file.string(), record.dump(2) + "\n");
  }
  EntityFacts facts;
  for (const auto& t : record.value("types", json::array())) {
    facts.types.insert(t.get<std::string>());
  }
  for (const auto& c : record.value("country", json::array())) {
    facts.countries.push_back(c.get<std::string>());
  }
  return facts;
}

std::set<std::string> Fetcher::type_lookup(const std::string& entity_iri) {
  return entity_facts(entity_iri).types;
}

std::optional<std::string> Fetcher::link_lookup(const std::string& query) {
  const std::string key = cache_key(query);
  const std::string url = substitute(policy_.endpoints.lookup_url, "query", query);
  const fs::path file = fs::path(policy_.cache_dir) / "lookup" / (key + ".json");

  json record;
  if (fs::exists(file)) {
    record = parse_json(read_text_file(file.string()), file.string());
  } else {
    const std::string body = fetch_live("lookup", key, url);
    record = normalize_lookup(parse_json(body, url), query);
    write_file_atomic(file.string(), record.dump(2) + "\n");
  }
  if (record.contains("iri") && record.at("iri").is_string()) {
    return record.at("iri").get<std::string>();
  }
  return std::nullopt;
}

FetcherLookup::FetcherLookup(Fetcher& fetcher, std::string bridge_property)
    : fetcher_(fetcher), bridge_property_(std::move(bridge_property)) {}

std::vector<rdf::Term> FetcherLookup::objects(const std::string& subject,
                                              const std::string& predicate) const {
  if (predicate != bridge_property_) return {};
  try {
    std::vector<rdf::Term> out;
    for (const auto& c : fetcher_.entity_facts(subject).countries) {
      out.push_back(rdf::Iri{c});
    }
    return out;
  } catch (const LookupError& e) {
    std::lock_guard<std::mutex> lock(mu_);
    warnings_.push_back(e.what());
    return {};
  }
}

std::vector<std::string> FetcherLookup::take_warnings() {
  std::lock_guard<std::mutex> lock(mu_);
  return std::exchange(warnings_, {});
}

bool check_temporal_consistency(const dataset::DualExample& example,
                                std::int64_t expected_page_id) {
  return example.wiki_page_id == expected_page_id;
}

std::vector<std::string> dump_subjects(const rdf::Graph& kg_dump) {
  std::set<std::string> subjects;
  for (const auto& t : kg_dump.triples()) subjects.insert(t.subject.value);
  return {subjects.begin(), subjects.end()};
}

IngestOutcome build_dual_base(const rdf::Graph& kg_dump,
                              const std::vector<std::string>& entities,
                              Fetcher& fetcher, const IngestOptions& options) {
  std::vector<std::string> chosen = entities;
  if (options.sample_size && *options.sample_size < chosen.size()) {
    SeededRng rng(options.seed);
    const auto picks = rng.sample_indices(chosen.size(), *options.sample_size);
    std::vector<std::string> subset;
    subset.reserve(picks.size());
    for (auto i : picks) subset.push_back(chosen[i]);
    std::sort(subset.begin(), subset.end());
    chosen = std::move(subset);
  }

  IngestOutcome outcome;
  for (const auto& entity : chosen) {
    rdf::Graph description = kg_dump.describe(rdf::Iri{entity});
    std::optional<std::int64_t> expected_id;
    std::set<rdf::Triple> kept;
    for (const auto& t : description.triples()) {
      if (t.predicate.value == kWikiPageId) {
        if (const auto* lit = std::get_if<rdf::Literal>(&t.object)) {
          try {
            expected_id = std::stoll(lit->lexical);
          } catch (const std::exception&) {
            // Malformed id literal; treated as absent.
          }
        }
        continue;  // bookkeeping, lifted into the record field
      }
      kept.insert(t);
    }

    dataset::DualExample ex;
    ex.entity = entity;
    try {
      const AbstractRecord abs = fetcher.fetch_abstract(entity);
      ex.abstract_plain = abs.plain;
      ex.abstract_md = markdown::html_to_markdown(abs.html);
      ex.created_date = abs.created;
      ex.wiki_page_id = abs.page_id;
    } catch (const LookupError& e) {
      outcome.warnings.push_back("excluded " + entity + ": " + e.what());
      continue;
    }
    if (ex.abstract_plain.empty()) {
      outcome.warnings.push_back("excluded " + entity + ": empty abstract");
      continue;
    }
    if (!expected_id) {
      outcome.warnings.push_back("excluded " + entity +
                                 ": no wikiPageID recorded in the KG");
      continue;
    }
    if (!check_temporal_consistency(ex, *expected_id)) {
      outcome.warnings.push_back(
          "excluded " + entity + ": page id " + std::to_string(ex.wiki_page_id) +
          " does not match KG id " + std::to_string(*expected_id));
      continue;
    }
    ex.graph = rdf::Graph::description(rdf::Iri{entity}, std::move(kept));
    if (ex.graph.empty()) {
      outcome.warnings.push_back("excluded " + entity + ": empty description");
      continue;
    }
    outcome.examples.push_back(std::move(ex));
  }
  return outcome;
}

}  // namespace shapeforge::ingest
