#include "evidence.hpp"

#include <atomic>
#include <cctype>
#include <thread>

#include "errors.hpp"
#include "http_client.hpp"
#include "markdown.hpp"

namespace shapeforge::evidence {

namespace {

const char* kMonths[] = {"January", "February", "March",     "April",
                         "May",     "June",     "July",      "August",
                         "September", "October", "November", "December"};

struct DateParts {
  int year = 0, month = 0, day = 0;
};

// Leading "YYYY-MM-DD" of a date/dateTime lexical form.
std::optional<DateParts> parse_date_lexical(const std::string& lexical) {
  if (lexical.size() < 10) return std::nullopt;
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!std::isdigit(static_cast<unsigned char>(lexical[i]))) return std::nullopt;
  }
  if (lexical[4] != '-' || lexical[7] != '-') return std::nullopt;
  if (lexical.size() > 10 && lexical[10] != 'T') return std::nullopt;
  DateParts d;
  d.year = std::stoi(lexical.substr(0, 4));
  d.month = std::stoi(lexical.substr(5, 2));
  d.day = std::stoi(lexical.substr(8, 2));
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return std::nullopt;
  return d;
}

bool contains(const std::string& text, const std::string& needle) {
  return !needle.empty() && text.find(needle) != std::string::npos;
}

}  // namespace

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::ExactString: return "exact-string";
    case Reason::DateForm: return "date-form";
    case Reason::MarkdownLink: return "markdown-link";
    case Reason::RangeMismatch: return "range-mismatch";
    case Reason::NotFound: return "not-found";
  }
  return "not-found";
}

std::vector<std::string> date_renderings(const rdf::Literal& lit) {
  if (lit.datatype == rdf::iri::xsd_g_year) {
    return {lit.lexical};
  }
  if (lit.datatype == rdf::iri::xsd_date || lit.datatype == rdf::iri::xsd_date_time) {
    const auto parts = parse_date_lexical(lit.lexical);
    if (!parts) return {lit.lexical};
    const std::string month = kMonths[parts->month - 1];
    const std::string day = std::to_string(parts->day);
    const std::string year = lit.lexical.substr(0, 4);
    return {
        lit.lexical.substr(0, 10),          // 1945-05-08
        day + " " + month + " " + year,     // 8 May 1945
        month + " " + day + ", " + year,    // May 8, 1945
        day + " " + month,                  // 8 May
    };
  }
  return {lit.lexical};
}

Verdict check_datatype_triple(const std::string& text, const rdf::Triple& t) {
  const auto* lit = std::get_if<rdf::Literal>(&t.object);
  if (!lit) {
    throw InvalidArgumentError("check_datatype_triple needs a literal object");
  }
  Verdict v{t, false, Reason::NotFound};
  const bool dateish = lit->datatype == rdf::iri::xsd_date ||
                       lit->datatype == rdf::iri::xsd_date_time ||
                       lit->datatype == rdf::iri::xsd_g_year;
  if (dateish) {
    for (const auto& rendering : date_renderings(*lit)) {
      if (contains(text, rendering)) {
        v.supported = true;
        v.reason = Reason::DateForm;
        return v;
      }
    }
    return v;
  }
  if (contains(text, lit->lexical)) {
    v.supported = true;
    v.reason = Reason::ExactString;
  }
  return v;
}

std::set<std::string> GraphTypeLookup::types(const std::string& entity_iri) const {
  std::set<std::string> out;
  for (const auto& t : graph_.triples()) {
    if (t.subject.value == entity_iri && t.predicate.value == rdf::iri::rdf_type &&
        rdf::is_iri(t.object)) {
      out.insert(rdf::iri_value(t.object));
    }
  }
  return out;
}

std::optional<std::string> wiki_url_to_resource(const std::string& url) {
  std::string path = url;
  for (char cut : {'#', '?'}) {
    const auto pos = path.find(cut);
    if (pos != std::string::npos) path.resize(pos);
  }
  std::string title;
  if (const auto pos = path.rfind("/wiki/"); pos != std::string::npos) {
    title = path.substr(pos + 6);
  } else if (path.rfind("./", 0) == 0) {
    title = path.substr(2);
  } else {
    return std::nullopt;
  }
  if (title.empty()) return std::nullopt;
  return "http://dbpedia.org/resource/" + net::percent_decode(title);
}

bool url_matches_resource(const std::string& url, const std::string& resource_iri) {
  const auto mapped = wiki_url_to_resource(url);
  return mapped && *mapped == net::percent_decode(resource_iri);
}

Verdict check_object_triple(const std::string& md, const rdf::Triple& t,
                            const shacl::PropertyConstraint& constraint,
                            const TypeLookup& types) {
  if (!rdf::is_iri(t.object)) {
    throw InvalidArgumentError("check_object_triple needs a resource object");
  }
  if (constraint.kind != shacl::ConstraintKind::Object) {
    throw InvalidArgumentError("check_object_triple needs an object constraint");
  }
  Verdict v{t, false, Reason::NotFound};
  const std::string& object_iri = rdf::iri_value(t.object);
  bool linked = false;
  for (const auto& link : markdown::extract_links(md)) {
    if (url_matches_resource(link.url, object_iri)) {
      linked = true;
      break;
    }
  }
  if (!linked) return v;
  if (!types.types(object_iri).count(constraint.range)) {
    v.reason = Reason::RangeMismatch;
    return v;
  }
  v.supported = true;
  v.reason = Reason::MarkdownLink;
  return v;
}

namespace {

struct ExampleOutcome {
  std::optional<dataset::DualExample> kept;
  std::vector<DistillEntry> entries;
  std::vector<std::string> rule_warnings;
};

ExampleOutcome distill_one(const dataset::DualExample& ex, const shacl::Shape& s,
                           const rules::RuleSet& rs,
                           const rules::TripleLookup* aux,
                           const TypeLookup& types) {
  ExampleOutcome out;
  rdf::Graph closed = ex.graph;
  try {
    auto application = rules::apply_rules(ex.graph, rs, aux);
    closed = std::move(application.graph);
    out.rule_warnings = std::move(application.warnings);
  } catch (const Error& e) {
    out.rule_warnings.push_back("rules skipped for " + ex.entity + ": " + e.what());
  }

  std::set<rdf::Triple> survivors;
  for (const auto& t : closed.triples()) {
    const auto* constraint = s.find(t.predicate.value);
    if (!constraint) continue;  // outside the shape, silently restricted away

    DistillEntry entry;
    entry.entity = ex.entity;
    entry.triple = t;
    if (constraint->kind == shacl::ConstraintKind::Datatype) {
      if (!std::holds_alternative<rdf::Literal>(t.object)) {
        entry.note = "datatype property with a resource object";
      } else {
        const Verdict v = check_datatype_triple(ex.abstract_plain, t);
        entry.supported = v.supported;
        entry.reason = v.reason;
      }
    } else {
      if (!rdf::is_iri(t.object)) {
        entry.note = "object property with a literal object";
      } else {
        try {
          const Verdict v = check_object_triple(ex.abstract_md, t, *constraint, types);
          entry.supported = v.supported;
          entry.reason = v.reason;
        } catch (const LookupError& e) {
          entry.lookup_failed = true;
          entry.note = e.what();
        }
      }
    }
    if (entry.supported) survivors.insert(t);
    out.entries.push_back(std::move(entry));
  }

  if (!survivors.empty()) {
    dataset::DualExample kept = ex;
    kept.graph = rdf::Graph::description(rdf::Iri{ex.entity}, std::move(survivors));
    out.kept = std::move(kept);
  }
  return out;
}

}  // namespace

dataset::Dataset distill(const dataset::Dataset& base, const shacl::Shape& s,
                         const rules::RuleSet& rs, const rules::TripleLookup* aux,
                         const TypeLookup& types, DistillDiagnostics* diagnostics,
                         int jobs) {
  std::vector<ExampleOutcome> outcomes(base.size());
  const auto work = [&](std::size_t i) {
    outcomes[i] = distill_one(base[i], s, rs, aux, types);
  };
  if (jobs <= 1 || base.size() < 2) {
    for (std::size_t i = 0; i < base.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int n_threads = std::min<std::size_t>(jobs, base.size());
    workers.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < base.size();
             i = next.fetch_add(1)) {
          work(i);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  dataset::Dataset distilled;
  for (auto& outcome : outcomes) {
    if (diagnostics) {
      for (auto& e : outcome.entries) diagnostics->entries.push_back(std::move(e));
      for (auto& w : outcome.rule_warnings) {
        diagnostics->rule_warnings.push_back(std::move(w));
      }
    }
    if (outcome.kept) {
      distilled.push_back(std::move(*outcome.kept));
    } else if (diagnostics) {
      ++diagnostics->examples_dropped;
    }
  }
  if (diagnostics) {
    diagnostics->examples_in = base.size();
    diagnostics->examples_out = distilled.size();
  }
  return distilled;
}

}  // namespace shapeforge::evidence
