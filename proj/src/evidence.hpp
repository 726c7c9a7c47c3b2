#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "rules.hpp"
#include "shacl.hpp"

namespace shapeforge::evidence {

enum class Reason {
  ExactString,    // literal lexical form found in the plain text
  DateForm,       // one of the date renderings found
  MarkdownLink,   // object resolved through a markdown link, range valid
  RangeMismatch,  // link found but the object's types miss the range class
  NotFound,
};

const char* reason_name(Reason r);

struct Verdict {
  rdf::Triple triple;
  bool supported = false;
  Reason reason = Reason::NotFound;
};

// Textual renderings a date-valued literal may take in an abstract.
// xsd:date (and the date part of xsd:dateTime lexical forms that start
// with one) renders as "YYYY-MM-DD", "D Month YYYY", "Month D, YYYY" and
// "D Month"; xsd:gYear renders as the bare year. Anything else renders
// only as its exact lexical form.
std::vector<std::string> date_renderings(const rdf::Literal& lit);

// Case-sensitive evidence search for a literal-valued triple.
Verdict check_datatype_triple(const std::string& text, const rdf::Triple& t);

// Type side of the object check, pluggable so tests can stay offline.
class TypeLookup {
 public:
  virtual ~TypeLookup() = default;
  virtual std::set<std::string> types(const std::string& entity_iri) const = 0;
};

class MapTypeLookup : public TypeLookup {
 public:
  explicit MapTypeLookup(std::map<std::string, std::set<std::string>> entries)
      : entries_(std::move(entries)) {}

  std::set<std::string> types(const std::string& entity_iri) const override {
    const auto it = entries_.find(entity_iri);
    return it == entries_.end() ? std::set<std::string>{} : it->second;
  }

 private:
  std::map<std::string, std::set<std::string>> entries_;
};

// rdf:type triples of a background graph, e.g. a fixture file.
class GraphTypeLookup : public TypeLookup {
 public:
  explicit GraphTypeLookup(rdf::Graph g) : graph_(std::move(g)) {}

  std::set<std::string> types(const std::string& entity_iri) const override;

 private:
  rdf::Graph graph_;
};

// Maps a wiki-style link target onto its resource IRI: ".../wiki/X",
// "/wiki/X" and "./X" become http://dbpedia.org/resource/X with percent
// escapes decoded and underscores preserved.
std::optional<std::string> wiki_url_to_resource(const std::string& url);

// True when the link URL resolves to the resource IRI.
bool url_matches_resource(const std::string& url, const std::string& resource_iri);

// Object-property evidence: some markdown link must resolve to the object
// AND the object's types must contain the constraint's range class.
// Anchor text alone never supports a triple.
Verdict check_object_triple(const std::string& md, const rdf::Triple& t,
                            const shacl::PropertyConstraint& constraint,
                            const TypeLookup& types);

struct DistillEntry {
  std::string entity;
  rdf::Triple triple;
  bool supported = false;
  Reason reason = Reason::NotFound;
  bool lookup_failed = false;
  std::string note;
};

struct DistillDiagnostics {
  std::vector<DistillEntry> entries;
  std::vector<std::string> rule_warnings;
  std::size_t examples_in = 0;
  std::size_t examples_out = 0;
  std::size_t examples_dropped = 0;
};

// Knowledge distillation of a dual base: rule closure, restriction to the
// shape's properties, per-triple evidence filtering (plain text for
// literals, markdown links for objects), and removal of examples whose
// surviving graph is empty.
dataset::Dataset distill(const dataset::Dataset& base, const shacl::Shape& s,
                         const rules::RuleSet& rs, const rules::TripleLookup* aux,
                         const TypeLookup& types,
                         DistillDiagnostics* diagnostics = nullptr,
                         int jobs = 1);

}  // namespace shapeforge::evidence
