#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rdf_model.hpp"

namespace shapeforge::rules {

// Derives a new literal-valued triple from an existing one, e.g. the year
// component of a date.
struct LiteralDeriveRule {
  std::string source_property;
  std::string target_property;
  // Only transform so far: leading 4-digit year of an xsd:date/xsd:dateTime
  // lexical form, emitted as xsd:gYear.
  enum class Transform { YearOfDate } transform = Transform::YearOfDate;
};

// For (s, p, o) with p in over_properties, adds (s, p, c) for every c with
// (o, bridge_property, c) in the background knowledge. Single hop only:
// derived objects are never looked up again.
struct PropagateViaRule {
  std::string bridge_property;
  std::set<std::string> over_properties;
};

using Rule = std::variant<LiteralDeriveRule, PropagateViaRule>;

struct RuleSet {
  std::vector<Rule> rules;

  bool needs_lookup() const;
};

// Background-knowledge interface resolving (subject, predicate) -> objects.
class TripleLookup {
 public:
  virtual ~TripleLookup() = default;
  virtual std::vector<rdf::Term> objects(const std::string& subject,
                                         const std::string& predicate) const = 0;
};

// Lookup over an in-memory graph, e.g. loaded from a fixture file.
class GraphLookup : public TripleLookup {
 public:
  explicit GraphLookup(rdf::Graph g) : graph_(std::move(g)) {}

  std::vector<rdf::Term> objects(const std::string& subject,
                                 const std::string& predicate) const override;

 private:
  rdf::Graph graph_;
};

// Line-based rule syntax:
//   DERIVE <source-prop> -> <target-prop> BY year-of-date
//   PROPAGATE <bridge-prop> OVER <p1>,<p2>,...
// Properties are prefixed names or <IRI>s; '#' starts a comment.
RuleSet parse_rules(const std::string& text,
                    const rdf::PrefixMap& prefixes = rdf::PrefixMap::standard());

struct RuleApplication {
  rdf::Graph graph;
  std::vector<std::string> warnings;  // skipped underivable literals
};

// Monotone closure of g under the rule set: the input triples plus every
// derivable triple, iterated to fixpoint. aux may be null when no rule
// needs a lookup; otherwise a missing aux raises LookupError.
RuleApplication apply_rules(const rdf::Graph& g, const RuleSet& rs,
                            const TripleLookup* aux);

}  // namespace shapeforge::rules
