#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace shapeforge::rdf {

// Well-known vocabulary IRIs.
namespace iri {
inline const std::string rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline const std::string xsd_string = "http://www.w3.org/2001/XMLSchema#string";
inline const std::string xsd_date = "http://www.w3.org/2001/XMLSchema#date";
inline const std::string xsd_date_time = "http://www.w3.org/2001/XMLSchema#dateTime";
inline const std::string xsd_g_year = "http://www.w3.org/2001/XMLSchema#gYear";
inline const std::string xsd_integer = "http://www.w3.org/2001/XMLSchema#integer";
}  // namespace iri

struct Iri {
  std::string value;

  friend auto operator<=>(const Iri&, const Iri&) = default;
};

// A literal keeps its exact lexical form. Comparison is strict: no value
// normalization, and a plain literal never equals a typed one.
struct Literal {
  std::string lexical;
  std::string datatype;  // IRI, empty for a plain literal
  std::string language;  // BCP47 tag, empty when absent

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Term = std::variant<Iri, Literal>;

bool is_iri(const Term& t);
const std::string& iri_value(const Term& t);

// Stable total order key for a term; used for canonical serialization.
std::string term_sort_key(const Term& t);

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend bool operator<(const Triple& a, const Triple& b) {
    if (a.subject.value != b.subject.value) return a.subject.value < b.subject.value;
    if (a.predicate.value != b.predicate.value) return a.predicate.value < b.predicate.value;
    return term_sort_key(a.object) < term_sort_key(b.object);
  }
};

// Set of triples, optionally pinned to a single description subject.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::set<Triple> triples) : triples_(std::move(triples)) {}

  static Graph description(const Iri& subject, std::set<Triple> triples);

  void insert(Triple t);
  bool contains(const Triple& t) const { return triples_.count(t) > 0; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  const std::set<Triple>& triples() const { return triples_; }
  const std::optional<Iri>& primary_subject() const { return primary_subject_; }

  // Distinct predicate IRIs.
  std::set<std::string> property_set() const;

  // Triples whose subject equals the given IRI.
  Graph describe(const Iri& subject) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.triples_ == b.triples_;
  }

 private:
  std::set<Triple> triples_;
  std::optional<Iri> primary_subject_;
};

// Prefix declarations used to expand and compact names.
class PrefixMap {
 public:
  PrefixMap() = default;

  void declare(const std::string& prefix, const std::string& base);
  bool has(const std::string& prefix) const { return entries_.count(prefix) > 0; }

  // "dbo:birthDate" -> full IRI. Throws UnknownPrefixError.
  std::string expand(const std::string& prefixed) const;

  // Longest-base match; returns "pfx:local" or nullopt when no base applies
  // or the local part would not survive a round trip.
  std::optional<std::string> compact(const std::string& iri) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

  // rdf, rdfs, xsd, sh, dbo, dbr.
  static const PrefixMap& standard();

 private:
  std::map<std::string, std::string> entries_;
};

// True when the local part can be written as a prefixed name in the
// supported Turtle subset (conservative: no quote/space/bracket chars).
bool is_safe_local_name(const std::string& local);

}  // namespace shapeforge::rdf
