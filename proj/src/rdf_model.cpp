#include "rdf_model.hpp"

#include "errors.hpp"

namespace shapeforge::rdf {

bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }

const std::string& iri_value(const Term& t) { return std::get<Iri>(t).value; }

std::string term_sort_key(const Term& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) return iri->value;
  const auto& lit = std::get<Literal>(t);
  // Lexical form first so objects sort by their text, with the type as a
  // tiebreaker to keep "1945" and "1945"^^gYear apart deterministically.
  return lit.lexical + "\x01" + lit.datatype + "\x01" + lit.language;
}

Graph Graph::description(const Iri& subject, std::set<Triple> triples) {
  for (const auto& t : triples) {
    if (t.subject != subject) {
      throw InvalidArgumentError(
          "description graph contains a foreign subject: " + t.subject.value +
          " (expected " + subject.value + ")");
    }
  }
  Graph g(std::move(triples));
  g.primary_subject_ = subject;
  return g;
}

void Graph::insert(Triple t) {
  if (primary_subject_ && t.subject != *primary_subject_) {
    throw InvalidArgumentError(
        "cannot add triple with subject " + t.subject.value +
        " to a description graph of " + primary_subject_->value);
  }
  triples_.insert(std::move(t));
}

std::set<std::string> Graph::property_set() const {
  std::set<std::string> props;
  for (const auto& t : triples_) props.insert(t.predicate.value);
  return props;
}

Graph Graph::describe(const Iri& subject) const {
  std::set<Triple> out;
  for (const auto& t : triples_) {
    if (t.subject == subject) out.insert(t);
  }
  return Graph::description(subject, std::move(out));
}

void PrefixMap::declare(const std::string& prefix, const std::string& base) {
  entries_[prefix] = base;
}

std::string PrefixMap::expand(const std::string& prefixed) const {
  const auto colon = prefixed.find(':');
  if (colon == std::string::npos) {
    throw ParseError("not a prefixed name: " + prefixed);
  }
  const std::string prefix = prefixed.substr(0, colon);
  const auto it = entries_.find(prefix);
  if (it == entries_.end()) throw UnknownPrefixError(prefix);
  return it->second + prefixed.substr(colon + 1);
}

std::optional<std::string> PrefixMap::compact(const std::string& iri) const {
  const std::string* best_base = nullptr;
  const std::string* best_prefix = nullptr;
  for (const auto& [prefix, base] : entries_) {
    if (iri.size() > base.size() && iri.compare(0, base.size(), base) == 0) {
      if (!best_base || base.size() > best_base->size()) {
        best_base = &base;
        best_prefix = &prefix;
      }
    }
  }
  if (!best_base) return std::nullopt;
  const std::string local = iri.substr(best_base->size());
  if (!is_safe_local_name(local)) return std::nullopt;
  return *best_prefix + ":" + local;
}

const PrefixMap& PrefixMap::standard() {
  static const PrefixMap map = [] {
    PrefixMap m;
    m.declare("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
    m.declare("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
    m.declare("xsd", "http://www.w3.org/2001/XMLSchema#");
    m.declare("sh", "http://www.w3.org/ns/shacl#");
    m.declare("dbo", "http://dbpedia.org/ontology/");
    m.declare("dbr", "http://dbpedia.org/resource/");
    return m;
  }();
  return map;
}

bool is_safe_local_name(const std::string& local) {
  if (local.empty()) return false;
  if (local.front() == '.' || local.back() == '.') return false;
  for (unsigned char c : local) {
    const bool ok = std::isalnum(c) || c == '_' || c == '-' || c == '.' ||
                    c == '%' || c >= 0x80;
    if (!ok) return false;
  }
  return true;
}

}  // namespace shapeforge::rdf
