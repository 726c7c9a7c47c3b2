#pragma once

#include <string>

#include "rdf_model.hpp"

namespace shapeforge::rdf {

// Reads the supported Turtle subset: @prefix directives, prefixed names,
// <IRI>s, string literals (plain, @lang or ^^typed), the 'a' keyword and
// ';' / ',' abbreviations. Blank nodes, collections, numeric tokens and
// @base are rejected. Throws ParseError / UnknownPrefixError.
Graph parse_turtle(const std::string& text, const PrefixMap& prefixes);

inline Graph parse_turtle(const std::string& text) {
  return parse_turtle(text, PrefixMap::standard());
}

// Deterministic writer: a header with every declared prefix, then one
// triple per line sorted by (subject, predicate, object). Output parses
// back to an equal graph.
std::string serialize_turtle(const Graph& g, const PrefixMap& prefixes);

inline std::string serialize_turtle(const Graph& g) {
  return serialize_turtle(g, PrefixMap::standard());
}

// Single-term writers shared with the linearized format.
std::string write_term(const Term& t, const PrefixMap& prefixes);
std::string write_iri(const std::string& iri, const PrefixMap& prefixes);
std::string escape_literal(const std::string& lexical);

}  // namespace shapeforge::rdf
