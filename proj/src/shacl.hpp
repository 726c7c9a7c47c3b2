#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rdf_model.hpp"

namespace shapeforge::shacl {

enum class ConstraintKind { Datatype, Object };

struct PropertyConstraint {
  std::string path;  // predicate IRI
  ConstraintKind kind = ConstraintKind::Datatype;
  std::string range;  // datatype IRI (Datatype) or class IRI (Object)
  int min_count = 0;
  std::optional<int> max_count;  // parsed but not enforced
};

struct Shape {
  std::string id;
  std::string target_class;
  std::vector<PropertyConstraint> constraints;

  std::set<std::string> property_paths() const;
  std::set<std::string> paths_of_kind(ConstraintKind kind) const;
  const PropertyConstraint* find(const std::string& path) const;
};

// One non-empty combination of a shape's property paths.
using Pattern = std::set<std::string>;

// Reads node shapes from the supported SHACL vocabulary subset:
// sh:targetClass plus sh:property blocks carrying sh:path and either
// sh:datatype or sh:class (optionally sh:minCount / sh:maxCount).
std::vector<Shape> parse_shapes(const std::string& turtle,
                                const rdf::PrefixMap& prefixes);

// Requires exactly one node shape in the document.
Shape parse_shape(const std::string& turtle,
                  const rdf::PrefixMap& prefixes = rdf::PrefixMap::standard());

// Number of non-empty property combinations: 2^|paths| - 1.
// Refuses shapes with more than 62 paths instead of wrapping.
std::uint64_t pattern_count(const Shape& s);

// True iff the graph uses exactly the pattern's properties, no more, no less.
bool valid_against_pattern(const rdf::Graph& g, const Pattern& pattern);

// Group-by of the graphs' property sets. Every property set must be a
// subset of the shape's paths.
std::map<Pattern, std::size_t> realized_patterns(
    const std::vector<rdf::Graph>& graphs, const Shape& s);

// Shape with only the named constraints; props must be a non-empty subset
// of the shape's paths.
Shape restrict_shape(const Shape& s, const std::set<std::string>& props);

}  // namespace shapeforge::shacl
