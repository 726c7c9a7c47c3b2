#include "shacl.hpp"

#include <algorithm>
#include <cctype>

#include "errors.hpp"

namespace shapeforge::shacl {

namespace {

const std::string kSh = "http://www.w3.org/ns/shacl#";

// Shape files reuse Turtle syntax but allow `sh:property [ ... ]` blocks
// and bare integers for the count constraints, so they get their own
// reader; the data-graph parser stays strict about blank nodes.
class ShapeReader {
 public:
  ShapeReader(const std::string& text, rdf::PrefixMap prefixes)
      : text_(text), prefixes_(std::move(prefixes)) {}

  std::vector<Shape> read_all() {
    std::vector<Shape> shapes;
    skip_trivia();
    while (!eof()) {
      if (text_.compare(pos_, 7, "@prefix") == 0) {
        read_prefix_directive();
      } else {
        read_statement(shapes);
      }
      skip_trivia();
    }
    return shapes;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }
  char peek_at(std::size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_trivia() {
    while (!eof()) {
      if (peek() == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else {
        return;
      }
    }
  }

  void expect(char c) {
    skip_trivia();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void read_prefix_directive() {
    for (int i = 0; i < 7; ++i) advance();
    skip_trivia();
    std::string prefix;
    while (!eof() && peek() != ':') prefix.push_back(advance());
    expect(':');
    skip_trivia();
    if (peek() != '<') fail("expected IRI in @prefix directive");
    const std::string base = read_iri_ref();
    expect('.');
    prefixes_.declare(prefix, base);
  }

  std::string read_iri_ref() {
    advance();
    std::string iri;
    while (!eof() && peek() != '>') iri.push_back(advance());
    if (eof()) fail("unterminated IRI");
    advance();
    return iri;
  }

  std::string read_iri() {
    skip_trivia();
    if (peek() == '<') return read_iri_ref();
    if (peek() == 'a') {
      const char after = peek_at(1);
      if (std::isspace(static_cast<unsigned char>(after))) {
        advance();
        return rdf::iri::rdf_type;
      }
    }
    std::string prefix;
    while (!eof() && peek() != ':') {
      if (!std::isalnum(static_cast<unsigned char>(peek())) && peek() != '_' &&
          peek() != '-') {
        fail("malformed prefixed name");
      }
      prefix.push_back(advance());
    }
    if (eof()) fail("malformed prefixed name");
    advance();
    std::string local;
    while (!eof()) {
      const unsigned char c = static_cast<unsigned char>(peek());
      const bool name_char =
          std::isalnum(c) || c == '_' || c == '-' || c == '%' || c >= 0x80;
      if (name_char) {
        local.push_back(advance());
      } else if (peek() == '.' &&
                 (std::isalnum(static_cast<unsigned char>(peek_at(1))) ||
                  peek_at(1) == '_')) {
        local.push_back(advance());
      } else {
        break;
      }
    }
    return prefixes_.expand(prefix + ":" + local);
  }

  int read_integer() {
    skip_trivia();
    std::string digits;
    if (peek() == '"') {
      advance();
      while (!eof() && peek() != '"') digits.push_back(advance());
      if (eof()) fail("unterminated literal");
      advance();
      if (peek() == '^' && peek_at(1) == '^') {
        advance();
        advance();
        read_iri();  // datatype annotation, ignored
      }
    } else {
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        digits.push_back(advance());
      }
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      fail("expected a non-negative integer");
    }
    return std::stoi(digits);
  }

  void skip_value() {
    skip_trivia();
    if (peek() == '<') {
      read_iri_ref();
    } else if (peek() == '"') {
      advance();
      while (!eof() && peek() != '"') {
        if (peek() == '\\') advance();
        advance();
      }
      if (!eof()) advance();
    } else {
      while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) &&
             peek() != ';' && peek() != ']' && peek() != '.') {
        advance();
      }
    }
  }

  PropertyConstraint read_property_block() {
    expect('[');
    PropertyConstraint pc;
    bool saw_path = false;
    bool saw_datatype = false;
    bool saw_class = false;
    while (true) {
      skip_trivia();
      if (peek() == ']') {
        advance();
        break;
      }
      const std::string key = read_iri();
      if (key == kSh + "path") {
        pc.path = read_iri();
        saw_path = true;
      } else if (key == kSh + "datatype") {
        pc.range = read_iri();
        saw_datatype = true;
      } else if (key == kSh + "class") {
        pc.range = read_iri();
        saw_class = true;
      } else if (key == kSh + "minCount") {
        pc.min_count = read_integer();
      } else if (key == kSh + "maxCount") {
        pc.max_count = read_integer();
      } else {
        skip_value();  // tolerated but inert
      }
      skip_trivia();
      if (peek() == ';') advance();
    }
    if (!saw_path) fail("property block without sh:path");
    if (saw_datatype && saw_class) {
      fail("property block for " + pc.path +
           " declares both sh:datatype and sh:class");
    }
    if (!saw_datatype && !saw_class) {
      fail("property block for " + pc.path +
           " declares neither sh:datatype nor sh:class");
    }
    pc.kind = saw_datatype ? ConstraintKind::Datatype : ConstraintKind::Object;
    return pc;
  }

  void read_statement(std::vector<Shape>& shapes) {
    Shape shape;
    shape.id = read_iri();
    bool is_node_shape = false;
    bool saw_target = false;
    while (true) {
      const std::string key = read_iri();
      if (key == rdf::iri::rdf_type) {
        const std::string cls = read_iri();
        if (cls == kSh + "NodeShape") is_node_shape = true;
      } else if (key == kSh + "targetClass") {
        shape.target_class = read_iri();
        saw_target = true;
      } else if (key == kSh + "property") {
        shape.constraints.push_back(read_property_block());
      } else {
        skip_value();
      }
      skip_trivia();
      if (peek() == ';') {
        advance();
        skip_trivia();
        if (peek() == '.') {
          advance();
          break;
        }
        continue;
      }
      expect('.');
      break;
    }
    if (!is_node_shape) fail("statement about " + shape.id + " is not a sh:NodeShape");
    if (!saw_target) fail("shape " + shape.id + " has no sh:targetClass");
    std::set<std::string> seen;
    for (const auto& pc : shape.constraints) {
      if (!seen.insert(pc.path).second) {
        fail("shape " + shape.id + " repeats constraint path " + pc.path);
      }
    }
    if (shape.constraints.empty()) fail("shape " + shape.id + " has no property constraints");
    shapes.push_back(std::move(shape));
  }

  const std::string& text_;
  rdf::PrefixMap prefixes_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::set<std::string> Shape::property_paths() const {
  std::set<std::string> out;
  for (const auto& pc : constraints) out.insert(pc.path);
  return out;
}

std::set<std::string> Shape::paths_of_kind(ConstraintKind kind) const {
  std::set<std::string> out;
  for (const auto& pc : constraints) {
    if (pc.kind == kind) out.insert(pc.path);
  }
  return out;
}

const PropertyConstraint* Shape::find(const std::string& path) const {
  for (const auto& pc : constraints) {
    if (pc.path == path) return &pc;
  }
  return nullptr;
}

std::vector<Shape> parse_shapes(const std::string& turtle,
                                const rdf::PrefixMap& prefixes) {
  ShapeReader reader(turtle, prefixes);
  return reader.read_all();
}

Shape parse_shape(const std::string& turtle, const rdf::PrefixMap& prefixes) {
  auto shapes = parse_shapes(turtle, prefixes);
  if (shapes.empty()) throw ParseError("no node shape found in document");
  if (shapes.size() > 1) {
    throw ParseError("expected exactly one node shape, found " +
                     std::to_string(shapes.size()));
  }
  return std::move(shapes.front());
}

std::uint64_t pattern_count(const Shape& s) {
  const std::size_t n = s.property_paths().size();
  if (n > 62) {
    throw InvalidArgumentError(
        "pattern count overflows for shapes with more than 62 properties (got " +
        std::to_string(n) + ")");
  }
  return (std::uint64_t{1} << n) - 1;
}

bool valid_against_pattern(const rdf::Graph& g, const Pattern& pattern) {
  return g.property_set() == pattern;
}

std::map<Pattern, std::size_t> realized_patterns(
    const std::vector<rdf::Graph>& graphs, const Shape& s) {
  const auto paths = s.property_paths();
  std::map<Pattern, std::size_t> counts;
  for (const auto& g : graphs) {
    Pattern used = g.property_set();
    for (const auto& p : used) {
      if (!paths.count(p)) {
        throw InvalidArgumentError("property outside shape: " + p);
      }
    }
    ++counts[std::move(used)];
  }
  return counts;
}

Shape restrict_shape(const Shape& s, const std::set<std::string>& props) {
  if (props.empty()) {
    throw InvalidArgumentError("cannot restrict a shape to zero properties");
  }
  const auto paths = s.property_paths();
  for (const auto& p : props) {
    if (!paths.count(p)) {
      throw InvalidArgumentError("unknown property in restriction: " + p);
    }
  }
  Shape out;
  out.id = s.id;
  out.target_class = s.target_class;
  for (const auto& pc : s.constraints) {
    if (props.count(pc.path)) out.constraints.push_back(pc);
  }
  return out;
}

}  // namespace shapeforge::shacl
