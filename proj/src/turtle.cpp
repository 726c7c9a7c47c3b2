#include "turtle.hpp"

#include <cctype>
#include <sstream>

#include "errors.hpp"

namespace shapeforge::rdf {

namespace {

bool is_local_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '%' || c >= 0x80;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

class Scanner {
 public:
  Scanner(const std::string& text, PrefixMap prefixes)
      : text_(text), prefixes_(std::move(prefixes)) {}

  Graph parse() {
    Graph g;
    skip_trivia();
    while (!eof()) {
      if (lookahead_keyword("@prefix")) {
        parse_prefix_directive();
      } else {
        parse_triples(g);
      }
      skip_trivia();
    }
    return g;
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
      const char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  bool lookahead_keyword(const std::string& kw) const {
    return text_.compare(pos_, kw.size(), kw) == 0;
  }

  void expect(char c, const std::string& what) {
    skip_trivia();
    if (eof() || peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
    advance();
  }

  void parse_prefix_directive() {
    for (std::size_t i = 0; i < 7; ++i) advance();  // "@prefix"
    skip_trivia();
    std::string prefix;
    while (!eof() && peek() != ':') {
      if (std::isspace(static_cast<unsigned char>(peek()))) fail("malformed prefix name");
      prefix.push_back(advance());
    }
    expect(':', "after prefix name");
    skip_trivia();
    if (peek() != '<') fail("expected IRI in @prefix directive");
    const std::string base = read_iri_ref();
    expect('.', "after @prefix directive");
    prefixes_.declare(prefix, base);
  }

  std::string read_iri_ref() {
    advance();  // '<'
    std::string iri;
    while (!eof() && peek() != '>') {
      const char c = advance();
      if (c == '\n') fail("unterminated IRI");
      iri.push_back(c);
    }
    if (eof()) fail("unterminated IRI");
    advance();  // '>'
    return iri;
  }

  std::string read_prefixed_name() {
    std::string prefix;
    while (!eof() && peek() != ':') {
      const char c = peek();
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
        fail("malformed prefixed name");
      }
      prefix.push_back(advance());
    }
    if (eof()) fail("malformed prefixed name");
    advance();  // ':'
    std::string local;
    while (!eof()) {
      const char c = peek();
      if (is_local_char(static_cast<unsigned char>(c))) {
        local.push_back(advance());
      } else if (c == '.' && is_local_char(static_cast<unsigned char>(peek_at(1)))) {
        // A dot stays in the local name only when followed by a name char;
        // otherwise it terminates the statement.
        local.push_back(advance());
      } else {
        break;
      }
    }
    return prefixes_.expand(prefix + ":" + local);
  }

  std::string read_iri_term(const std::string& role) {
    skip_trivia();
    if (eof()) fail("expected " + role);
    const char c = peek();
    if (c == '<') return read_iri_ref();
    if (c == '[' || lookahead_keyword("_:")) fail("blank nodes are not supported");
    if (c == '(') fail("collections are not supported");
    if (c == '"' || c == '\'') fail(role + " cannot be a literal");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-') {
      fail("numeric tokens are not supported; use a quoted literal");
    }
    return read_prefixed_name();
  }

  std::string read_quoted_string() {
    advance();  // opening '"'
    if (peek() == '"' && peek_at(1) == '"') fail("long literals are not supported");
    std::string out;
    while (true) {
      if (eof()) fail("unterminated string literal");
      char c = advance();
      if (c == '"') break;
      if (c == '\n') fail("unterminated string literal");
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (eof()) fail("dangling escape");
      const char esc = advance();
      switch (esc) {
        case 't': out.push_back('\t'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'u': out += decode_unicode_escape(4); break;
        case 'U': out += decode_unicode_escape(8); break;
        default: fail(std::string("unsupported escape \\") + esc);
      }
    }
    return out;
  }

  std::string decode_unicode_escape(int digits) {
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (eof() || !std::isxdigit(static_cast<unsigned char>(peek()))) {
        fail("malformed unicode escape");
      }
      const char c = advance();
      cp = cp * 16 + static_cast<std::uint32_t>(
                         std::isdigit(static_cast<unsigned char>(c))
                             ? c - '0'
                             : std::tolower(c) - 'a' + 10);
    }
    std::string out;
    append_utf8(out, cp);
    return out;
  }

  Term read_object() {
    skip_trivia();
    if (eof()) fail("expected object");
    const char c = peek();
    if (c == '"') {
      Literal lit;
      lit.lexical = read_quoted_string();
      if (peek() == '^' && peek_at(1) == '^') {
        advance();
        advance();
        if (peek() == '<') {
          lit.datatype = read_iri_ref();
        } else {
          lit.datatype = read_prefixed_name();
        }
      } else if (peek() == '@') {
        advance();
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
          lit.language.push_back(advance());
        }
        if (lit.language.empty()) fail("empty language tag");
      }
      return lit;
    }
    return Iri{read_iri_term("object")};
  }

  std::string read_verb() {
    skip_trivia();
    if (peek() == 'a') {
      const char after = peek_at(1);
      if (std::isspace(static_cast<unsigned char>(after)) || after == '<') {
        advance();
        return iri::rdf_type;
      }
    }
    return read_iri_term("predicate");
  }

  void parse_triples(Graph& g) {
    const Iri subject{read_iri_term("subject")};
    while (true) {
      const Iri predicate{read_verb()};
      while (true) {
        Term object = read_object();
        g.insert(Triple{subject, predicate, std::move(object)});
        skip_trivia();
        if (peek() == ',') {
          advance();
          continue;
        }
        break;
      }
      skip_trivia();
      if (peek() == ';') {
        advance();
        skip_trivia();
        if (peek() == '.') break;  // trailing ';' before terminator
        continue;
      }
      break;
    }
    expect('.', "to terminate statement");
  }

  const std::string& text_;
  PrefixMap prefixes_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Graph parse_turtle(const std::string& text, const PrefixMap& prefixes) {
  Scanner scanner(text, prefixes);
  return scanner.parse();
}

std::string escape_literal(const std::string& lexical) {
  std::string out;
  out.reserve(lexical.size());
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string write_iri(const std::string& iri, const PrefixMap& prefixes) {
  if (auto compacted = prefixes.compact(iri)) return *compacted;
  return "<" + iri + ">";
}

std::string write_term(const Term& t, const PrefixMap& prefixes) {
  if (const auto* iri = std::get_if<Iri>(&t)) return write_iri(iri->value, prefixes);
  const auto& lit = std::get<Literal>(t);
  std::string out = "\"" + escape_literal(lit.lexical) + "\"";
  if (!lit.datatype.empty()) {
    out += "^^" + write_iri(lit.datatype, prefixes);
  } else if (!lit.language.empty()) {
    out += "@" + lit.language;
  }
  return out;
}

std::string serialize_turtle(const Graph& g, const PrefixMap& prefixes) {
  std::ostringstream out;
  for (const auto& [prefix, base] : prefixes.entries()) {
    out << "@prefix " << prefix << ": <" << base << "> .\n";
  }
  if (!prefixes.entries().empty() && !g.empty()) out << "\n";
  // std::set<Triple> already orders by (subject, predicate, object key).
  for (const auto& t : g.triples()) {
    out << write_iri(t.subject.value, prefixes) << " "
        << write_iri(t.predicate.value, prefixes) << " "
        << write_term(t.object, prefixes) << " .\n";
  }
  return out.str();
}

}  // namespace shapeforge::rdf
