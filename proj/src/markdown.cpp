#include "markdown.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace shapeforge::markdown {

namespace {

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

const std::map<std::string, std::string>& named_entities() {
  static const std::map<std::string, std::string> table = {
      {"amp", "&"},   {"lt", "<"},      {"gt", ">"},      {"quot", "\""},
      {"apos", "'"},  {"nbsp", " "},    {"ndash", "–"},
      {"mdash", "—"},              {"hellip", "…"},
      {"rsquo", "’"},              {"lsquo", "‘"},
      {"rdquo", "”"},              {"ldquo", "“"},
  };
  return table;
}

struct TagToken {
  std::string name;    // lowercase
  bool closing = false;
  std::string href;    // only for <a>
};

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Parses the tag starting at '<'; returns the position after '>' (or after
// the unparseable run) and fills the token when one was recognized.
std::size_t read_tag(const std::string& html, std::size_t pos, TagToken& tag,
                     bool& ok) {
  ok = false;
  std::size_t i = pos + 1;
  if (i < html.size() && html.compare(i, 3, "!--") == 0) {
    const auto end = html.find("-->", i + 3);
    return end == std::string::npos ? html.size() : end + 3;
  }
  if (i < html.size() && html[i] == '/') {
    tag.closing = true;
    ++i;
  }
  const std::size_t name_start = i;
  while (i < html.size() &&
         (std::isalnum(static_cast<unsigned char>(html[i])) || html[i] == '-')) {
    ++i;
  }
  if (i == name_start) {
    // Not a tag ('<' in running text); caller keeps the character.
    return pos;
  }
  tag.name = lowercase(html.substr(name_start, i - name_start));
  // Attributes, tracking quotes so '>' inside values is skipped.
  while (i < html.size() && html[i] != '>') {
    if (std::isspace(static_cast<unsigned char>(html[i]))) {
      ++i;
      continue;
    }
    const std::size_t attr_start = i;
    while (i < html.size() && html[i] != '=' && html[i] != '>' &&
           !std::isspace(static_cast<unsigned char>(html[i]))) {
      ++i;
    }
    const std::string attr = lowercase(html.substr(attr_start, i - attr_start));
    std::string value;
    if (i < html.size() && html[i] == '=') {
      ++i;
      if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
        const char quote = html[i++];
        const std::size_t vstart = i;
        while (i < html.size() && html[i] != quote) ++i;
        value = html.substr(vstart, i - vstart);
        if (i < html.size()) ++i;
      } else {
        const std::size_t vstart = i;
        while (i < html.size() && html[i] != '>' &&
               !std::isspace(static_cast<unsigned char>(html[i]))) {
          ++i;
        }
        value = html.substr(vstart, i - vstart);
      }
    }
    if (attr == "href") tag.href = decode_entities(value);
  }
  if (i < html.size()) ++i;  // '>'
  ok = true;
  return i;
}

bool is_block_tag(const std::string& name) {
  static const std::set<std::string> blocks = {
      "p",  "div", "li", "ul",    "ol",    "table", "tr", "h1", "h2",
      "h3", "h4",  "h5", "h6",    "section", "blockquote", "figure"};
  return blocks.count(name) > 0;
}

class Emitter {
 public:
  void text(const std::string& s) {
    for (char c : s) character(c);
  }

  void character(char c) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out_.empty()) pending_space_ = true;
      return;
    }
    flush_separators();
    out_.push_back(c);
  }

  // Raw output that must not be whitespace-collapsed (link syntax).
  void syntax(const std::string& s, bool space_before_ok) {
    if (space_before_ok) {
      flush_separators();
    } else {
      pending_space_ = false;
      pending_break_ = false;
    }
    out_ += s;
  }

  void paragraph_break() {
    if (!out_.empty()) pending_break_ = true;
  }

  std::string take() {
    while (!out_.empty() &&
           std::isspace(static_cast<unsigned char>(out_.back()))) {
      out_.pop_back();
    }
    return std::move(out_);
  }

 private:
  void flush_separators() {
    if (pending_break_) {
      out_ += "\n\n";
    } else if (pending_space_) {
      out_.push_back(' ');
    }
    pending_break_ = false;
    pending_space_ = false;
  }

  std::string out_;
  bool pending_space_ = false;
  bool pending_break_ = false;
};

}  // namespace

std::string decode_entities(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const auto semi = text.find(';', i + 1);
    if (semi == std::string::npos || semi - i > 10) {
      out.push_back(text[i++]);
      continue;
    }
    const std::string body = text.substr(i + 1, semi - i - 1);
    if (!body.empty() && body[0] == '#') {
      std::uint32_t cp = 0;
      bool valid = body.size() > 1;
      if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
        for (std::size_t k = 2; k < body.size() && valid; ++k) {
          if (!std::isxdigit(static_cast<unsigned char>(body[k]))) valid = false;
          else cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(body[k]))
                                   ? body[k] - '0'
                                   : std::tolower(body[k]) - 'a' + 10);
        }
      } else {
        for (std::size_t k = 1; k < body.size() && valid; ++k) {
          if (!std::isdigit(static_cast<unsigned char>(body[k]))) valid = false;
          else cp = cp * 10 + (body[k] - '0');
        }
      }
      if (valid && cp > 0 && cp <= 0x10ffff) {
        append_utf8(out, cp);
        i = semi + 1;
        continue;
      }
    } else if (auto it = named_entities().find(body); it != named_entities().end()) {
      out += it->second;
      i = semi + 1;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string html_to_markdown(const std::string& html) {
  Emitter emit;
  std::vector<std::string> open_links;
  std::size_t i = 0;
  while (i < html.size()) {
    const char c = html[i];
    if (c != '<') {
      const std::size_t start = i;
      while (i < html.size() && html[i] != '<' && html[i] != '&') ++i;
      emit.text(html.substr(start, i - start));
      if (i < html.size() && html[i] == '&') {
        const auto semi = html.find(';', i + 1);
        if (semi != std::string::npos && semi - i <= 10) {
          emit.text(decode_entities(html.substr(i, semi - i + 1)));
          i = semi + 1;
        } else {
          emit.text("&");
          ++i;
        }
      }
      continue;
    }
    TagToken tag;
    bool ok = false;
    const std::size_t next = read_tag(html, i, tag, ok);
    if (next == i) {  // lone '<'
      emit.text("<");
      ++i;
      continue;
    }
    i = next;
    if (!ok) continue;  // comment or junk, dropped
    if (tag.name == "script" || tag.name == "style") {
      if (!tag.closing) {
        const std::string close = "</" + tag.name;
        const auto end = lowercase(html).find(close, i);
        if (end == std::string::npos) break;
        const auto gt = html.find('>', end);
        i = gt == std::string::npos ? html.size() : gt + 1;
      }
      continue;
    }
    if (tag.name == "a") {
      if (!tag.closing) {
        emit.syntax("[", true);
        open_links.push_back(tag.href);
      } else if (!open_links.empty()) {
        emit.syntax("](" + open_links.back() + ")", false);
        open_links.pop_back();
      }
      continue;
    }
    if (tag.name == "br") {
      emit.paragraph_break();
      continue;
    }
    if (is_block_tag(tag.name)) {
      emit.paragraph_break();
      continue;
    }
    // Inline tag (b, i, span, ...): dropped, content kept.
  }
  return emit.take();
}

std::vector<Link> extract_links(const std::string& md) {
  std::vector<Link> links;
  std::vector<std::size_t> open_brackets;
  std::size_t i = 0;
  while (i < md.size()) {
    const char c = md[i];
    if (c == '[') {
      open_brackets.push_back(i);
      ++i;
    } else if (c == ']' && i + 1 < md.size() && md[i + 1] == '(' &&
               !open_brackets.empty()) {
      const std::size_t anchor_start = open_brackets.back() + 1;
      const auto close = md.find(')', i + 2);
      if (close == std::string::npos) {
        ++i;
        continue;
      }
      links.push_back(Link{md.substr(anchor_start, i - anchor_start),
                           md.substr(i + 2, close - i - 2)});
      open_brackets.pop_back();
      i = close + 1;
    } else {
      ++i;
    }
  }
  return links;
}

}  // namespace shapeforge::markdown
