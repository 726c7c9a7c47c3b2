#pragma once

#include <string>
#include <vector>

namespace shapeforge::markdown {

// Best-effort conversion of an HTML fragment: hyperlinks become
// [anchor](url), scripts/styles/comments are stripped, every other tag is
// dropped while its text is kept, block tags break paragraphs and
// whitespace runs collapse. Unparseable markup is skipped, never fatal.
std::string html_to_markdown(const std::string& html);

struct Link {
  std::string anchor;
  std::string url;

  friend bool operator==(const Link&, const Link&) = default;
};

// All [anchor](url) occurrences in order of their closing position.
// Nested brackets match innermost-first.
std::vector<Link> extract_links(const std::string& md);

// Decodes the common named entities plus numeric character references.
std::string decode_entities(const std::string& text);

}  // namespace shapeforge::markdown
