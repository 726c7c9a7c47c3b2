#include "linearize.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "errors.hpp"
#include "turtle.hpp"

namespace shapeforge::linearize {

using nlohmann::json;

namespace {

std::string compact_or_throw(const std::string& iri, const rdf::PrefixMap& prefixes) {
  if (auto name = prefixes.compact(iri)) return *name;
  throw InvalidArgumentError("IRI has no declared prefix: " + iri);
}

}  // namespace

std::string encode(const rdf::Graph& g, const rdf::PrefixMap& prefixes) {
  if (g.empty()) throw InvalidArgumentError("cannot linearize an empty graph");
  const std::string& subject = g.triples().begin()->subject.value;
  for (const auto& t : g.triples()) {
    if (t.subject.value != subject) {
      throw InvalidArgumentError("linearization needs an entity-centric graph");
    }
  }

  // Predicate -> objects, both ascending; std::set/std::map give the order.
  std::map<std::string, std::vector<std::string>> by_predicate;
  for (const auto& t : g.triples()) {
    by_predicate[t.predicate.value].push_back(rdf::write_term(t.object, prefixes));
  }

  std::string out = compact_or_throw(subject, prefixes) + " ";
  bool first_predicate = true;
  for (const auto& [predicate, objects] : by_predicate) {
    if (!first_predicate) out += "; ";
    first_predicate = false;
    out += compact_or_throw(predicate, prefixes) + " ";
    for (std::size_t i = 0; i < objects.size(); ++i) {
      if (i > 0) out += ", ";
      out += objects[i];
    }
  }
  out += " .";
  return out;
}

namespace {

// Minimal scanner for the linearized form; failure positions come back to
// the caller instead of throwing.
class LineScanner {
 public:
  LineScanner(const std::string& text, const rdf::PrefixMap& prefixes)
      : text_(text), prefixes_(prefixes) {}

  DecodeResult run() {
    DecodeResult result;
    try {
      rdf::Graph g;
      skip_spaces();
      const std::string subject = read_iri("subject");
      while (true) {
        skip_spaces();
        const std::string predicate = read_iri("predicate");
        while (true) {
          skip_spaces();
          rdf::Term object = read_object();
          g.insert(rdf::Triple{rdf::Iri{subject}, rdf::Iri{predicate}, object});
          skip_spaces();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
        if (peek() == ';') {
          ++pos_;
          continue;
        }
        break;
      }
      skip_spaces();
      if (peek() != '.') fail("missing terminating '.'");
      ++pos_;
      skip_spaces();
      if (pos_ != text_.size()) fail("trailing content after terminator");
      if (g.empty()) fail("no triples");
      result.graph = std::move(g);
    } catch (const ParseError& e) {
      result.error = e.what();
      result.error_pos = error_pos_;
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    error_pos_ = pos_;
    throw ParseError(msg + " at offset " + std::to_string(pos_));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_spaces() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string read_iri(const std::string& role) {
    skip_spaces();
    if (peek() == '<') {
      const auto end = text_.find('>', pos_);
      if (end == std::string::npos) fail("unterminated IRI");
      const std::string iri = text_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return iri;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && peek() != ':' &&
           !std::isspace(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
    if (peek() != ':') fail("expected " + role);
    const std::string prefix = text_.substr(start, pos_ - start);
    ++pos_;
    const std::size_t local_start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';') break;
      if (c == '.' && (pos_ + 1 >= text_.size() ||
                       std::isspace(static_cast<unsigned char>(text_[pos_ + 1])) ||
                       text_[pos_ + 1] == '\0')) {
        break;  // statement terminator
      }
      ++pos_;
    }
    const std::string local = text_.substr(local_start, pos_ - local_start);
    if (local.empty()) fail("empty local name");
    try {
      return prefixes_.expand(prefix + ":" + local);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  rdf::Term read_object() {
    skip_spaces();
    if (peek() == '"') {
      ++pos_;
      rdf::Literal lit;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated literal");
        const char c = text_[pos_++];
        if (c == '"') break;
        if (c == '\\') {
          if (pos_ >= text_.size()) fail("dangling escape");
          const char esc = text_[pos_++];
          switch (esc) {
            case 'n': lit.lexical.push_back('\n'); break;
            case 't': lit.lexical.push_back('\t'); break;
            case 'r': lit.lexical.push_back('\r'); break;
            case '"': lit.lexical.push_back('"'); break;
            case '\\': lit.lexical.push_back('\\'); break;
            default: fail("unsupported escape");
          }
          continue;
        }
        lit.lexical.push_back(c);
      }
      if (peek() == '^') {
        if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '^') fail("malformed datatype");
        pos_ += 2;
        lit.datatype = read_iri("datatype");
      } else if (peek() == '@') {
        ++pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
          lit.language.push_back(text_[pos_++]);
        }
        if (lit.language.empty()) fail("empty language tag");
      }
      return lit;
    }
    if (peek() == '\0') fail("expected object");
    return rdf::Iri{read_iri("object")};
  }

  const std::string& text_;
  const rdf::PrefixMap& prefixes_;
  std::size_t pos_ = 0;
  std::size_t error_pos_ = 0;
};

}  // namespace

DecodeResult decode(const std::string& text, const rdf::PrefixMap& prefixes) {
  return LineScanner(text, prefixes).run();
}

std::string build_prompt(const std::string& entity_iri, const std::string& abstract) {
  if (abstract.empty()) throw InvalidArgumentError("prompt needs a non-empty abstract");
  return entity_iri + " : " + abstract;
}

std::pair<std::string, std::string> split_prompt(const std::string& prompt) {
  const auto sep = prompt.find(" : ");
  if (sep == std::string::npos) {
    throw InvalidArgumentError("prompt has no ' : ' separator");
  }
  return {prompt.substr(0, sep), prompt.substr(sep + 3)};
}

WeightTable compute_weights(const std::vector<sampling::Stratum>& strata) {
  if (strata.empty()) throw InvalidArgumentError("no strata to weight");
  std::size_t total = 0;
  for (const auto& stratum : strata) {
    if (stratum.members.empty()) {
      throw InvalidArgumentError("empty stratum: " + stratum.label);
    }
    total += stratum.members.size();
  }
  WeightTable table;
  table.degenerate = strata.size() == 1;
  for (const auto& stratum : strata) {
    table.by_label[stratum.label] = std::log(
        static_cast<double>(total) / static_cast<double>(stratum.members.size()));
  }
  return table;
}

std::string weights_to_json(const WeightTable& weights) {
  json j;
  j["log_base"] = "e";
  j["degenerate"] = weights.degenerate;
  j["weights"] = weights.by_label;
  return j.dump(2) + "\n";
}

WeightTable weights_from_json(const std::string& text) {
  const json j = json::parse(text);
  WeightTable table;
  table.degenerate = j.value("degenerate", false);
  for (const auto& [label, value] : j.at("weights").items()) {
    table.by_label[label] = value.get<double>();
  }
  return table;
}

double reference_cross_entropy(const std::vector<std::vector<double>>& gold,
                               const std::vector<std::vector<double>>& predicted) {
  if (gold.size() != predicted.size() || gold.empty()) {
    throw InvalidArgumentError("token sequences differ in length or are empty");
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < gold.size(); ++t) {
    if (gold[t].size() != predicted[t].size()) {
      throw InvalidArgumentError("distribution widths differ at token " +
                                 std::to_string(t));
    }
    double gold_mass = 0.0, pred_mass = 0.0;
    for (double v : gold[t]) gold_mass += v;
    for (double v : predicted[t]) pred_mass += v;
    if (std::abs(gold_mass - 1.0) > 1e-6 || std::abs(pred_mass - 1.0) > 1e-6) {
      throw InvalidArgumentError("distributions must sum to 1 at token " +
                                 std::to_string(t));
    }
    for (std::size_t v = 0; v < gold[t].size(); ++v) {
      if (gold[t][v] == 0.0) continue;
      if (predicted[t][v] <= 0.0) {
        return std::numeric_limits<double>::infinity();
      }
      sum += gold[t][v] * std::log(predicted[t][v]);
    }
  }
  return -sum / static_cast<double>(gold.size());
}

std::vector<std::string> export_training_set(
    const dataset::Dataset& ds, const std::vector<sampling::Stratum>& strata,
    const WeightTable& weights, const std::vector<sampling::FoldSplit>& folds,
    const std::string& out_dir, const ExportOptions& options) {
  namespace fs = std::filesystem;
  std::vector<std::string> label_of(ds.size());
  std::vector<int> cell_of(ds.size(), -1);
  for (const auto& stratum : strata) {
    for (const auto m : stratum.members) {
      if (m >= ds.size()) throw InvalidArgumentError("stratum member out of range");
      label_of[m] = stratum.label;
    }
  }
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (const auto m : folds[f].test) {
      if (m >= ds.size()) throw InvalidArgumentError("fold member out of range");
      cell_of[m] = static_cast<int>(f);
    }
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (label_of[i].empty() || cell_of[i] < 0) {
      throw InvalidArgumentError("example " + std::to_string(i) +
                                 " is missing a stratum or fold assignment");
    }
  }

  auto line_for = [&](std::size_t i) {
    const auto& ex = ds[i];
    json j;
    j["entity"] = ex.entity;
    j["prompt"] = build_prompt(ex.entity, options.text == TextSource::Plain
                                              ? ex.abstract_plain
                                              : ex.abstract_md);
    j["target"] = encode(ex.graph);
    const auto weight_it = weights.by_label.find(label_of[i]);
    if (weight_it == weights.by_label.end()) {
      throw InvalidArgumentError("no weight for stratum " + label_of[i]);
    }
    j["weight"] = weight_it->second;
    j["stratum"] = label_of[i];
    j["fold"] = cell_of[i];
    j["synthetic"] = ex.synthetic;
    return j.dump();
  };

  fs::create_directories(out_dir);
  std::vector<std::string> written;
  auto write_split = [&](const std::string& name,
                         const std::vector<std::size_t>& members) {
    const std::string path = (fs::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto m : members) out << line_for(m) << "\n";
    written.push_back(path);
  };
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const std::string stem = "fold" + std::to_string(f);
    write_split(stem + "_train.jsonl", folds[f].train);
    write_split(stem + "_validation.jsonl", folds[f].validation);
    write_split(stem + "_test.jsonl", folds[f].test);
  }
  return written;
}

}  // namespace shapeforge::linearize
