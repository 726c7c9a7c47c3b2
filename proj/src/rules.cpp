#include "rules.hpp"

#include <cctype>
#include <sstream>

#include "errors.hpp"

namespace shapeforge::rules {

namespace {

std::string resolve_name(const std::string& token, const rdf::PrefixMap& prefixes) {
  if (token.size() >= 2 && token.front() == '<' && token.back() == '>') {
    return token.substr(1, token.size() - 2);
  }
  return prefixes.expand(token);
}

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

// Leading 4-digit year of an xsd:date / xsd:dateTime lexical form.
// Negative and 5-digit years have no gYear rendering here and are skipped.
std::optional<std::string> year_of_date(const std::string& lexical,
                                        std::string* why_not) {
  if (!lexical.empty() && lexical.front() == '-') {
    *why_not = "negative year";
    return std::nullopt;
  }
  std::string digits;
  for (char c : lexical) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
    } else {
      break;
    }
  }
  if (digits.size() == 4) return digits;
  *why_not = digits.size() > 4 ? "year has more than 4 digits" : "no leading 4-digit year";
  return std::nullopt;
}

}  // namespace

bool RuleSet::needs_lookup() const {
  for (const auto& r : rules) {
    if (std::holds_alternative<PropagateViaRule>(r)) return true;
  }
  return false;
}

std::vector<rdf::Term> GraphLookup::objects(const std::string& subject,
                                            const std::string& predicate) const {
  std::vector<rdf::Term> out;
  for (const auto& t : graph_.triples()) {
    if (t.subject.value == subject && t.predicate.value == predicate) {
      out.push_back(t.object);
    }
  }
  return out;
}

RuleSet parse_rules(const std::string& text, const rdf::PrefixMap& prefixes) {
  RuleSet rs;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto words = split_words(raw);
    if (words.empty()) continue;
    const std::string& directive = words[0];
    if (directive == "DERIVE") {
      // DERIVE <src> -> <tgt> BY <transform>
      if (words.size() != 6 || words[2] != "->" || words[4] != "BY") {
        throw ParseError("malformed DERIVE rule", line_no, 1);
      }
      LiteralDeriveRule rule;
      rule.source_property = resolve_name(words[1], prefixes);
      rule.target_property = resolve_name(words[3], prefixes);
      if (words[5] == "year-of-date") {
        rule.transform = LiteralDeriveRule::Transform::YearOfDate;
      } else {
        throw ParseError("unknown transform '" + words[5] + "'", line_no, 1);
      }
      if (rule.source_property == rule.target_property) {
        throw ParseError("DERIVE source and target must differ", line_no, 1);
      }
      rs.rules.emplace_back(std::move(rule));
    } else if (directive == "PROPAGATE") {
      // PROPAGATE <bridge> OVER <p1>,<p2>,...
      if (words.size() != 4 || words[2] != "OVER") {
        throw ParseError("malformed PROPAGATE rule", line_no, 1);
      }
      PropagateViaRule rule;
      rule.bridge_property = resolve_name(words[1], prefixes);
      std::stringstream list(words[3]);
      std::string item;
      while (std::getline(list, item, ',')) {
        if (!item.empty()) rule.over_properties.insert(resolve_name(item, prefixes));
      }
      if (rule.over_properties.empty()) {
        throw ParseError("PROPAGATE needs at least one property", line_no, 1);
      }
      if (rule.over_properties.count(rule.bridge_property)) {
        throw ParseError("PROPAGATE bridge property cannot appear in OVER list",
                         line_no, 1);
      }
      rs.rules.emplace_back(std::move(rule));
    } else {
      throw ParseError("unknown directive '" + directive + "'", line_no, 1);
    }
  }
  return rs;
}

RuleApplication apply_rules(const rdf::Graph& g, const RuleSet& rs,
                            const TripleLookup* aux) {
  if (rs.needs_lookup() && aux == nullptr) {
    for (const auto& r : rs.rules) {
      const auto* prop = std::get_if<PropagateViaRule>(&r);
      if (!prop) continue;
      for (const auto& t : g.triples()) {
        if (prop->over_properties.count(t.predicate.value) && rdf::is_iri(t.object)) {
          throw LookupError("rule lookup required for " +
                            rdf::iri_value(t.object) + " but no lookup configured");
        }
      }
    }
  }

  rdf::Graph result = g;
  std::set<std::string> warnings;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : rs.rules) {
      if (const auto* derive = std::get_if<LiteralDeriveRule>(&rule)) {
        std::vector<rdf::Triple> additions;
        for (const auto& t : result.triples()) {
          if (t.predicate.value != derive->source_property) continue;
          const auto* lit = std::get_if<rdf::Literal>(&t.object);
          if (!lit) continue;
          if (lit->datatype != rdf::iri::xsd_date &&
              lit->datatype != rdf::iri::xsd_date_time) {
            continue;
          }
          std::string why;
          const auto year = year_of_date(lit->lexical, &why);
          if (!year) {
            warnings.insert("skipped " + t.subject.value + " " +
                            t.predicate.value + " \"" + lit->lexical + "\": " + why);
            continue;
          }
          additions.push_back(rdf::Triple{
              t.subject, rdf::Iri{derive->target_property},
              rdf::Literal{*year, rdf::iri::xsd_g_year, ""}});
        }
        for (auto& t : additions) {
          if (!result.contains(t)) {
            result.insert(std::move(t));
            changed = true;
          }
        }
      } else {
        const auto& prop = std::get<PropagateViaRule>(rule);
        // Lookups run against the input triples only; the derived
        // (s, p, country) triples never seed a second hop.
        std::vector<rdf::Triple> additions;
        for (const auto& t : g.triples()) {
          if (!prop.over_properties.count(t.predicate.value)) continue;
          if (!rdf::is_iri(t.object)) continue;
          for (const auto& bridged :
               aux->objects(rdf::iri_value(t.object), prop.bridge_property)) {
            if (!rdf::is_iri(bridged)) continue;
            additions.push_back(rdf::Triple{t.subject, t.predicate, bridged});
          }
        }
        for (auto& t : additions) {
          if (!result.contains(t)) {
            result.insert(std::move(t));
            changed = true;
          }
        }
      }
    }
  }
  return RuleApplication{std::move(result),
                         {warnings.begin(), warnings.end()}};
}

}  // namespace shapeforge::rules
