#include "evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "linearize.hpp"
#include "turtle.hpp"

namespace shapeforge::eval {

using nlohmann::json;

namespace {

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double f1_of(double p, double r) { return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r); }

std::string triple_key(const rdf::Triple& t) {
  return t.subject.value + "\x01" + t.predicate.value + "\x01" +
         rdf::term_sort_key(t.object) + "\x01" +
         std::to_string(t.object.index());
}

// Simple CSV with optional double-quoted fields ("" escapes a quote).
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      // Quotes open a quoted field only at its start; mid-field quotes are
      // ordinary characters (Turtle literals inside unquoted fields).
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
      }
    } else {
      field.push_back(c);
      any = true;
    }
  }
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

rdf::Triple parse_triple_ttl(const std::string& ttl) {
  const rdf::Graph g = rdf::parse_turtle(ttl);
  if (g.size() != 1) {
    throw ParseError("expected exactly one triple, got " +
                     std::to_string(g.size()) + " in: " + ttl);
  }
  return *g.triples().begin();
}

}  // namespace

double Tally::precision() const { return ratio(tp, tp + fp); }
double Tally::recall() const { return ratio(tp, tp + fn); }
double Tally::f1() const { return f1_of(precision(), recall()); }

Tally GraphScore::tally() const {
  return Tally{static_cast<std::int64_t>(tp_triples.size()),
               static_cast<std::int64_t>(fp_triples.size()),
               static_cast<std::int64_t>(fn_triples.size())};
}

Prediction make_prediction(const std::string& entity, const std::string& raw_output) {
  Prediction pred;
  pred.entity = entity;
  pred.raw_output = raw_output;
  auto decoded = linearize::decode(raw_output);
  if (decoded.ok()) pred.decoded = std::move(*decoded.graph);
  return pred;
}

std::vector<Prediction> read_predictions_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open predictions: " + path);
  std::vector<Prediction> preds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    preds.push_back(make_prediction(j.at("entity").get<std::string>(),
                                    j.at("raw_output").get<std::string>()));
  }
  return preds;
}

void write_predictions_jsonl(const std::string& path,
                             const std::vector<Prediction>& preds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write predictions: " + path);
  for (const auto& p : preds) {
    json j;
    j["entity"] = p.entity;
    j["raw_output"] = p.raw_output;
    out << j.dump() << "\n";
  }
}

namespace {

void recompute_aggregates(Report& report) {
  // Property pools from the per-graph triple sets.
  std::map<std::string, Tally> pools;
  Tally global;
  double precision_sum = 0.0, recall_sum = 0.0, f1_sum = 0.0;
  std::size_t produced = 0, well_formed = 0, matched = 0;
  for (const auto& g : report.per_graph) {
    const Tally t = g.tally();
    precision_sum += t.precision();
    recall_sum += t.recall();
    f1_sum += t.f1();
    global.tp += t.tp;
    global.fp += t.fp;
    global.fn += t.fn;
    for (const auto& triple : g.tp_triples) ++pools[triple.predicate.value].tp;
    for (const auto& triple : g.fp_triples) ++pools[triple.predicate.value].fp;
    for (const auto& triple : g.fn_triples) ++pools[triple.predicate.value].fn;
    if (g.present) {
      ++produced;
      if (g.well_formed) {
        ++well_formed;
        if (g.subject_match) ++matched;
      }
    }
  }
  report.per_property.clear();
  for (const auto& [prop, tally] : pools) {
    report.per_property.push_back(PropertyScore{prop, tally});
  }
  const double n_graphs = static_cast<double>(report.per_graph.size());
  report.precision = n_graphs == 0 ? 0.0 : precision_sum / n_graphs;
  report.recall = n_graphs == 0 ? 0.0 : recall_sum / n_graphs;
  report.f1_micro = n_graphs == 0 ? 0.0 : f1_sum / n_graphs;
  double macro_sum = 0.0;
  for (const auto& p : report.per_property) macro_sum += p.tally.f1();
  report.f1_macro = report.per_property.empty()
                        ? 0.0
                        : macro_sum / static_cast<double>(report.per_property.size());
  report.pool_precision = Tally{global.tp, global.fp, 0}.precision();
  report.pool_recall = Tally{global.tp, 0, global.fn}.recall();
  report.wellformed_rate = produced == 0 ? 0.0
                                         : static_cast<double>(well_formed) /
                                               static_cast<double>(produced);
  if (well_formed == 0) {
    report.subject_match_rate.reset();
  } else {
    report.subject_match_rate =
        static_cast<double>(matched) / static_cast<double>(well_formed);
  }
}

}  // namespace

Report score(const dataset::Dataset& gold, const std::vector<Prediction>& preds,
             const shacl::Shape& s) {
  const auto paths = s.property_paths();
  for (const auto& ex : gold) {
    for (const auto& p : ex.graph.property_set()) {
      if (!paths.count(p)) {
        throw InvalidArgumentError("gold graph of " + ex.entity +
                                   " uses a property outside the shape: " + p);
      }
    }
  }

  std::map<std::string, const Prediction*> by_entity;
  std::set<std::string> gold_entities;
  for (const auto& ex : gold) gold_entities.insert(ex.entity);
  Report report;
  for (const auto& pred : preds) {
    if (!gold_entities.count(pred.entity)) {
      ++report.unknown_entities;
      continue;
    }
    by_entity.emplace(pred.entity, &pred);  // first prediction wins
  }

  for (const auto& ex : gold) {
    GraphScore gs;
    gs.entity = ex.entity;
    const auto it = by_entity.find(ex.entity);
    const Prediction* pred = it == by_entity.end() ? nullptr : it->second;
    if (!pred) {
      gs.present = false;
      ++report.missing_predictions;
      gs.fn_triples = ex.graph.triples();
    } else if (!pred->well_formed()) {
      gs.fn_triples = ex.graph.triples();
    } else {
      gs.well_formed = true;
      gs.subject_match = true;
      for (const auto& t : pred->decoded->triples()) {
        if (t.subject.value != ex.entity) gs.subject_match = false;
        if (ex.graph.contains(t)) {
          gs.tp_triples.insert(t);
        } else {
          gs.fp_triples.insert(t);
        }
      }
      for (const auto& t : ex.graph.triples()) {
        if (!pred->decoded->contains(t)) gs.fn_triples.insert(t);
      }
    }
    report.per_graph.push_back(std::move(gs));
  }
  recompute_aggregates(report);
  return report;
}

std::optional<double> subject_match_rate(const std::vector<Prediction>& preds,
                                         const dataset::Dataset& gold) {
  std::map<std::string, const dataset::DualExample*> by_entity;
  for (const auto& ex : gold) by_entity.emplace(ex.entity, &ex);
  std::size_t well_formed = 0, matched = 0;
  for (const auto& pred : preds) {
    if (!pred.well_formed() || !by_entity.count(pred.entity)) continue;
    ++well_formed;
    bool all_match = true;
    for (const auto& t : pred.decoded->triples()) {
      if (t.subject.value != pred.entity) all_match = false;
    }
    if (all_match) ++matched;
  }
  if (well_formed == 0) return std::nullopt;
  return static_cast<double>(matched) / static_cast<double>(well_formed);
}

CorrectionSet corrections_from_csv(const std::string& text) {
  CorrectionSet out;
  std::set<std::string> seen;
  for (const auto& row : parse_csv(text)) {
    if (row.empty() || row[0] == "entity") continue;  // header / blank
    if (row.size() != 4) {
      throw ParseError("correction rows need 4 columns, got " +
                       std::to_string(row.size()));
    }
    Correction c;
    c.entity = row[0];
    c.triple = parse_triple_ttl(row[1]);
    if (row[2] == "FP") {
      c.cls = CorrectionClass::FalsePositive;
    } else if (row[2] == "FN") {
      c.cls = CorrectionClass::FalseNegative;
    } else {
      throw ParseError("correction class must be FP or FN, got " + row[2]);
    }
    if (row[3] == "new-fact") {
      c.verdict = CorrectionVerdict::NewFact;
    } else if (row[3] == "omission") {
      c.verdict = CorrectionVerdict::Omission;
    } else if (row[3] == "kg-noise") {
      c.verdict = CorrectionVerdict::KgNoise;
    } else {
      throw ParseError("correction verdict must be new-fact, omission or "
                       "kg-noise, got " + row[3]);
    }
    const std::string key = c.entity + "\x01" + triple_key(c.triple);
    if (!seen.insert(key).second) {
      throw ParseError("duplicate correction for " + c.entity);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Report apply_corrections(const Report& report, const CorrectionSet& corrections,
                         std::vector<std::string>* warnings) {
  Report out = report;
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  for (const auto& c : corrections) {
    GraphScore* gs = nullptr;
    for (auto& g : out.per_graph) {
      if (g.entity == c.entity) {
        gs = &g;
        break;
      }
    }
    if (!gs) {
      warn("correction for unscored entity " + c.entity);
      continue;
    }
    if (c.cls == CorrectionClass::FalsePositive) {
      if (!gs->fp_triples.count(c.triple)) {
        warn("correction does not match a scored false positive for " + c.entity);
        continue;
      }
      if (c.verdict == CorrectionVerdict::NewFact) {
        gs->fp_triples.erase(c.triple);
        gs->tp_triples.insert(c.triple);
        ++out.corrections_applied;
      }
      // Other verdicts leave a false positive in place.
    } else {
      if (!gs->fn_triples.count(c.triple)) {
        warn("correction does not match a scored false negative for " + c.entity);
        continue;
      }
      if (c.verdict == CorrectionVerdict::KgNoise) {
        gs->fn_triples.erase(c.triple);
        ++out.corrections_applied;
      }
      // An omission stays a miss.
    }
  }
  recompute_aggregates(out);
  return out;
}

std::vector<LabeledTriple> labeled_triples_from_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labeled triples: " + path);
  std::vector<LabeledTriple> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    out.push_back(LabeledTriple{j.at("subject_text").get<std::string>(),
                                j.at("relation_label").get<std::string>(),
                                j.at("object_text").get<std::string>()});
  }
  return out;
}

std::vector<RelationMapping> relation_mappings_from_csv(const std::string& text) {
  std::vector<RelationMapping> out;
  for (const auto& row : parse_csv(text)) {
    if (row.empty() || row[0] == "label") continue;
    if (row.size() != 3) {
      throw ParseError("relation mapping rows need 3 columns");
    }
    RelationMapping m;
    m.label = row[0];
    m.property_iri = row[1];
    if (row[2] == "object") {
      m.kind = RelationMapping::Kind::Object;
    } else if (row[2] == "date") {
      m.kind = RelationMapping::Kind::Date;
    } else if (row[2] == "string") {
      m.kind = RelationMapping::Kind::String;
    } else {
      throw ParseError("mapping kind must be object, date or string");
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<std::string> parse_date_text(const std::string& text) {
  static const char* months[] = {"January", "February", "March",     "April",
                                 "May",     "June",     "July",      "August",
                                 "September", "October", "November", "December"};
  auto format = [](int y, int m, int d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return std::string(buf);
  };
  // ISO form.
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    bool digits = true;
    for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) digits = false;
    }
    if (digits) return text;
  }
  // "8 May 1945" and "May 8, 1945".
  std::string cleaned;
  for (char c : text) {
    if (c == ',') continue;
    cleaned.push_back(c);
  }
  std::istringstream in(cleaned);
  std::string a, b, c;
  if (!(in >> a >> b >> c)) return std::nullopt;
  std::string extra;
  if (in >> extra) return std::nullopt;
  auto month_no = [&](const std::string& name) -> int {
    for (int m = 0; m < 12; ++m) {
      if (name == months[m]) return m + 1;
    }
    return 0;
  };
  auto all_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) {
      return std::isdigit(ch);
    });
  };
  try {
    if (all_digits(a) && month_no(b) && all_digits(c) && c.size() == 4) {
      return format(std::stoi(c), month_no(b), std::stoi(a));
    }
    if (month_no(a) && all_digits(b) && all_digits(c) && c.size() == 4) {
      return format(std::stoi(c), month_no(a), std::stoi(b));
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Prediction> align_baseline(const std::vector<LabeledTriple>& triples,
                                       const std::vector<RelationMapping>& mapping,
                                       const Linker& linker,
                                       const rules::RuleSet& rs,
                                       const rules::TripleLookup* aux,
                                       AlignDiagnostics* diagnostics) {
  std::map<std::string, const RelationMapping*> by_label;
  for (const auto& m : mapping) by_label[m.label] = &m;

  // Group linked triples per subject, keeping first-seen subject order.
  std::vector<std::string> subject_order;
  std::map<std::string, std::set<rdf::Triple>> by_subject;
  AlignDiagnostics local;
  for (const auto& lt : triples) {
    const auto map_it = by_label.find(lt.relation_label);
    if (map_it == by_label.end()) {
      ++local.unmapped_labels;
      continue;
    }
    const RelationMapping& m = *map_it->second;
    const auto subject = linker.link(lt.subject_text);
    if (!subject) {
      ++local.link_failures;
      continue;
    }
    rdf::Term object;
    switch (m.kind) {
      case RelationMapping::Kind::Object: {
        const auto linked = linker.link(lt.object_text);
        if (!linked) {
          ++local.link_failures;
          continue;
        }
        object = rdf::Iri{*linked};
        break;
      }
      case RelationMapping::Kind::Date: {
        if (const auto iso = parse_date_text(lt.object_text)) {
          object = rdf::Literal{*iso, rdf::iri::xsd_date, ""};
        } else {
          ++local.unparsed_dates;
          object = rdf::Literal{lt.object_text, "", ""};
        }
        break;
      }
      case RelationMapping::Kind::String:
        object = rdf::Literal{lt.object_text, "", ""};
        break;
    }
    if (!by_subject.count(*subject)) subject_order.push_back(*subject);
    by_subject[*subject].insert(
        rdf::Triple{rdf::Iri{*subject}, rdf::Iri{m.property_iri}, object});
  }

  std::vector<Prediction> out;
  for (const auto& subject : subject_order) {
    rdf::Graph g{by_subject[subject]};
    const auto enriched = rules::apply_rules(g, rs, aux);
    Prediction pred;
    pred.entity = subject;
    pred.decoded = enriched.graph;
    pred.raw_output = linearize::encode(enriched.graph);
    out.push_back(std::move(pred));
  }
  if (diagnostics) *diagnostics = local;
  return out;
}

std::string report_to_json(const Report& report) {
  json aggregates;
  aggregates["precision_example_mean"] = report.precision;
  aggregates["recall_example_mean"] = report.recall;
  aggregates["f1_micro_graph_mean"] = report.f1_micro;
  aggregates["f1_macro_property_mean"] = report.f1_macro;
  aggregates["precision_global_pool"] = report.pool_precision;
  aggregates["recall_global_pool"] = report.pool_recall;
  aggregates["wellformed_rate"] = report.wellformed_rate;
  if (report.subject_match_rate) {
    aggregates["subject_match_rate"] = *report.subject_match_rate;
  } else {
    aggregates["subject_match_rate"] = nullptr;
  }

  json per_graph = json::array();
  for (const auto& g : report.per_graph) {
    const Tally t = g.tally();
    json j;
    j["entity"] = g.entity;
    j["tp"] = t.tp;
    j["fp"] = t.fp;
    j["fn"] = t.fn;
    j["precision"] = t.precision();
    j["recall"] = t.recall();
    j["f1"] = t.f1();
    j["well_formed"] = g.well_formed;
    j["prediction_present"] = g.present;
    j["subject_match"] = g.subject_match;
    per_graph.push_back(std::move(j));
  }

  json per_property = json::array();
  for (const auto& p : report.per_property) {
    json j;
    j["property"] = p.property;
    j["tp"] = p.tally.tp;
    j["fp"] = p.tally.fp;
    j["fn"] = p.tally.fn;
    j["precision"] = p.tally.precision();
    j["recall"] = p.tally.recall();
    j["f1"] = p.tally.f1();
    per_property.push_back(std::move(j));
  }

  json root;
  root["aggregates"] = std::move(aggregates);
  root["per_graph"] = std::move(per_graph);
  root["per_property"] = std::move(per_property);
  root["diagnostics"] = {{"missing_predictions", report.missing_predictions},
                         {"unknown_entities", report.unknown_entities},
                         {"corrections_applied", report.corrections_applied}};
  return root.dump(2) + "\n";
}

std::string per_property_tsv(const Report& report) {
  std::ostringstream out;
  out << "property\ttp\tfp\tfn\tprecision\trecall\tf1\n";
  for (const auto& p : report.per_property) {
    out << p.property << "\t" << p.tally.tp << "\t" << p.tally.fp << "\t"
        << p.tally.fn << "\t" << p.tally.precision() << "\t" << p.tally.recall()
        << "\t" << p.tally.f1() << "\n";
  }
  return out.str();
}

}  // namespace shapeforge::eval
