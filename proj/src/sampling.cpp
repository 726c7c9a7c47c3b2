#include "sampling.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "evidence.hpp"
#include "ingest.hpp"
#include "markdown.hpp"
#include "random.hpp"

namespace shapeforge::sampling {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void check_within_shape(const dataset::Dataset& ds, const shacl::Shape& s) {
  const auto paths = s.property_paths();
  for (const auto& ex : ds) {
    for (const auto& p : ex.graph.property_set()) {
      if (!paths.count(p)) {
        throw InvalidArgumentError("property outside shape in " + ex.entity +
                                   ": " + p);
      }
    }
  }
}

bool created_before(const dataset::DualExample& ex, const std::string& cutoff) {
  return !ex.created_date.empty() && ex.created_date < cutoff;
}

bool created_on_or_after(const dataset::DualExample& ex, const std::string& cutoff) {
  return !ex.created_date.empty() && ex.created_date >= cutoff;
}

}  // namespace

double PropertyStats::frequency(const std::string& prop) const {
  const auto it = per_property.find(prop);
  return it == per_property.end() ? 0.0 : it->second.frequency;
}

PropertyStats compute_stats(const dataset::Dataset& ds, const shacl::Shape& s) {
  check_within_shape(ds, s);
  PropertyStats stats;
  stats.dataset_size = ds.size();
  for (const auto& path : s.property_paths()) stats.per_property[path] = {};
  for (const auto& ex : ds) {
    for (const auto& t : ex.graph.triples()) {
      ++stats.per_property[t.predicate.value].triple_count;
    }
    for (const auto& p : ex.graph.property_set()) {
      ++stats.per_property[p].example_count;
    }
  }
  if (!ds.empty()) {
    for (auto& [path, entry] : stats.per_property) {
      entry.frequency =
          static_cast<double>(entry.example_count) / static_cast<double>(ds.size());
    }
  }
  return stats;
}

std::string stats_to_tsv(const PropertyStats& stats) {
  std::vector<std::pair<std::string, PropertyStats::Entry>> rows(
      stats.per_property.begin(), stats.per_property.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second.triple_count != b.second.triple_count) {
      return a.second.triple_count > b.second.triple_count;
    }
    return a.first < b.first;
  });
  std::ostringstream out;
  out << "# dataset-size\t" << stats.dataset_size << "\n";
  out << "property\ttriples\tfrequency\n";
  for (const auto& [prop, entry] : rows) {
    out << prop << "\t" << entry.triple_count << "\t"
        << format_double(entry.frequency) << "\n";
  }
  return out.str();
}

PropertyStats stats_from_tsv(const std::string& text) {
  PropertyStats stats;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# dataset-size", 0) == 0) {
      const auto tab = line.find('\t');
      if (tab != std::string::npos) {
        stats.dataset_size = std::stoull(line.substr(tab + 1));
      }
      continue;
    }
    if (line.rfind("property\t", 0) == 0) continue;
    std::istringstream row(line);
    std::string prop, triples, freq;
    if (!std::getline(row, prop, '\t') || !std::getline(row, triples, '\t') ||
        !std::getline(row, freq, '\t')) {
      throw ParseError("malformed stats row", line_no, 1);
    }
    PropertyStats::Entry entry;
    entry.triple_count = std::stoll(triples);
    entry.frequency = std::stod(freq);
    entry.example_count = static_cast<std::int64_t>(
        entry.frequency * static_cast<double>(stats.dataset_size) + 0.5);
    stats.per_property[prop] = entry;
  }
  return stats;
}

FrequencySplit split_by_frequency(const PropertyStats& classification,
                                  const PropertyStats& threshold) {
  if (classification.per_property.size() != threshold.per_property.size()) {
    throw InvalidArgumentError("stats cover different property universes");
  }
  for (const auto& [prop, entry] : threshold.per_property) {
    if (!classification.per_property.count(prop)) {
      throw InvalidArgumentError("stats cover different property universes: " +
                                 prop);
    }
  }
  FrequencySplit split;
  double sum = 0.0;
  for (const auto& [prop, entry] : threshold.per_property) sum += entry.frequency;
  split.mean_frequency = sum / static_cast<double>(threshold.per_property.size());
  for (const auto& [prop, entry] : classification.per_property) {
    if (entry.frequency > split.mean_frequency) {
      split.frequent.insert(prop);
    } else {
      split.rare.insert(prop);
    }
  }
  return split;
}

std::string split_to_json(const FrequencySplit& split) {
  json j;
  j["mean_frequency"] = split.mean_frequency;
  j["frequent"] = split.frequent;
  j["rare"] = split.rare;
  return j.dump(2) + "\n";
}

FrequencySplit split_from_json(const std::string& text) {
  const json j = json::parse(text);
  FrequencySplit split;
  split.mean_frequency = j.at("mean_frequency").get<double>();
  for (const auto& p : j.at("frequent")) split.frequent.insert(p.get<std::string>());
  for (const auto& p : j.at("rare")) split.rare.insert(p.get<std::string>());
  return split;
}

const char* sample_kind_name(SampleKind kind) {
  switch (kind) {
    case SampleKind::BiasedDatatypeObject: return "biased-dt-op";
    case SampleKind::RareBiased: return "rare-biased";
    case SampleKind::RandomScaled: return "random-scaled";
    case SampleKind::SufficientExposure: return "sufficient-exposure";
    case SampleKind::CrossEvalUnseen: return "cross-eval-unseen";
    case SampleKind::CrossEvalFrequent: return "cross-eval-frequent";
    case SampleKind::CrossEvalRare: return "cross-eval-rare";
    case SampleKind::CrossEvalRandom: return "cross-eval-random";
  }
  return "random-scaled";
}

SampleKind sample_kind_from_name(const std::string& name) {
  static const std::map<std::string, SampleKind> table = {
      {"biased-dt-op", SampleKind::BiasedDatatypeObject},
      {"rare-biased", SampleKind::RareBiased},
      {"random-scaled", SampleKind::RandomScaled},
      {"sufficient-exposure", SampleKind::SufficientExposure},
      {"cross-eval-unseen", SampleKind::CrossEvalUnseen},
      {"cross-eval-frequent", SampleKind::CrossEvalFrequent},
      {"cross-eval-rare", SampleKind::CrossEvalRare},
      {"cross-eval-random", SampleKind::CrossEvalRandom},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw InvalidArgumentError("unknown sample kind: " + name);
  return it->second;
}

SampleSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid sample spec: ") + e.what());
  }
  SampleSpec spec;
  spec.kind = sample_kind_from_name(j.at("kind").get<std::string>());
  spec.size = j.value("size", std::size_t{0});
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.date_cutoff = j.value("date_cutoff", std::string{});
  const bool cross_eval = spec.kind == SampleKind::CrossEvalUnseen ||
                          spec.kind == SampleKind::CrossEvalFrequent ||
                          spec.kind == SampleKind::CrossEvalRare ||
                          spec.kind == SampleKind::CrossEvalRandom;
  if (cross_eval && spec.size == 0) spec.size = 200;  // the conventional size
  if (j.contains("exposure_threshold") && !j.at("exposure_threshold").is_null()) {
    spec.exposure_threshold = j.at("exposure_threshold").get<std::int64_t>();
  }
  if (spec.kind == SampleKind::SufficientExposure) {
    if (!spec.exposure_threshold) {
      throw InvalidArgumentError(
          "sufficient-exposure sampling needs an exposure_threshold");
    }
  } else {
    if (spec.exposure_threshold) {
      throw InvalidArgumentError(
          "exposure_threshold only applies to sufficient-exposure sampling");
    }
    if (spec.size == 0) throw InvalidArgumentError("sample size must be positive");
  }
  return spec;
}

std::string spec_to_json(const SampleSpec& spec) {
  json j;
  j["kind"] = sample_kind_name(spec.kind);
  j["size"] = spec.size;
  j["seed"] = spec.seed;
  j["date_cutoff"] = spec.date_cutoff;
  if (spec.exposure_threshold) {
    j["exposure_threshold"] = *spec.exposure_threshold;
  } else {
    j["exposure_threshold"] = nullptr;
  }
  return j.dump(2) + "\n";
}

SampleResult sample(const dataset::Dataset& base, const SampleSpec& spec,
                    const shacl::Shape& s, const FrequencySplit* split,
                    const std::set<std::string>* exclude) {
  if (spec.kind == SampleKind::SufficientExposure) {
    if (!spec.exposure_threshold) {
      throw InvalidArgumentError(
          "sufficient-exposure sampling needs an exposure_threshold");
    }
    return sufficient_exposure_sample(base, s, *spec.exposure_threshold, spec.seed);
  }
  if (spec.size == 0) throw InvalidArgumentError("sample size must be positive");

  const auto needs_split = spec.kind == SampleKind::RareBiased ||
                           spec.kind == SampleKind::CrossEvalFrequent ||
                           spec.kind == SampleKind::CrossEvalRare;
  if (needs_split && split == nullptr) {
    throw InvalidArgumentError("this sample kind needs a frequency split");
  }
  if (spec.kind == SampleKind::CrossEvalUnseen && spec.date_cutoff.empty()) {
    throw InvalidArgumentError("cross-eval-unseen needs a date cutoff");
  }

  const auto datatype_props = s.paths_of_kind(shacl::ConstraintKind::Datatype);
  const auto object_props = s.paths_of_kind(shacl::ConstraintKind::Object);

  std::string eligibility;
  auto eligible_fn = [&](const dataset::DualExample& ex) -> bool {
    const auto props = ex.graph.property_set();
    auto intersects = [&](const std::set<std::string>& a) {
      for (const auto& p : props) {
        if (a.count(p)) return true;
      }
      return false;
    };
    switch (spec.kind) {
      case SampleKind::BiasedDatatypeObject:
        if (!intersects(datatype_props) || !intersects(object_props)) return false;
        return spec.date_cutoff.empty() || created_before(ex, spec.date_cutoff);
      case SampleKind::RareBiased:
        if (!intersects(split->rare)) return false;
        return spec.date_cutoff.empty() || created_before(ex, spec.date_cutoff);
      case SampleKind::RandomScaled:
        return spec.date_cutoff.empty() || created_before(ex, spec.date_cutoff);
      case SampleKind::CrossEvalUnseen:
        return created_on_or_after(ex, spec.date_cutoff);
      case SampleKind::CrossEvalFrequent:
        return !props.empty() &&
               std::includes(split->frequent.begin(), split->frequent.end(),
                             props.begin(), props.end());
      case SampleKind::CrossEvalRare:
        return intersects(split->rare);
      case SampleKind::CrossEvalRandom:
        return true;
      case SampleKind::SufficientExposure:
        return false;  // handled above
    }
    return false;
  };

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (exclude && exclude->count(base[i].entity)) continue;
    if (eligible_fn(base[i])) eligible.push_back(i);
  }
  if (eligible.size() < spec.size) {
    throw SamplingError("insufficient eligible examples for " +
                        std::string(sample_kind_name(spec.kind)) + ": needed " +
                        std::to_string(spec.size) + ", available " +
                        std::to_string(eligible.size()));
  }

  SeededRng rng(spec.seed);
  const auto picks = rng.sample_indices(eligible.size(), spec.size);
  SampleResult result;
  result.eligibility = sample_kind_name(spec.kind);
  if (!spec.date_cutoff.empty()) {
    result.eligibility += " cutoff=" + spec.date_cutoff;
  }
  for (const auto pick : picks) {
    result.indices.push_back(eligible[pick]);
    result.examples.push_back(base[eligible[pick]]);
  }
  return result;
}

std::string least_represented(const std::vector<std::string>& candidates,
                              const std::map<std::string, std::size_t>& counts) {
  if (candidates.empty()) throw InvalidArgumentError("no candidates");
  auto count_of = [&](const std::string& p) {
    const auto it = counts.find(p);
    return it == counts.end() ? std::size_t{0} : it->second;
  };
  std::string best = candidates.front();
  for (const auto& p : candidates) {
    if (count_of(p) < count_of(best)) best = p;
  }
  return best;
}

std::vector<Stratum> stratify(const dataset::Dataset& ds,
                              const std::set<std::string>& rare,
                              std::uint64_t seed) {
  // Processing order keyed on (seed, entity) so identical seeds give the
  // same strata regardless of input order.
  std::vector<std::size_t> order(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) order[i] = i;
  std::vector<std::uint64_t> keys(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    keys[i] = fnv1a64(ds[i].entity, seed);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    if (ds[a].entity != ds[b].entity) return ds[a].entity < ds[b].entity;
    return a < b;
  });

  std::map<std::string, std::vector<std::size_t>> strata;
  std::map<std::string, std::size_t> counts;
  for (const auto idx : order) {
    const auto props = ds[idx].graph.property_set();
    std::vector<std::string> rare_here;
    for (const auto& p : props) {
      if (rare.count(p)) rare_here.push_back(p);
    }
    std::string label;
    if (rare_here.empty()) {
      label = kOtherStratum;
    } else if (rare_here.size() == 1) {
      label = rare_here.front();
    } else {
      label = least_represented(rare_here, counts);
    }
    strata[label].push_back(idx);
    ++counts[label];
  }

  std::vector<Stratum> out;
  for (auto& [label, members] : strata) {
    if (label == kOtherStratum) continue;
    std::sort(members.begin(), members.end());
    out.push_back(Stratum{label, std::move(members)});
  }
  if (auto it = strata.find(kOtherStratum); it != strata.end()) {
    std::sort(it->second.begin(), it->second.end());
    out.push_back(Stratum{kOtherStratum, std::move(it->second)});
  }
  return out;
}

std::string strata_to_json(const std::vector<Stratum>& strata) {
  json arr = json::array();
  for (const auto& stratum : strata) {
    json j;
    j["label"] = stratum.label;
    j["members"] = stratum.members;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<Stratum> strata_from_json(const std::string& text) {
  const json arr = json::parse(text);
  std::vector<Stratum> out;
  for (const auto& j : arr) {
    Stratum stratum;
    stratum.label = j.at("label").get<std::string>();
    for (const auto& m : j.at("members")) {
      stratum.members.push_back(m.get<std::size_t>());
    }
    out.push_back(std::move(stratum));
  }
  return out;
}

std::vector<FoldSplit> kfold(const std::vector<Stratum>& strata, std::size_t k,
                             std::uint64_t seed, std::size_t dataset_size) {
  if (k < 2) throw InvalidArgumentError("k-fold needs k >= 2");
  if (k > dataset_size) {
    throw InvalidArgumentError("k-fold with k=" + std::to_string(k) +
                               " exceeds the dataset size " +
                               std::to_string(dataset_size));
  }
  std::vector<std::vector<std::size_t>> cells(k);
  std::vector<bool> seen(dataset_size, false);
  for (const auto& stratum : strata) {
    std::vector<std::size_t> members = stratum.members;
    for (const auto m : members) {
      if (m >= dataset_size || seen[m]) {
        throw InvalidArgumentError("strata do not partition the dataset");
      }
      seen[m] = true;
    }
    SeededRng rng = SeededRng::with_salt(seed, fnv1a64(stratum.label));
    rng.shuffle(members);
    if (members.size() >= k) {
      const std::size_t share = members.size() / k;
      const std::size_t extra = members.size() % k;
      std::size_t pos = 0;
      for (std::size_t f = 0; f < k; ++f) {
        const std::size_t take = share + (f < extra ? 1 : 0);
        for (std::size_t j = 0; j < take; ++j) cells[f].push_back(members[pos++]);
      }
    } else {
      const std::size_t offset = static_cast<std::size_t>(rng.bounded(k));
      for (std::size_t j = 0; j < members.size(); ++j) {
        cells[(offset + j) % k].push_back(members[j]);
      }
    }
  }
  for (std::size_t m = 0; m < dataset_size; ++m) {
    if (!seen[m]) throw InvalidArgumentError("strata do not cover the dataset");
  }

  std::vector<FoldSplit> folds(k);
  for (auto& cell : cells) std::sort(cell.begin(), cell.end());
  for (std::size_t f = 0; f < k; ++f) {
    folds[f].test = cells[f];
    folds[f].validation = cells[(f + 1) % k];
    for (std::size_t other = 0; other < k; ++other) {
      if (other == f || other == (f + 1) % k) continue;
      folds[f].train.insert(folds[f].train.end(), cells[other].begin(),
                            cells[other].end());
    }
    std::sort(folds[f].train.begin(), folds[f].train.end());
  }
  return folds;
}

SampleResult sufficient_exposure_sample(const dataset::Dataset& base,
                                        const shacl::Shape& s,
                                        std::int64_t threshold,
                                        std::uint64_t seed) {
  if (threshold <= 0) throw InvalidArgumentError("exposure threshold must be positive");
  check_within_shape(base, s);

  std::map<std::string, std::vector<std::size_t>> bearers;
  for (const auto& path : s.property_paths()) bearers[path] = {};
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (const auto& p : base[i].graph.property_set()) bearers[p].push_back(i);
  }
  for (const auto& [prop, list] : bearers) {
    if (static_cast<std::int64_t>(list.size()) < threshold) {
      throw SamplingError("insufficient coverage for " + prop + ": " +
                          std::to_string(list.size()) + " examples, need " +
                          std::to_string(threshold));
    }
  }

  // Least represented first; ties broken by ascending IRI.
  std::vector<std::string> order;
  for (const auto& [prop, list] : bearers) order.push_back(prop);
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    if (bearers[a].size() != bearers[b].size()) {
      return bearers[a].size() < bearers[b].size();
    }
    return a < b;
  });

  SeededRng rng(seed);
  std::vector<bool> selected(base.size(), false);
  std::map<std::string, std::int64_t> counts;
  SampleResult result;
  result.eligibility = "sufficient-exposure threshold=" + std::to_string(threshold);

  for (const auto& prop : order) {
    if (counts[prop] >= threshold) continue;
    std::vector<std::size_t> pool;
    for (const auto idx : bearers[prop]) {
      if (!selected[idx]) pool.push_back(idx);
    }
    while (counts[prop] < threshold) {
      if (pool.empty()) {
        throw SamplingError("exhausted candidates for " + prop);
      }
      const std::size_t at = static_cast<std::size_t>(rng.bounded(pool.size()));
      const std::size_t idx = pool[at];
      pool[at] = pool.back();
      pool.pop_back();
      selected[idx] = true;
      result.indices.push_back(idx);
      result.examples.push_back(base[idx]);
      for (const auto& p : base[idx].graph.property_set()) ++counts[p];
    }
  }
  return result;
}

AugmentStrategy augment_strategy_from_name(const std::string& name) {
  if (name == "KR0") return AugmentStrategy::KR0;
  if (name == "KR1") return AugmentStrategy::KR1;
  throw InvalidArgumentError("unknown augmentation strategy: " + name);
}

namespace {

struct Slot {
  std::string property;
  bool is_object = false;
  rdf::Term value;          // the template source's gold value
  std::string surface;      // exact occurrence in the plain text (literals)
  std::size_t rendering = 0;  // which date rendering matched
  std::string link_markdown;  // full "[anchor](url)" occurrence (objects)
  std::string link_anchor;
};

struct AbstractTemplate {
  std::size_t source = 0;  // index into the dataset
  std::vector<Slot> slots;
  std::set<std::string> pattern;
};

std::string anchor_for(const std::string& resource_iri) {
  std::string anchor = ingest::local_name(resource_iri);
  std::replace(anchor.begin(), anchor.end(), '_', ' ');
  return anchor;
}

// A template source must expose every gold value verbatim: literals in
// the plain abstract, objects through markdown links.
std::optional<AbstractTemplate> build_template(const dataset::Dataset& ds,
                                               std::size_t index,
                                               const shacl::Shape& s) {
  const auto& ex = ds[index];
  AbstractTemplate tpl;
  tpl.source = index;
  tpl.pattern = ex.graph.property_set();
  const auto links = markdown::extract_links(ex.abstract_md);
  for (const auto& t : ex.graph.triples()) {
    const auto* constraint = s.find(t.predicate.value);
    if (!constraint) return std::nullopt;
    Slot slot;
    slot.property = t.predicate.value;
    slot.value = t.object;
    if (constraint->kind == shacl::ConstraintKind::Datatype) {
      const auto* lit = std::get_if<rdf::Literal>(&t.object);
      if (!lit) return std::nullopt;
      const auto renderings = evidence::date_renderings(*lit);
      bool found = false;
      for (std::size_t r = 0; r < renderings.size(); ++r) {
        if (!renderings[r].empty() &&
            ex.abstract_plain.find(renderings[r]) != std::string::npos) {
          slot.surface = renderings[r];
          slot.rendering = r;
          found = true;
          break;
        }
      }
      if (!found) return std::nullopt;
    } else {
      if (!rdf::is_iri(t.object)) return std::nullopt;
      slot.is_object = true;
      bool found = false;
      for (const auto& link : links) {
        if (evidence::url_matches_resource(link.url, rdf::iri_value(t.object))) {
          slot.link_markdown = "[" + link.anchor + "](" + link.url + ")";
          slot.link_anchor = link.anchor;
          found = true;
          break;
        }
      }
      if (!found || ex.abstract_md.find(slot.link_markdown) == std::string::npos) {
        return std::nullopt;
      }
    }
    tpl.slots.push_back(std::move(slot));
  }
  return tpl;
}

void replace_all(std::string& text, const std::string& from, const std::string& to) {
  if (from.empty()) return;
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// Fill a template with a donor's values. Returns nothing when the donor
// cannot populate every slot self-consistently.
std::optional<dataset::DualExample> fill_template(
    const AbstractTemplate& tpl, const dataset::Dataset& ds,
    const dataset::DualExample& donor) {
  const auto& source = ds[tpl.source];
  if (donor.entity == source.entity) return std::nullopt;

  // Donor values per property in canonical (set) order.
  std::map<std::string, std::vector<rdf::Term>> donor_values;
  for (const auto& t : donor.graph.triples()) {
    donor_values[t.predicate.value].push_back(t.object);
  }
  std::map<std::string, std::size_t> slot_no;

  struct Replacement {
    std::string from_plain, to_plain;
    std::string from_md, to_md;
  };
  std::vector<Replacement> replacements;
  std::set<rdf::Triple> synthetic_triples;
  std::set<std::string> used_surfaces;

  for (const auto& slot : tpl.slots) {
    auto it = donor_values.find(slot.property);
    const std::size_t nth = slot_no[slot.property]++;
    if (it == donor_values.end() || it->second.size() <= nth) {
      return std::nullopt;  // donor lacks a slotted value
    }
    const rdf::Term& value = it->second[nth];
    Replacement repl;
    if (slot.is_object) {
      if (!rdf::is_iri(value)) return std::nullopt;
      const std::string& iri = rdf::iri_value(value);
      const std::string anchor = anchor_for(iri);
      repl.from_md = slot.link_markdown;
      repl.to_md = "[" + anchor + "](/wiki/" + ingest::local_name(iri) + ")";
      repl.from_plain = slot.link_anchor;
      repl.to_plain = anchor;
      if (!used_surfaces.insert(slot.link_markdown).second) return std::nullopt;
    } else {
      const auto* lit = std::get_if<rdf::Literal>(&value);
      if (!lit) return std::nullopt;
      const auto renderings = evidence::date_renderings(*lit);
      const std::string rendered =
          renderings[std::min(slot.rendering, renderings.size() - 1)];
      repl.from_plain = slot.surface;
      repl.to_plain = rendered;
      repl.from_md = slot.surface;
      repl.to_md = rendered;
      if (!used_surfaces.insert(slot.surface).second) return std::nullopt;
    }
    synthetic_triples.insert(
        rdf::Triple{rdf::Iri{donor.entity}, rdf::Iri{slot.property}, value});
    replacements.push_back(std::move(repl));
  }

  // Longest-first, so a year slot never clobbers the date that contains it.
  std::sort(replacements.begin(), replacements.end(),
            [](const Replacement& a, const Replacement& b) {
              return a.from_plain.size() > b.from_plain.size();
            });
  dataset::DualExample synthetic;
  synthetic.entity = donor.entity;
  synthetic.abstract_plain = source.abstract_plain;
  synthetic.abstract_md = source.abstract_md;
  for (const auto& r : replacements) {
    replace_all(synthetic.abstract_plain, r.from_plain, r.to_plain);
  }
  std::sort(replacements.begin(), replacements.end(),
            [](const Replacement& a, const Replacement& b) {
              return a.from_md.size() > b.from_md.size();
            });
  for (const auto& r : replacements) {
    replace_all(synthetic.abstract_md, r.from_md, r.to_md);
  }
  synthetic.created_date = donor.created_date;
  synthetic.wiki_page_id = donor.wiki_page_id;
  synthetic.synthetic = true;
  synthetic.graph =
      rdf::Graph::description(rdf::Iri{donor.entity}, std::move(synthetic_triples));

  // Self-consistency: every literal's chosen rendering must survive the
  // combined replacements.
  for (const auto& t : synthetic.graph.triples()) {
    if (const auto* lit = std::get_if<rdf::Literal>(&t.object)) {
      bool present = false;
      for (const auto& r : evidence::date_renderings(*lit)) {
        if (!r.empty() &&
            synthetic.abstract_plain.find(r) != std::string::npos) {
          present = true;
          break;
        }
      }
      if (!present) return std::nullopt;
    }
  }
  return synthetic;
}

std::int64_t count_bearers(const dataset::Dataset& ds, const std::string& prop) {
  std::int64_t n = 0;
  for (const auto& ex : ds) {
    if (ex.graph.property_set().count(prop)) ++n;
  }
  return n;
}

}  // namespace

AugmentResult augment_template(const dataset::Dataset& base,
                               const dataset::Dataset& ds,
                               const std::string& target_prop,
                               std::int64_t threshold, AugmentStrategy strategy,
                               std::uint64_t seed, const shacl::Shape& s) {
  if (threshold <= 0) throw InvalidArgumentError("augmentation threshold must be positive");

  std::vector<AbstractTemplate> templates;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!ds[i].graph.property_set().count(target_prop)) continue;
    if (auto tpl = build_template(ds, i, s)) templates.push_back(std::move(*tpl));
  }
  if (templates.empty()) {
    throw InvalidArgumentError(
        "no usable template: no example bears " + target_prop +
        " with all gold surface forms present in its abstract");
  }

  std::vector<std::size_t> donors;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].graph.property_set().count(target_prop)) donors.push_back(i);
  }

  AugmentResult result;
  result.augmented = ds;
  std::map<std::string, std::int64_t> counts;
  for (const auto& path : s.property_paths()) {
    counts[path] = count_bearers(ds, path);
  }

  SeededRng rng(seed);
  std::vector<std::size_t> template_order(templates.size());
  for (std::size_t i = 0; i < templates.size(); ++i) template_order[i] = i;
  rng.shuffle(template_order);

  std::set<std::pair<std::size_t, std::size_t>> used;  // (template, donor)
  std::size_t round_robin = 0;

  while (counts[target_prop] < threshold) {
    std::optional<dataset::DualExample> synthetic;
    if (strategy == AugmentStrategy::KR0) {
      // Walk templates round-robin; draw an unused donor uniformly.
      bool emitted = false;
      for (std::size_t attempt = 0; attempt < templates.size() && !emitted;
           ++attempt) {
        const std::size_t t = template_order[round_robin % templates.size()];
        ++round_robin;
        std::vector<std::size_t> candidates;
        for (const auto d : donors) {
          if (!used.count({t, d})) candidates.push_back(d);
        }
        while (!candidates.empty()) {
          const std::size_t at = static_cast<std::size_t>(rng.bounded(candidates.size()));
          const std::size_t d = candidates[at];
          candidates[at] = candidates.back();
          candidates.pop_back();
          used.insert({t, d});
          synthetic = fill_template(templates[t], ds, base[d]);
          if (synthetic) {
            emitted = true;
            break;
          }
          ++result.skipped_unfillable;
        }
      }
    } else {
      // KR1: prefer the fillable pair whose pattern covers the most other
      // under-threshold properties; break ties with the seed.
      while (!synthetic) {
        std::vector<std::pair<std::size_t, std::size_t>> best;
        std::int64_t best_score = -1;
        for (std::size_t t = 0; t < templates.size(); ++t) {
          std::int64_t score = 0;
          for (const auto& p : templates[t].pattern) {
            if (p != target_prop && counts[p] < threshold) ++score;
          }
          if (score < best_score) continue;
          for (const auto d : donors) {
            if (used.count({t, d})) continue;
            if (score > best_score) {
              best_score = score;
              best.clear();
            }
            best.emplace_back(t, d);
          }
        }
        if (best.empty()) break;
        const auto [t, d] = best[static_cast<std::size_t>(rng.bounded(best.size()))];
        used.insert({t, d});
        synthetic = fill_template(templates[t], ds, base[d]);
        if (!synthetic) ++result.skipped_unfillable;
      }
    }
    if (!synthetic) {
      throw SamplingError("exhausted donors while " + target_prop + " has " +
                          std::to_string(counts[target_prop]) + " of " +
                          std::to_string(threshold) + " examples");
    }
    for (const auto& p : synthetic->graph.property_set()) ++counts[p];
    result.augmented.push_back(std::move(*synthetic));
    ++result.synthetics;
  }
  return result;
}

}  // namespace shapeforge::sampling
