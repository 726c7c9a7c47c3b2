#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "corpus20.hpp"
#include "errors.hpp"
#include "evidence.hpp"
#include "sampling.hpp"
#include "synthetic_base.hpp"
#include "testutil.hpp"

using namespace shapeforge;
using namespace shapeforge::sampling;
using shapeforge::dataset::Dataset;
using shapeforge::dataset::DualExample;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing fixture ", path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

shacl::Shape person_shape() {
  return shacl::parse_shape(read_file(testutil::fixture_path("shapes/person.ttl")));
}

Dataset distilled_corpus() {
  const auto shape = person_shape();
  const auto rules = rules::parse_rules(
      read_file(testutil::fixture_path("rules/person.rul")));
  const rules::GraphLookup aux(
      rdf::parse_turtle(read_file(testutil::fixture_path("aux/places.ttl"))));
  const evidence::GraphTypeLookup types(
      rdf::parse_turtle(read_file(testutil::fixture_path("aux/places.ttl"))));
  return evidence::distill(testutil::corpus20_base(), shape, rules, &aux, types);
}

}  // namespace

TEST_CASE("compute_stats counts triples and example frequencies") {
  const auto shape = person_shape();
  Dataset two;
  two.push_back(testutil::synthetic_example(0, {testutil::kRdfs + "label"}));
  two.push_back(testutil::synthetic_example(
      1, {testutil::kRdfs + "label", testutil::kDbo + "alias"}));
  const auto stats = compute_stats(two, shape);
  CHECK(stats.dataset_size == 2);
  CHECK(stats.per_property.at(testutil::kRdfs + "label").frequency == 1.0);
  CHECK(stats.per_property.at(testutil::kDbo + "alias").frequency == 0.5);
  CHECK(stats.per_property.at(testutil::kDbo + "birthDate").frequency == 0.0);
  // Every shape property has a row, realized or not.
  CHECK(stats.per_property.size() == 10);
}

TEST_CASE("compute_stats matches a brute-force tally on the corpus") {
  const auto shape = person_shape();
  const auto ds = distilled_corpus();
  const auto stats = compute_stats(ds, shape);

  // Independent tally with plain maps.
  std::map<std::string, std::int64_t> triples, examples;
  for (const auto& ex : ds) {
    std::set<std::string> seen;
    for (const auto& t : ex.graph.triples()) {
      ++triples[t.predicate.value];
      seen.insert(t.predicate.value);
    }
    for (const auto& p : seen) ++examples[p];
  }
  for (const auto& [prop, entry] : stats.per_property) {
    CHECK(entry.triple_count == triples[prop]);
    CHECK(entry.example_count == examples[prop]);
    CHECK(entry.frequency ==
          doctest::Approx(static_cast<double>(examples[prop]) / ds.size())
              .epsilon(1e-12));
  }
}

TEST_CASE("stats survive the TSV round trip") {
  const auto shape = person_shape();
  const auto stats = compute_stats(distilled_corpus(), shape);
  const auto back = stats_from_tsv(stats_to_tsv(stats));
  CHECK(back.dataset_size == stats.dataset_size);
  for (const auto& [prop, entry] : stats.per_property) {
    CHECK(back.per_property.at(prop).triple_count == entry.triple_count);
    CHECK(back.per_property.at(prop).frequency == entry.frequency);
  }
}

TEST_CASE("published stats reproduce the frequency split") {
  const auto threshold_stats = stats_from_tsv(
      read_file(testutil::fixture_path("stats/distilled_base_stats.tsv")));
  const auto classification_stats = stats_from_tsv(
      read_file(testutil::fixture_path("stats/biased_sample_stats.tsv")));
  const auto split = split_by_frequency(classification_stats, threshold_stats);

  CHECK(split.mean_frequency == doctest::Approx(0.295).epsilon(1e-9));
  CHECK(split.frequent ==
        std::set<std::string>{
            testutil::kRdfs + "label", testutil::kDbo + "birthDate",
            testutil::kDbo + "birthPlace", testutil::kDbo + "birthYear",
            testutil::kDbo + "deathDate", testutil::kDbo + "deathYear"});
  CHECK(split.rare == std::set<std::string>{
                          testutil::kDbo + "birthName",
                          testutil::kDbo + "nationality",
                          testutil::kDbo + "deathPlace", testutil::kDbo + "alias"});

  const auto back = split_from_json(split_to_json(split));
  CHECK(back.frequent == split.frequent);
  CHECK(back.rare == split.rare);
  CHECK(back.mean_frequency == doctest::Approx(split.mean_frequency).epsilon(1e-15));
}

TEST_CASE("uniform frequencies make every property rare") {
  const auto shape = person_shape();
  Dataset ds;
  // Every example bears every property, so all frequencies tie at 1.0 and
  // nothing strictly exceeds the mean.
  for (int i = 0; i < 4; ++i) {
    DualExample ex = testutil::synthetic_example(i, {});
    for (const auto& pc : shape.constraints) {
      rdf::Term object;
      if (pc.kind == shacl::ConstraintKind::Object) {
        object = rdf::Iri{testutil::kDbr + "Nice"};
      } else if (pc.range == testutil::kXsd + "gYear") {
        object = rdf::Literal{"1900", pc.range, ""};
      } else if (pc.range == testutil::kXsd + "date") {
        object = rdf::Literal{"1900-01-02", pc.range, ""};
      } else {
        object = rdf::Literal{"v", "", ""};
      }
      ex.graph.insert(rdf::Triple{rdf::Iri{ex.entity}, rdf::Iri{pc.path}, object});
    }
    ds.push_back(std::move(ex));
  }
  const auto stats = compute_stats(ds, shape);
  const auto split = split_by_frequency(stats, stats);
  CHECK(split.frequent.empty());
  CHECK(split.rare.size() == 10);
}

TEST_CASE("dual-bias sampling never selects datatype-only examples") {
  const auto shape = person_shape();
  Dataset base;
  // Five mixed examples and one datatype-only example.
  for (int i = 0; i < 5; ++i) {
    base.push_back(testutil::synthetic_example(
        i, {testutil::kRdfs + "label", testutil::kDbo + "alias"}));
    base.back().graph.insert(rdf::Triple{rdf::Iri{base.back().entity},
                                         rdf::Iri{testutil::kDbo + "birthPlace"},
                                         rdf::Iri{testutil::kDbr + "Nice"}});
  }
  base.push_back(
      testutil::synthetic_example(5, {testutil::kRdfs + "label"}));
  const std::string datatype_only = base.back().entity;

  SampleSpec spec;
  spec.kind = SampleKind::BiasedDatatypeObject;
  spec.size = 5;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    spec.seed = seed;
    const auto result = sample(base, spec, shape, nullptr);
    REQUIRE(result.examples.size() == 5);
    for (const auto& ex : result.examples) CHECK(ex.entity != datatype_only);
  }

  spec.size = 6;
  CHECK_THROWS_AS(sample(base, spec, shape, nullptr), SamplingError);
}

TEST_CASE("sampling is seed-deterministic and honors exclusions") {
  const auto shape = person_shape();
  const auto base = distilled_corpus();
  SampleSpec spec;
  spec.kind = SampleKind::CrossEvalRandom;
  spec.size = 8;
  spec.seed = 99;
  const auto a = sample(base, spec, shape, nullptr);
  const auto b = sample(base, spec, shape, nullptr);
  CHECK(a.indices == b.indices);

  std::set<std::string> held_out;
  for (std::size_t i = 0; i < 4; ++i) held_out.insert(a.examples[i].entity);
  const auto c = sample(base, spec, shape, nullptr, &held_out);
  for (const auto& ex : c.examples) CHECK(held_out.count(ex.entity) == 0);
}

TEST_CASE("date cutoffs split old from new articles") {
  const auto shape = person_shape();
  const auto base = distilled_corpus();

  SampleSpec before;
  before.kind = SampleKind::RandomScaled;
  before.size = 5;
  before.seed = 3;
  before.date_cutoff = "2021-01-01";
  for (const auto& ex : sample(base, before, shape, nullptr).examples) {
    CHECK(ex.created_date < "2021-01-01");
  }

  SampleSpec after;
  after.kind = SampleKind::CrossEvalUnseen;
  after.size = 3;
  after.seed = 3;
  after.date_cutoff = "2021-01-01";
  for (const auto& ex : sample(base, after, shape, nullptr).examples) {
    CHECK(ex.created_date >= "2021-01-01");
  }

  after.date_cutoff.clear();
  CHECK_THROWS_AS(sample(base, after, shape, nullptr), InvalidArgumentError);
}

TEST_CASE("frequent-only cross-eval sampling keeps property sets frequent") {
  const auto shape = person_shape();
  const auto base = distilled_corpus();
  FrequencySplit split = split_from_json(
      split_to_json(split_by_frequency(compute_stats(base, shape),
                                       compute_stats(base, shape))));
  SampleSpec spec;
  spec.kind = SampleKind::CrossEvalFrequent;
  spec.size = 5;
  spec.seed = 11;
  const auto result = sample(base, spec, shape, &split);
  REQUIRE(result.examples.size() == 5);
  for (const auto& ex : result.examples) {
    for (const auto& p : ex.graph.property_set()) {
      CHECK(split.frequent.count(p) == 1);
    }
  }

  SampleSpec rare_spec;
  rare_spec.kind = SampleKind::CrossEvalRare;
  rare_spec.size = 5;
  rare_spec.seed = 11;
  for (const auto& ex : sample(base, rare_spec, shape, &split).examples) {
    bool has_rare = false;
    for (const auto& p : ex.graph.property_set()) {
      if (split.rare.count(p)) has_rare = true;
    }
    CHECK(has_rare);
  }
}

TEST_CASE("rule-2 stratification picks the least represented candidate") {
  const std::string alias = testutil::kDbo + "alias";
  const std::string nationality = testutil::kDbo + "nationality";
  CHECK(least_represented({alias, nationality},
                          {{nationality, 5}, {alias, 2}}) == alias);
  CHECK(least_represented({alias, nationality},
                          {{nationality, 1}, {alias, 4}}) == nationality);
  // Ties go to the ascending IRI.
  CHECK(least_represented({alias, nationality}, {}) == alias);
}

TEST_CASE("stratification reproduces the hand-assigned ten-graph fixture") {
  const std::string alias = testutil::kDbo + "alias";
  const std::string birth_name = testutil::kDbo + "birthName";
  const std::string nationality = testutil::kDbo + "nationality";
  const std::string death_place = testutil::kDbo + "deathPlace";
  const std::string label = testutil::kRdfs + "label";
  const std::string birth_year = testutil::kDbo + "birthYear";
  const std::string birth_date = testutil::kDbo + "birthDate";
  const std::set<std::string> rare{alias, birth_name, nationality, death_place};

  Dataset ds;
  ds.push_back(testutil::synthetic_example(0, {label}));                 // Other
  ds.push_back(testutil::synthetic_example(1, {birth_year, label}));     // Other
  ds.push_back(testutil::synthetic_example(2, {death_place, label}));    // deathPlace
  ds.push_back(testutil::synthetic_example(3, {death_place}));           // deathPlace
  ds.push_back(testutil::synthetic_example(4, {death_place, birth_date}));  // deathPlace
  ds.push_back(testutil::synthetic_example(5, {nationality, birth_name}));  // birthName
  ds.push_back(testutil::synthetic_example(6, {nationality}));           // nationality
  ds.push_back(testutil::synthetic_example(7, {nationality, birth_year}));  // nationality
  ds.push_back(testutil::synthetic_example(8, {alias, death_place}));    // alias
  ds.push_back(testutil::synthetic_example(9, {birth_date, birth_year}));  // Other

  // Hand assignment. The two multi-rare graphs are order-independent:
  // their winning property never has an earlier assignment while the
  // losing one ties at worst (ascending IRI breaks the tie the same way).
  const std::map<std::string, std::set<std::size_t>> expected = {
      {alias, {8}},
      {birth_name, {5}},
      {death_place, {2, 3, 4}},
      {nationality, {6, 7}},
      {kOtherStratum, {0, 1, 9}},
  };
  for (std::uint64_t seed : {0ULL, 7ULL, 123ULL}) {
    const auto strata = stratify(ds, rare, seed);
    REQUIRE(strata.size() == expected.size());
    for (const auto& stratum : strata) {
      const std::set<std::size_t> members(stratum.members.begin(),
                                          stratum.members.end());
      CHECK(members == expected.at(stratum.label));
    }
    CHECK(strata.back().label == kOtherStratum);
  }
}

TEST_CASE("strata partition the dataset for random graphs") {
  SeededRng rng(31337);
  Dataset ds;
  for (int i = 0; i < 1000; ++i) {
    DualExample ex;
    ex.entity = testutil::kDbr + "Random_" + std::to_string(i);
    ex.abstract_plain = "Text.";
    ex.abstract_md = "Text.";
    ex.graph = rdf::Graph::description(
        rdf::Iri{ex.entity},
        [&] {
          auto g = testutil::random_person_graph(rng, i);
          std::set<rdf::Triple> retargeted;
          for (const auto& t : g.triples()) {
            retargeted.insert(rdf::Triple{rdf::Iri{ex.entity}, t.predicate, t.object});
          }
          return retargeted;
        }());
    ds.push_back(std::move(ex));
  }
  const std::set<std::string> rare{
      testutil::kDbo + "alias", testutil::kDbo + "birthName",
      testutil::kDbo + "nationality", testutil::kDbo + "deathPlace"};
  const auto strata = stratify(ds, rare, 5);
  std::vector<bool> seen(ds.size(), false);
  for (const auto& stratum : strata) {
    for (const auto m : stratum.members) {
      CHECK_FALSE(seen[m]);
      seen[m] = true;
    }
  }
  CHECK(std::count(seen.begin(), seen.end(), true) ==
        static_cast<std::ptrdiff_t>(ds.size()));

  // Same seed, permuted input: per-label sizes are unchanged.
  Dataset shuffled = ds;
  SeededRng perm(1);
  perm.shuffle(shuffled);
  const auto strata2 = stratify(shuffled, rare, 5);
  std::map<std::string, std::size_t> sizes1, sizes2;
  for (const auto& s : strata) sizes1[s.label] = s.members.size();
  for (const auto& s : strata2) sizes2[s.label] = s.members.size();
  CHECK(sizes1 == sizes2);
}

TEST_CASE("kfold shares members evenly and covers the dataset") {
  std::vector<Stratum> strata;
  Stratum big{"big", {}};
  for (std::size_t i = 0; i < 10; ++i) big.members.push_back(i);
  Stratum small{"small", {10, 11, 12}};
  strata.push_back(big);
  strata.push_back(small);

  const auto folds = kfold(strata, 5, 17, 13);
  REQUIRE(folds.size() == 5);

  std::map<std::size_t, int> test_appearances;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    // Big stratum: exactly two members per cell.
    int big_members = 0;
    for (const auto m : folds[f].test) {
      if (m < 10) ++big_members;
      ++test_appearances[m];
    }
    CHECK(big_members == 2);
    // train/validation/test partition the whole dataset.
    std::set<std::size_t> all;
    for (const auto m : folds[f].train) all.insert(m);
    for (const auto m : folds[f].validation) all.insert(m);
    for (const auto m : folds[f].test) all.insert(m);
    CHECK(all.size() == 13);
  }
  for (std::size_t m = 0; m < 13; ++m) CHECK(test_appearances[m] == 1);

  CHECK_THROWS_AS(kfold(strata, 1, 17, 13), InvalidArgumentError);
  CHECK_THROWS_AS(kfold(strata, 14, 17, 13), InvalidArgumentError);
}

TEST_CASE("kfold assignments are seed-deterministic") {
  std::vector<Stratum> strata{{"only", {0, 1, 2, 3, 4, 5, 6}}};
  const auto a = kfold(strata, 3, 2024, 7);
  const auto b = kfold(strata, 3, 2024, 7);
  for (std::size_t f = 0; f < 3; ++f) {
    CHECK(a[f].test == b[f].test);
    CHECK(a[f].train == b[f].train);
  }
}

TEST_CASE("coverage sampler hits the threshold on a tiny base") {
  using shapeforge::shacl::ConstraintKind;
  const std::string a = testutil::kDbo + "alias";
  const std::string b = testutil::kDbo + "birthName";
  const std::string c = testutil::kRdfs + "label";
  shacl::Shape shape;
  shape.id = "http://example.org/shapes/Tiny";
  shape.target_class = testutil::kDbo + "Person";
  for (const auto& p : {a, b, c}) {
    shape.constraints.push_back({p, ConstraintKind::Datatype,
                                 testutil::kXsd + "string", 0, {}});
  }
  Dataset base;
  std::size_t n = 0;
  for (int i = 0; i < 10; ++i) base.push_back(testutil::synthetic_example(n++, {a, b}));
  for (int i = 0; i < 10; ++i) base.push_back(testutil::synthetic_example(n++, {b}));
  for (int i = 0; i < 10; ++i) base.push_back(testutil::synthetic_example(n++, {c}));

  const auto result = sufficient_exposure_sample(base, shape, 5, 42);

  // Exhaustive recount of the selection.
  std::map<std::string, int> counts;
  std::set<std::size_t> unique(result.indices.begin(), result.indices.end());
  CHECK(unique.size() == result.indices.size());
  for (const auto& ex : result.examples) {
    for (const auto& p : ex.graph.property_set()) ++counts[p];
  }
  for (const auto& p : {a, b, c}) CHECK(counts[p] >= 5);

  // Threshold one works on any covering base.
  const auto one = sufficient_exposure_sample(base, shape, 1, 42);
  std::map<std::string, int> ones;
  for (const auto& ex : one.examples) {
    for (const auto& p : ex.graph.property_set()) ++ones[p];
  }
  for (const auto& p : {a, b, c}) CHECK(ones[p] >= 1);

  // A property below the floor is reported by name.
  try {
    sufficient_exposure_sample(base, shape, 11, 42);
    FAIL("expected SamplingError");
  } catch (const SamplingError& e) {
    CHECK(std::string(e.what()).find("alias") != std::string::npos);
  }
}

TEST_CASE("coverage sampler stays near the threshold on the controlled base") {
  const auto base = testutil::make_exposure_base();
  const std::int64_t threshold = 50;
  const auto result =
      sufficient_exposure_sample(base.examples, base.shape, threshold, 7);

  std::map<std::string, std::int64_t> counts;
  for (const auto& ex : result.examples) {
    for (const auto& p : ex.graph.property_set()) ++counts[p];
  }
  for (const auto& [prop, constraint] : base.co_occurrence) {
    CHECK(counts[prop] >= threshold);
  }
  // The rare properties overshoot at most by their co-occurrence.
  for (const auto& p : base.rare) {
    CHECK(counts[p] <= threshold + 2 * static_cast<std::int64_t>(
                                           base.co_occurrence.at(p)));
  }

  // Local minimality: dropping the last selection breaks some property.
  REQUIRE(!result.examples.empty());
  std::map<std::string, std::int64_t> without_last = counts;
  for (const auto& p : result.examples.back().graph.property_set()) {
    --without_last[p];
  }
  bool broken = false;
  for (const auto& [prop, count] : without_last) {
    if (count < threshold) broken = true;
  }
  CHECK(broken);
}

TEST_CASE("template augmentation fills a donor's values into the template") {
  const auto shape = person_shape();
  Dataset ds;
  DualExample a;
  a.entity = testutil::kDbr + "Template_Source";
  a.abstract_plain = "Known as Pavo, born 8 May 1912.";
  a.abstract_md = "Known as Pavo, born 8 May 1912.";
  a.created_date = "2005-01-01";
  a.wiki_page_id = 1;
  a.graph = rdf::Graph::description(
      rdf::Iri{a.entity},
      rdf::parse_turtle("dbr:Template_Source dbo:alias \"Pavo\" ;\n"
                        "  dbo:birthDate \"1912-05-08\"^^xsd:date .")
          .triples());
  ds.push_back(a);

  Dataset base = ds;
  DualExample b;
  b.entity = testutil::kDbr + "Value_Donor";
  b.abstract_plain = "Rio lived long.";
  b.abstract_md = "Rio lived long.";
  b.created_date = "2006-01-01";
  b.wiki_page_id = 2;
  b.graph = rdf::Graph::description(
      rdf::Iri{b.entity},
      rdf::parse_turtle("dbr:Value_Donor dbo:alias \"Rio\" ;\n"
                        "  dbo:birthDate \"1950-03-03\"^^xsd:date .")
          .triples());
  base.push_back(b);

  const auto result = augment_template(base, ds, testutil::kDbo + "alias", 2,
                                       AugmentStrategy::KR0, 5, shape);
  REQUIRE(result.synthetics == 1);
  REQUIRE(result.augmented.size() == 2);
  const auto& synth = result.augmented.back();
  CHECK(synth.synthetic);
  CHECK(synth.entity == b.entity);
  CHECK(synth.abstract_plain == "Known as Rio, born 3 March 1950.");
  CHECK(synth.graph == b.graph);

  // Synthetics pass the literal evidence check by construction.
  for (const auto& t : synth.graph.triples()) {
    CHECK(evidence::check_datatype_triple(synth.abstract_plain, t).supported);
  }
}

TEST_CASE("augmentation refuses identity fills and exhausted donors") {
  const auto shape = person_shape();
  Dataset ds;
  DualExample a;
  a.entity = testutil::kDbr + "Lone_Source";
  a.abstract_plain = "Known as Pavo.";
  a.abstract_md = a.abstract_plain;
  a.graph = rdf::Graph::description(
      rdf::Iri{a.entity},
      rdf::parse_turtle("dbr:Lone_Source dbo:alias \"Pavo\" .").triples());
  ds.push_back(a);

  // The only donor is the template source itself.
  CHECK_THROWS_AS(augment_template(ds, ds, testutil::kDbo + "alias", 2,
                                   AugmentStrategy::KR0, 5, shape),
                  SamplingError);
}

TEST_CASE("augmentation reaches the exact threshold with a recount") {
  const auto shape = person_shape();
  Dataset ds;
  Dataset base;
  // Three template sources in the dataset.
  for (int i = 0; i < 3; ++i) {
    DualExample ex;
    ex.entity = testutil::kDbr + "Aliased_" + std::to_string(i);
    ex.abstract_plain = "Called Nick" + std::to_string(i) + " in 190" +
                        std::to_string(i) + ".";
    ex.abstract_md = ex.abstract_plain;
    ex.graph = rdf::Graph::description(
        rdf::Iri{ex.entity},
        {rdf::Triple{rdf::Iri{ex.entity}, rdf::Iri{testutil::kDbo + "alias"},
                     rdf::Literal{"Nick" + std::to_string(i), "", ""}},
         rdf::Triple{rdf::Iri{ex.entity}, rdf::Iri{testutil::kDbo + "birthYear"},
                     rdf::Literal{"190" + std::to_string(i),
                                  testutil::kXsd + "gYear", ""}}});
    ds.push_back(ex);
    base.push_back(ex);
  }
  // Donor pool in the base.
  for (int i = 0; i < 12; ++i) {
    DualExample ex;
    ex.entity = testutil::kDbr + "Donor_" + std::to_string(i);
    ex.abstract_plain = "Donor text.";
    ex.abstract_md = ex.abstract_plain;
    ex.graph = rdf::Graph::description(
        rdf::Iri{ex.entity},
        {rdf::Triple{rdf::Iri{ex.entity}, rdf::Iri{testutil::kDbo + "alias"},
                     rdf::Literal{"Moniker" + std::to_string(i), "", ""}},
         rdf::Triple{rdf::Iri{ex.entity}, rdf::Iri{testutil::kDbo + "birthYear"},
                     rdf::Literal{std::to_string(1900 + i),
                                  testutil::kXsd + "gYear", ""}}});
    base.push_back(ex);
  }

  const auto result = augment_template(base, ds, testutil::kDbo + "alias", 10,
                                       AugmentStrategy::KR0, 11, shape);
  std::int64_t bearing = 0;
  for (const auto& ex : result.augmented) {
    if (ex.graph.property_set().count(testutil::kDbo + "alias")) ++bearing;
  }
  CHECK(bearing == 10);
  CHECK(result.synthetics == 7);

  // Same seed reproduces the same synthetics.
  const auto again = augment_template(base, ds, testutil::kDbo + "alias", 10,
                                      AugmentStrategy::KR0, 11, shape);
  REQUIRE(again.augmented.size() == result.augmented.size());
  for (std::size_t i = 0; i < again.augmented.size(); ++i) {
    CHECK(again.augmented[i].entity == result.augmented[i].entity);
    CHECK(again.augmented[i].abstract_plain == result.augmented[i].abstract_plain);
  }
}

TEST_CASE("augmentation over the distilled corpus stays self-consistent") {
  const auto shape = person_shape();
  const auto ds = distilled_corpus();
  const std::string alias = testutil::kDbo + "alias";

  // Three alias bearers survive distillation; template/donor compatibility
  // allows exactly one synthetic (the other templates need properties no
  // other donor carries).
  const auto result =
      augment_template(ds, ds, alias, 4, AugmentStrategy::KR0, 21, shape);
  REQUIRE(result.synthetics == 1);
  const auto& synth = result.augmented.back();
  CHECK(synth.synthetic);
  CHECK(synth.entity == testutil::kDbr + "Luisa_Romero_Vega");
  CHECK(synth.abstract_plain ==
        "Known professionally as La Paloma, the performer rose to fame in "
        "Madrid.");
  CHECK(synth.abstract_md ==
        "Known professionally as La Paloma, the performer rose to fame in "
        "[Madrid](/wiki/Madrid).");

  // Shape validity and the literal evidence check hold by construction.
  const auto paths = shape.property_paths();
  for (const auto& t : synth.graph.triples()) {
    CHECK(paths.count(t.predicate.value) == 1);
    if (std::holds_alternative<rdf::Literal>(t.object)) {
      CHECK(evidence::check_datatype_triple(synth.abstract_plain, t).supported);
    }
  }

  // Asking for more than the donor pool can fill reports exhaustion.
  CHECK_THROWS_AS(
      augment_template(ds, ds, alias, 5, AugmentStrategy::KR0, 21, shape),
      SamplingError);
}

TEST_CASE("coverage-greedy augmentation prefers templates covering scarce properties") {
  const auto shape = person_shape();
  const std::string alias = testutil::kDbo + "alias";
  const std::string birth_name = testutil::kDbo + "birthName";

  Dataset ds;
  DualExample plain_tpl;
  plain_tpl.entity = testutil::kDbr + "Plain_Template";
  plain_tpl.abstract_plain = "Known as Zed.";
  plain_tpl.abstract_md = plain_tpl.abstract_plain;
  plain_tpl.graph = rdf::Graph::description(
      rdf::Iri{plain_tpl.entity},
      {rdf::Triple{rdf::Iri{plain_tpl.entity}, rdf::Iri{alias},
                   rdf::Literal{"Zed", "", ""}}});
  ds.push_back(plain_tpl);

  DualExample rich_tpl;
  rich_tpl.entity = testutil::kDbr + "Rich_Template";
  rich_tpl.abstract_plain = "Known as Ada, born Ada Lark.";
  rich_tpl.abstract_md = rich_tpl.abstract_plain;
  rich_tpl.graph = rdf::Graph::description(
      rdf::Iri{rich_tpl.entity},
      {rdf::Triple{rdf::Iri{rich_tpl.entity}, rdf::Iri{alias},
                   rdf::Literal{"Ada", "", ""}},
       rdf::Triple{rdf::Iri{rich_tpl.entity}, rdf::Iri{birth_name},
                   rdf::Literal{"Ada Lark", "", ""}}});
  ds.push_back(rich_tpl);

  Dataset base = ds;
  for (int i = 0; i < 8; ++i) {
    DualExample donor;
    donor.entity = testutil::kDbr + "Both_Donor_" + std::to_string(i);
    donor.abstract_plain = "Donor.";
    donor.abstract_md = donor.abstract_plain;
    donor.graph = rdf::Graph::description(
        rdf::Iri{donor.entity},
        {rdf::Triple{rdf::Iri{donor.entity}, rdf::Iri{alias},
                     rdf::Literal{"A" + std::to_string(i), "", ""}},
         rdf::Triple{rdf::Iri{donor.entity}, rdf::Iri{birth_name},
                     rdf::Literal{"B" + std::to_string(i), "", ""}}});
    base.push_back(donor);
  }

  const auto result = augment_template(base, ds, alias, 6,
                                       AugmentStrategy::KR1, 3, shape);
  REQUIRE(result.synthetics == 4);
  // Every synthetic should come from the richer template while birthName
  // stays under the threshold.
  for (std::size_t i = ds.size(); i < result.augmented.size(); ++i) {
    CHECK(result.augmented[i].graph.property_set().count(birth_name) == 1);
  }
}
