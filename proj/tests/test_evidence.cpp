#include <doctest.h>

#include <fstream>

#include "corpus20.hpp"
#include "errors.hpp"
#include "evidence.hpp"
#include "testutil.hpp"

using namespace shapeforge;
using namespace shapeforge::evidence;
using shapeforge::rdf::Iri;
using shapeforge::rdf::Literal;
using shapeforge::rdf::Triple;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing fixture ", path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Triple literal_triple(const std::string& prop, const std::string& lexical,
                      const std::string& datatype = "") {
  return Triple{Iri{testutil::kDbr + "E"}, Iri{prop},
                Literal{lexical, datatype, ""}};
}

Triple object_triple(const std::string& prop, const std::string& object) {
  return Triple{Iri{testutil::kDbr + "E"}, Iri{prop}, Iri{object}};
}

shacl::Shape person_shape() {
  return shacl::parse_shape(read_file(testutil::fixture_path("shapes/person.ttl")));
}

rdf::Graph aux_graph() {
  return rdf::parse_turtle(read_file(testutil::fixture_path("aux/places.ttl")));
}

}  // namespace

TEST_CASE("date renderings cover all five documented forms") {
  const Literal date{"1945-05-08", testutil::kXsd + "date", ""};
  const auto forms = date_renderings(date);
  REQUIRE(forms.size() == 4);
  CHECK(forms[0] == "1945-05-08");
  CHECK(forms[1] == "8 May 1945");
  CHECK(forms[2] == "May 8, 1945");
  CHECK(forms[3] == "8 May");

  const Literal year{"1945", testutil::kXsd + "gYear", ""};
  const auto bare = date_renderings(year);
  REQUIRE(bare.size() == 1);
  CHECK(bare[0] == "1945");
}

TEST_CASE("each rendering form is matched in text") {
  const Triple date =
      literal_triple(testutil::kDbo + "birthDate", "1945-05-08",
                     testutil::kXsd + "date");
  const char* supported_texts[] = {
      "record 1945-05-08 in the registry",   // ISO form
      "born on 8 May 1945 in Nice",          // day month year
      "born May 8, 1945 in Nice",            // month day, year
      "celebrated every 8 May since then",   // day month
  };
  for (const char* text : supported_texts) {
    CAPTURE(text);
    const Verdict v = check_datatype_triple(text, date);
    CHECK(v.supported);
    CHECK(v.reason == Reason::DateForm);
  }
  CHECK_FALSE(check_datatype_triple("born in May 1945", date).supported);
  CHECK_FALSE(check_datatype_triple("born on 9 May 1945", date).supported);

  const Triple year = literal_triple(testutil::kDbo + "birthYear", "1945",
                                     testutil::kXsd + "gYear");
  const Verdict bare = check_datatype_triple("…(1945–2001)…", year);
  CHECK(bare.supported);
  CHECK(bare.reason == Reason::DateForm);
}

TEST_CASE("plain strings match case-sensitively as substrings") {
  const Triple label = literal_triple(testutil::kRdfs + "label", "Pablo");
  const Verdict miss = check_datatype_triple("a French painter", label);
  CHECK_FALSE(miss.supported);
  CHECK(miss.reason == Reason::NotFound);

  const Verdict hit = check_datatype_triple("known as Pablo since", label);
  CHECK(hit.supported);
  CHECK(hit.reason == Reason::ExactString);

  CHECK_FALSE(check_datatype_triple("known as pablo since", label).supported);
  CHECK_THROWS_AS(
      check_datatype_triple("x", object_triple(testutil::kDbo + "birthPlace",
                                               testutil::kDbr + "Nice")),
      InvalidArgumentError);
}

TEST_CASE("wiki URLs map to resources with percent-decoding") {
  CHECK(*wiki_url_to_resource("/wiki/Nice") == testutil::kDbr + "Nice");
  CHECK(*wiki_url_to_resource("https://en.wikipedia.org/wiki/Nice") ==
        testutil::kDbr + "Nice");
  CHECK(*wiki_url_to_resource("./Nice") == testutil::kDbr + "Nice");
  CHECK(*wiki_url_to_resource("/wiki/Z%C3%BCrich") == testutil::kDbr + "Zürich");
  CHECK(*wiki_url_to_resource("/wiki/Nice#History") == testutil::kDbr + "Nice");
  CHECK(!wiki_url_to_resource("https://example.org/page/Nice").has_value());
  CHECK(!wiki_url_to_resource("").has_value());
  CHECK(url_matches_resource("/wiki/St._Louis", testutil::kDbr + "St._Louis"));
}

TEST_CASE("object evidence needs both a link and the range type") {
  const auto shape = person_shape();
  const GraphTypeLookup types(aux_graph());
  const auto* birth_place = shape.find(testutil::kDbo + "birthPlace");
  REQUIRE(birth_place != nullptr);

  const Triple nice = object_triple(testutil::kDbo + "birthPlace",
                                    testutil::kDbr + "Nice");
  const Verdict ok = check_object_triple(
      "Born in [Nice](https://en.wikipedia.org/wiki/Nice).", nice, *birth_place,
      types);
  CHECK(ok.supported);
  CHECK(ok.reason == Reason::MarkdownLink);

  // Linked but typed as an organisation, not a place.
  const Triple guild = object_triple(testutil::kDbo + "birthPlace",
                                     testutil::kDbr + "Northern_Guild");
  const Verdict mismatch = check_object_triple(
      "Joined the [Northern Guild](/wiki/Northern_Guild).", guild, *birth_place,
      types);
  CHECK_FALSE(mismatch.supported);
  CHECK(mismatch.reason == Reason::RangeMismatch);

  const Verdict unlinked =
      check_object_triple("Born in Nice.", nice, *birth_place, types);
  CHECK_FALSE(unlinked.supported);
  CHECK(unlinked.reason == Reason::NotFound);

  // Anchor text naming the resource is not evidence; the URL decides.
  const Verdict anchor_only = check_object_triple(
      "Grew up near [Nice](/wiki/Greater_Oslo_Region).", nice, *birth_place,
      types);
  CHECK_FALSE(anchor_only.supported);
  CHECK(anchor_only.reason == Reason::NotFound);
}

TEST_CASE("distillation retains exactly the adjudicated corpus") {
  const auto shape = person_shape();
  const auto rules = rules::parse_rules(
      read_file(testutil::fixture_path("rules/person.rul")));
  const rules::GraphLookup aux(aux_graph());
  const GraphTypeLookup types(aux_graph());

  DistillDiagnostics diagnostics;
  const auto got = distill(testutil::corpus20_base(), shape, rules, &aux, types,
                           &diagnostics);
  const auto expected = testutil::corpus20_expected();

  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(expected[i].entity);
    CHECK(got[i].entity == expected[i].entity);
    CHECK(got[i].graph == expected[i].graph);
    CHECK(got[i].abstract_plain == expected[i].abstract_plain);
  }
  CHECK(diagnostics.examples_in == 20);
  CHECK(diagnostics.examples_out == expected.size());
  CHECK(diagnostics.examples_dropped == 20 - expected.size());

  // Every retained triple carries a supporting verdict.
  for (const auto& ex : got) {
    for (const auto& t : ex.graph.triples()) {
      bool found = false;
      for (const auto& entry : diagnostics.entries) {
        if (entry.entity == ex.entity && entry.triple == t && entry.supported) {
          found = true;
          break;
        }
      }
      CHECK_MESSAGE(found, "no supporting verdict for a retained triple of ",
                    ex.entity);
    }
  }
}

TEST_CASE("distillation output is the rule closure or less, never more") {
  const auto shape = person_shape();
  const auto rules = rules::parse_rules(
      read_file(testutil::fixture_path("rules/person.rul")));
  const rules::GraphLookup aux(aux_graph());
  const GraphTypeLookup types(aux_graph());

  const auto base = testutil::corpus20_base();
  const auto got = distill(base, shape, rules, &aux, types);
  for (const auto& ex : got) {
    const auto* original = [&]() -> const dataset::DualExample* {
      for (const auto& b : base) {
        if (b.entity == ex.entity) return &b;
      }
      return nullptr;
    }();
    REQUIRE(original != nullptr);
    const auto closure = rules::apply_rules(original->graph, rules, &aux).graph;
    for (const auto& t : ex.graph.triples()) CHECK(closure.contains(t));
  }
}

TEST_CASE("appending text never withdraws support") {
  const auto shape = person_shape();
  const auto rules = rules::parse_rules(
      read_file(testutil::fixture_path("rules/person.rul")));
  const rules::GraphLookup aux(aux_graph());
  const GraphTypeLookup types(aux_graph());

  auto base = testutil::corpus20_base();
  const auto before = distill(base, shape, rules, &aux, types);
  for (auto& ex : base) {
    ex.abstract_plain += " Additional trailing remark.";
    ex.abstract_md += " With [one more](/wiki/Madrid) link.";
  }
  const auto after = distill(base, shape, rules, &aux, types);
  // Support is monotone: every previously retained triple is still there.
  for (const auto& ex : before) {
    const auto* now = [&]() -> const dataset::DualExample* {
      for (const auto& a : after) {
        if (a.entity == ex.entity) return &a;
      }
      return nullptr;
    }();
    REQUIRE(now != nullptr);
    for (const auto& t : ex.graph.triples()) CHECK(now->graph.contains(t));
  }
}

TEST_CASE("distillation is deterministic and parallel-safe") {
  const auto shape = person_shape();
  const auto rules = rules::parse_rules(
      read_file(testutil::fixture_path("rules/person.rul")));
  const rules::GraphLookup aux(aux_graph());
  const GraphTypeLookup types(aux_graph());
  const auto base = testutil::corpus20_base();

  const auto once = distill(base, shape, rules, &aux, types);
  const auto twice = distill(base, shape, rules, &aux, types);
  const auto parallel = distill(base, shape, rules, &aux, types, nullptr, 4);
  REQUIRE(once.size() == twice.size());
  REQUIRE(once.size() == parallel.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(once[i].graph == twice[i].graph);
    CHECK(once[i].graph == parallel[i].graph);
  }
}
