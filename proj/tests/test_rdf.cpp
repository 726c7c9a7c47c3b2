#include <doctest.h>

#include <algorithm>

#include "errors.hpp"
#include "testutil.hpp"
#include "turtle.hpp"

using namespace shapeforge;
using namespace shapeforge::rdf;

TEST_CASE("parse a single triple with explicit IRIs") {
  const Graph g = parse_turtle("<http://x/e> <http://x/p> \"x\" .");
  REQUIRE(g.size() == 1);
  const Triple& t = *g.triples().begin();
  CHECK(t.subject.value == "http://x/e");
  CHECK(t.predicate.value == "http://x/p");
  CHECK(std::get<Literal>(t.object).lexical == "x");
  CHECK(std::get<Literal>(t.object).datatype.empty());
}

TEST_CASE("parse a typed literal with standard prefixes") {
  const Graph g = parse_turtle(
      "dbr:X dbo:birthYear \"1945\"^^xsd:gYear .");
  REQUIRE(g.size() == 1);
  const Triple& t = *g.triples().begin();
  CHECK(t.subject.value == "http://dbpedia.org/resource/X");
  CHECK(t.predicate.value == "http://dbpedia.org/ontology/birthYear");
  const auto& lit = std::get<Literal>(t.object);
  CHECK(lit.lexical == "1945");
  CHECK(lit.datatype == "http://www.w3.org/2001/XMLSchema#gYear");
}

TEST_CASE("object lists, predicate lists and the a keyword") {
  const Graph g = parse_turtle(
      "dbr:X a dbo:Person ;\n"
      "  dbo:alias \"A\", \"B\" ;\n"
      "  dbo:birthPlace dbr:Nice .\n");
  CHECK(g.size() == 4);
  CHECK(g.contains(Triple{Iri{"http://dbpedia.org/resource/X"},
                          Iri{iri::rdf_type},
                          Iri{"http://dbpedia.org/ontology/Person"}}));
  CHECK(g.contains(Triple{Iri{"http://dbpedia.org/resource/X"},
                          Iri{"http://dbpedia.org/ontology/alias"},
                          Literal{"B", "", ""}}));
}

TEST_CASE("prefix directives are honored") {
  const Graph g = parse_turtle(
      "@prefix ex: <http://example.org/> .\n"
      "ex:s ex:p ex:o .\n",
      PrefixMap{});
  REQUIRE(g.size() == 1);
  CHECK(g.triples().begin()->subject.value == "http://example.org/s");
}

TEST_CASE("missing object is a syntax error with a position") {
  try {
    parse_turtle("dbr:X dbo:p");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col >= 11);
  }
}

TEST_CASE("unknown prefix is reported by name") {
  try {
    parse_turtle("foo:X dbo:p \"v\" .");
    FAIL("expected UnknownPrefixError");
  } catch (const UnknownPrefixError& e) {
    CHECK(e.prefix == "foo");
  }
}

TEST_CASE("blank nodes, collections and numbers are rejected") {
  CHECK_THROWS_AS(parse_turtle("[] dbo:p \"v\" ."), ParseError);
  CHECK_THROWS_AS(parse_turtle("_:b dbo:p \"v\" ."), ParseError);
  CHECK_THROWS_AS(parse_turtle("dbr:X dbo:p (\"a\") ."), ParseError);
  CHECK_THROWS_AS(parse_turtle("dbr:X dbo:p 42 ."), ParseError);
}

TEST_CASE("literal escapes round-trip") {
  const Graph g = parse_turtle("dbr:X dbo:note \"a \\\"b\\\"\\n\\\\c\" .");
  const auto& lit = std::get<Literal>(g.triples().begin()->object);
  CHECK(lit.lexical == "a \"b\"\n\\c");
  const Graph again = parse_turtle(serialize_turtle(g));
  CHECK(again == g);
}

TEST_CASE("language tags parse and stay distinct from plain literals") {
  const Graph g = parse_turtle("dbr:X rdfs:label \"Nice\"@fr .");
  const auto& lit = std::get<Literal>(g.triples().begin()->object);
  CHECK(lit.language == "fr");
  CHECK(Literal{"Nice", "", "fr"} != Literal{"Nice", "", ""});
}

TEST_CASE("strict equality differentiates plain and typed literals") {
  const Literal plain{"1945", "", ""};
  const Literal year{"1945", "http://www.w3.org/2001/XMLSchema#gYear", ""};
  CHECK(plain != year);
  CHECK(Literal{"05", "", ""} != Literal{"5", "", ""});
}

TEST_CASE("serialization is canonical and insertion-order independent") {
  const Iri s{"http://dbpedia.org/resource/X"};
  std::vector<Triple> triples = {
      {s, Iri{"http://dbpedia.org/ontology/b"}, Literal{"2", "", ""}},
      {s, Iri{"http://dbpedia.org/ontology/a"}, Literal{"9", "", ""}},
      {s, Iri{"http://dbpedia.org/ontology/b"}, Literal{"1", "", ""}},
  };
  Graph g1;
  for (const auto& t : triples) g1.insert(t);
  std::reverse(triples.begin(), triples.end());
  Graph g2;
  for (const auto& t : triples) g2.insert(t);
  CHECK(serialize_turtle(g1) == serialize_turtle(g2));

  const std::string text = serialize_turtle(g1);
  const auto pos_a = text.find("dbo:a");
  const auto pos_b = text.find("dbo:b");
  CHECK(pos_a < pos_b);
}

TEST_CASE("empty graph serializes to the prefix header only") {
  const std::string text = serialize_turtle(Graph{});
  CHECK(text.find("@prefix dbo:") != std::string::npos);
  CHECK(text.find(" .\n@prefix") != std::string::npos);
  CHECK(parse_turtle(text).empty());

  CHECK(serialize_turtle(Graph{}, PrefixMap{}).empty());
}

TEST_CASE("round-trip law over randomized graphs") {
  SeededRng rng(20240601);
  for (int i = 0; i < 200; ++i) {
    const Graph g = testutil::random_person_graph(rng, i);
    const Graph back = parse_turtle(serialize_turtle(g));
    REQUIRE(back == g);
  }
}

TEST_CASE("property_set deduplicates predicates") {
  const Graph g = parse_turtle(
      "dbr:E dbo:birthDate \"1945-05-08\"^^xsd:date ;\n"
      "  dbo:birthYear \"1945\"^^xsd:gYear, \"1946\"^^xsd:gYear .\n");
  const auto props = g.property_set();
  CHECK(props == std::set<std::string>{
                     "http://dbpedia.org/ontology/birthDate",
                     "http://dbpedia.org/ontology/birthYear"});
  CHECK(Graph{}.property_set().empty());
}

TEST_CASE("description graphs reject foreign subjects") {
  const Iri e{"http://dbpedia.org/resource/E"};
  Graph g = Graph::description(e, {});
  g.insert(Triple{e, Iri{"http://dbpedia.org/ontology/p"}, Literal{"v", "", ""}});
  CHECK_THROWS_AS(
      g.insert(Triple{Iri{"http://dbpedia.org/resource/Other"},
                      Iri{"http://dbpedia.org/ontology/p"}, Literal{"v", "", ""}}),
      InvalidArgumentError);
}

TEST_CASE("dots inside local names survive while terminators do not") {
  const Graph g = parse_turtle("dbr:St._Louis dbo:country dbr:USA .");
  CHECK(g.triples().begin()->subject.value ==
        "http://dbpedia.org/resource/St._Louis");
  const Graph back = parse_turtle(serialize_turtle(g));
  CHECK(back == g);
}

TEST_CASE("IRIs without a declared prefix serialize in angle brackets") {
  Graph g;
  g.insert(Triple{Iri{"http://other.example/s"}, Iri{"http://other.example/p"},
                  Iri{"http://other.example/o"}});
  const std::string text = serialize_turtle(g);
  CHECK(text.find("<http://other.example/s>") != std::string::npos);
  CHECK(parse_turtle(text) == g);
}
