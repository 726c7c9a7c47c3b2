#pragma once

// Twenty dual-base records with every triple adjudicated by hand against
// the abstracts. `expected_ttl` lists exactly the triples the distillation
// must retain (after rule closure); an empty string means the whole
// example is dropped. The adjudication notes sit next to each record.

#include <string>
#include <vector>

#include "dataset.hpp"
#include "testutil.hpp"
#include "turtle.hpp"

namespace testutil {

struct CorpusCase {
  std::string entity;        // local name under dbr:
  std::string plain;
  std::string md;
  std::string graph_ttl;     // input description graph
  std::string expected_ttl;  // retained triples; empty = example dropped
  std::string created;
  std::int64_t page_id = 0;
};

inline std::vector<CorpusCase> corpus20() {
  return {
      // E01: all five input triples supported; rules add birthYear,
      // deathYear and birthPlace->France (link + Place type present).
      {"Henri_Valcourt",
       "Henri Valcourt (8 May 1912 - 3 January 1999) was a French painter "
       "known for luminous seascapes.",
       "**Henri Valcourt** (8 May 1912 - 3 January 1999) was a "
       "[French](/wiki/France) painter born in [Nice](/wiki/Nice).",
       "dbr:Henri_Valcourt rdfs:label \"Henri Valcourt\" ;\n"
       "  dbo:birthDate \"1912-05-08\"^^xsd:date ;\n"
       "  dbo:deathDate \"1999-01-03\"^^xsd:date ;\n"
       "  dbo:birthPlace dbr:Nice ;\n"
       "  dbo:nationality dbr:France .\n",
       "dbr:Henri_Valcourt rdfs:label \"Henri Valcourt\" ;\n"
       "  dbo:birthDate \"1912-05-08\"^^xsd:date ;\n"
       "  dbo:deathDate \"1999-01-03\"^^xsd:date ;\n"
       "  dbo:birthYear \"1912\"^^xsd:gYear ;\n"
       "  dbo:deathYear \"1999\"^^xsd:gYear ;\n"
       "  dbo:birthPlace dbr:Nice ;\n"
       "  dbo:birthPlace dbr:France ;\n"
       "  dbo:nationality dbr:France .\n",
       "2004-06-02", 1001},

      // E02: "May 3, 1956" covers the Month-D-comma form; nationality has
      // no link so it drops, as does the derived birthPlace->Norway.
      {"Ingrid_Solberg",
       "Ingrid Solberg (born May 3, 1956) is a Norwegian novelist.",
       "**Ingrid Solberg** (born May 3, 1956) is a Norwegian novelist from "
       "[Oslo](/wiki/Oslo).",
       "dbr:Ingrid_Solberg rdfs:label \"Ingrid Solberg\" ;\n"
       "  dbo:birthDate \"1956-05-03\"^^xsd:date ;\n"
       "  dbo:birthPlace dbr:Oslo ;\n"
       "  dbo:nationality dbr:Norway .\n",
       "dbr:Ingrid_Solberg rdfs:label \"Ingrid Solberg\" ;\n"
       "  dbo:birthDate \"1956-05-03\"^^xsd:date ;\n"
       "  dbo:birthYear \"1956\"^^xsd:gYear ;\n"
       "  dbo:birthPlace dbr:Oslo .\n",
       "2006-11-19", 1002},

      // E03: bare years support the gYear literals but not the full
      // birthDate; deathPlace propagates to Italy which is linked and a
      // Place, so the derived triple survives.
      {"Matteo_Ricci_Bonetti",
       "Matteo Ricci Bonetti (1923-2001) was an Italian sculptor.",
       "**Matteo Ricci Bonetti** (1923-2001) was an [Italian](/wiki/Italy) "
       "sculptor working in [Turin](/wiki/Turin).",
       "dbr:Matteo_Ricci_Bonetti rdfs:label \"Matteo Ricci Bonetti\" ;\n"
       "  dbo:birthYear \"1923\"^^xsd:gYear ;\n"
       "  dbo:deathYear \"2001\"^^xsd:gYear ;\n"
       "  dbo:birthDate \"1923-04-11\"^^xsd:date ;\n"
       "  dbo:nationality dbr:Italy ;\n"
       "  dbo:deathPlace dbr:Turin .\n",
       "dbr:Matteo_Ricci_Bonetti rdfs:label \"Matteo Ricci Bonetti\" ;\n"
       "  dbo:birthYear \"1923\"^^xsd:gYear ;\n"
       "  dbo:deathYear \"2001\"^^xsd:gYear ;\n"
       "  dbo:nationality dbr:Italy ;\n"
       "  dbo:deathPlace dbr:Turin ;\n"
       "  dbo:deathPlace dbr:Italy .\n",
       "2005-02-23", 1003},

      // E04: label absent from the text; the alias carries the example.
      {"Pauline_Arnaud",
       "Known professionally as Pavo, the performer rose to fame in Lyon.",
       "Known professionally as Pavo, the performer rose to fame in "
       "[Lyon](/wiki/Lyon).",
       "dbr:Pauline_Arnaud rdfs:label \"Pauline Arnaud\" ;\n"
       "  dbo:alias \"Pavo\" ;\n"
       "  dbo:birthPlace dbr:Lyon .\n",
       "dbr:Pauline_Arnaud dbo:alias \"Pavo\" ;\n"
       "  dbo:birthPlace dbr:Lyon .\n",
       "2009-08-14", 1004},

      // E05: nothing is supported; the example disappears.
      {"Carlos_Mendizabal",
       "A reclusive figure, little is known about his early life.",
       "A reclusive figure, little is known about his early life.",
       "dbr:Carlos_Mendizabal rdfs:label \"Carlos Mendizabal\" ;\n"
       "  dbo:birthYear \"1930\"^^xsd:gYear .\n",
       "",
       "2012-04-01", 1005},

      // E06: linked object exists but its types miss the range class.
      {"Greta_Lindqvist",
       "Greta Lindqvist was born in 1944 and joined the Northern Guild.",
       "Greta Lindqvist was born in 1944 and joined the "
       "[Northern Guild](/wiki/Northern_Guild).",
       "dbr:Greta_Lindqvist rdfs:label \"Greta Lindqvist\" ;\n"
       "  dbo:birthYear \"1944\"^^xsd:gYear ;\n"
       "  dbo:birthPlace dbr:Northern_Guild .\n",
       "dbr:Greta_Lindqvist rdfs:label \"Greta Lindqvist\" ;\n"
       "  dbo:birthYear \"1944\"^^xsd:gYear .\n",
       "2013-10-05", 1006},

      // E07: percent-encoded link target decodes to the resource.
      {"Yusuf_Demir_Kaya",
       "Yusuf Demir Kaya (born 2 February 1970) is a composer.",
       "Yusuf Demir Kaya (born 2 February 1970) is a composer based in "
       "[Zürich](/wiki/Z%C3%BCrich).",
       "dbr:Yusuf_Demir_Kaya rdfs:label \"Yusuf Demir Kaya\" ;\n"
       "  dbo:birthDate \"1970-02-02\"^^xsd:date ;\n"
       "  dbo:birthPlace dbr:Zürich .\n",
       "dbr:Yusuf_Demir_Kaya rdfs:label \"Yusuf Demir Kaya\" ;\n"
       "  dbo:birthDate \"1970-02-02\"^^xsd:date ;\n"
       "  dbo:birthYear \"1970\"^^xsd:gYear ;\n"
       "  dbo:birthPlace dbr:Zürich .\n",
       "2010-01-25", 1007},

      // E08: only the day-month rendering appears; the derived birthYear
      // finds no bare year and drops.
      {"Amalia_Ferreira",
       "Amalia Ferreira was born on 14 March in Seville, year unrecorded.",
       "Amalia Ferreira was born on 14 March in [Seville](/wiki/Seville), "
       "year unrecorded.",
       "dbr:Amalia_Ferreira rdfs:label \"Amalia Ferreira\" ;\n"
       "  dbo:birthDate \"1890-03-14\"^^xsd:date ;\n"
       "  dbo:birthPlace dbr:Seville .\n",
       "dbr:Amalia_Ferreira rdfs:label \"Amalia Ferreira\" ;\n"
       "  dbo:birthDate \"1890-03-14\"^^xsd:date ;\n"
       "  dbo:birthPlace dbr:Seville .\n",
       "2008-03-03", 1008},

      // E09: ISO-form dates in the running text.
      {"Viktor_Brandt",
       "Viktor Brandt (1902-11-23 - 1978-06-05) directed early sound films.",
       "Viktor Brandt (1902-11-23 - 1978-06-05) directed early sound films. "
       "He died in [Geneva](/wiki/Geneva).",
       "dbr:Viktor_Brandt rdfs:label \"Viktor Brandt\" ;\n"
       "  dbo:birthDate \"1902-11-23\"^^xsd:date ;\n"
       "  dbo:deathDate \"1978-06-05\"^^xsd:date ;\n"
       "  dbo:deathPlace dbr:Geneva .\n",
       "dbr:Viktor_Brandt rdfs:label \"Viktor Brandt\" ;\n"
       "  dbo:birthDate \"1902-11-23\"^^xsd:date ;\n"
       "  dbo:deathDate \"1978-06-05\"^^xsd:date ;\n"
       "  dbo:birthYear \"1902\"^^xsd:gYear ;\n"
       "  dbo:deathYear \"1978\"^^xsd:gYear ;\n"
       "  dbo:deathPlace dbr:Geneva .\n",
       "2003-12-30", 1009},

      // E10: string search is case-sensitive, so the label misses.
      {"Nadia_Okonkwo",
       "NADIA OKONKWO founded a dance school in Marseille in 1958.",
       "NADIA OKONKWO founded a dance school in [Marseille](/wiki/Marseille) "
       "in 1958.",
       "dbr:Nadia_Okonkwo rdfs:label \"Nadia Okonkwo\" ;\n"
       "  dbo:birthYear \"1921\"^^xsd:gYear ;\n"
       "  dbo:birthPlace dbr:Marseille .\n",
       "dbr:Nadia_Okonkwo dbo:birthPlace dbr:Marseille .\n",
       "2011-07-07", 1010},

      // E11: the raw nationality is a region (range mismatch) but its
      // country propagates and is linked as a Country.
      {"Tomas_Herrera_Soto",
       "Tomas Herrera Soto, a filmmaker of Catalan origin, settled in "
       "Spain's capital.",
       "Tomas Herrera Soto, a filmmaker of [Catalan](/wiki/Catalonia) "
       "origin, settled in [Spain](/wiki/Spain)'s capital.",
       "dbr:Tomas_Herrera_Soto rdfs:label \"Tomas Herrera Soto\" ;\n"
       "  dbo:birthYear \"1935\"^^xsd:gYear ;\n"
       "  dbo:nationality dbr:Catalonia .\n",
       "dbr:Tomas_Herrera_Soto rdfs:label \"Tomas Herrera Soto\" ;\n"
       "  dbo:nationality dbr:Spain .\n",
       "2015-09-18", 1011},

      // E12: the death date itself is unsupported while its derived year
      // appears as a bare year, so only the year survives.
      {"Helene_Fournier",
       "Helene Fournier (born 5 June 1940 in Nice) retired in 2011; she "
       "died in 2015.",
       "Helene Fournier (born 5 June 1940 in [Nice](/wiki/Nice)) retired "
       "in 2011; she died in 2015.",
       "dbr:Helene_Fournier rdfs:label \"Helene Fournier\" ;\n"
       "  dbo:birthDate \"1940-06-05\"^^xsd:date ;\n"
       "  dbo:deathDate \"2015-09-30\"^^xsd:date ;\n"
       "  dbo:birthPlace dbr:Nice .\n",
       "dbr:Helene_Fournier rdfs:label \"Helene Fournier\" ;\n"
       "  dbo:birthDate \"1940-06-05\"^^xsd:date ;\n"
       "  dbo:birthYear \"1940\"^^xsd:gYear ;\n"
       "  dbo:deathYear \"2015\"^^xsd:gYear ;\n"
       "  dbo:birthPlace dbr:Nice .\n",
       "2007-05-29", 1012},

      // E13: anchor text alone never supports an object; the link points
      // to a different resource.
      {"Oskar_Lindgren",
       "Oskar Lindgren (1961-03-02) grew up near Oslo.",
       "Oskar Lindgren (1961-03-02) grew up near "
       "[Oslo](/wiki/Greater_Oslo_Region).",
       "dbr:Oskar_Lindgren rdfs:label \"Oskar Lindgren\" ;\n"
       "  dbo:birthDate \"1961-03-02\"^^xsd:date ;\n"
       "  dbo:birthPlace dbr:Oslo .\n",
       "dbr:Oskar_Lindgren rdfs:label \"Oskar Lindgren\" ;\n"
       "  dbo:birthDate \"1961-03-02\"^^xsd:date ;\n"
       "  dbo:birthYear \"1961\"^^xsd:gYear .\n",
       "2014-02-11", 1013},

      // E14: birth name and quoted alias as exact strings.
      {"Beatrice_Hall",
       "Beatrice Hall, born Beatrice Anne Whitmore, wrote as \"B. Hall\" "
       "for decades.",
       "Beatrice Hall, born Beatrice Anne Whitmore, wrote as \"B. Hall\" "
       "for decades.",
       "dbr:Beatrice_Hall rdfs:label \"Beatrice Hall\" ;\n"
       "  dbo:birthName \"Beatrice Anne Whitmore\" ;\n"
       "  dbo:alias \"B. Hall\" ;\n"
       "  dbo:birthPlace dbr:Bergen .\n",
       "dbr:Beatrice_Hall rdfs:label \"Beatrice Hall\" ;\n"
       "  dbo:birthName \"Beatrice Anne Whitmore\" ;\n"
       "  dbo:alias \"B. Hall\" .\n",
       "2005-06-16", 1014},

      // E15: dateTime lexical form feeds the same renderings.
      {"Dmitri_Volkov_Aster",
       "Dmitri Volkov Aster was born on 17 August 1905 in Geneva.",
       "Dmitri Volkov Aster was born on 17 August 1905 in "
       "[Geneva](/wiki/Geneva).",
       "dbr:Dmitri_Volkov_Aster rdfs:label \"Dmitri Volkov Aster\" ;\n"
       "  dbo:birthDate \"1905-08-17T00:00:00\"^^xsd:dateTime ;\n"
       "  dbo:birthPlace dbr:Geneva .\n",
       "dbr:Dmitri_Volkov_Aster rdfs:label \"Dmitri Volkov Aster\" ;\n"
       "  dbo:birthDate \"1905-08-17T00:00:00\"^^xsd:dateTime ;\n"
       "  dbo:birthYear \"1905\"^^xsd:gYear ;\n"
       "  dbo:birthPlace dbr:Geneva .\n",
       "2009-09-09", 1015},

      // E16: one of two aliases appears verbatim.
      {"Luisa_Romero_Vega",
       "Luisa Romero Vega, popularly called La Paloma, sang in Madrid and "
       "Seville.",
       "Luisa Romero Vega, popularly called La Paloma, sang in "
       "[Madrid](/wiki/Madrid) and [Seville](/wiki/Seville).",
       "dbr:Luisa_Romero_Vega rdfs:label \"Luisa Romero Vega\" ;\n"
       "  dbo:alias \"La Paloma\", \"The Dove\" ;\n"
       "  dbo:birthPlace dbr:Madrid ;\n"
       "  dbo:deathPlace dbr:Seville .\n",
       "dbr:Luisa_Romero_Vega rdfs:label \"Luisa Romero Vega\" ;\n"
       "  dbo:alias \"La Paloma\" ;\n"
       "  dbo:birthPlace dbr:Madrid ;\n"
       "  dbo:deathPlace dbr:Seville .\n",
       "2016-01-21", 1016},

      // E17: REST-style relative link "./Lyon".
      {"Jean_Baptiste_Okem",
       "Jean Baptiste Okem (3 March 1948 - 22 May 2020) taught in Lyon.",
       "Jean Baptiste Okem (3 March 1948 - 22 May 2020) taught in "
       "[Lyon](./Lyon).",
       "dbr:Jean_Baptiste_Okem rdfs:label \"Jean Baptiste Okem\" ;\n"
       "  dbo:birthDate \"1948-03-03\"^^xsd:date ;\n"
       "  dbo:deathDate \"2020-05-22\"^^xsd:date ;\n"
       "  dbo:birthPlace dbr:Lyon .\n",
       "dbr:Jean_Baptiste_Okem rdfs:label \"Jean Baptiste Okem\" ;\n"
       "  dbo:birthDate \"1948-03-03\"^^xsd:date ;\n"
       "  dbo:deathDate \"2020-05-22\"^^xsd:date ;\n"
       "  dbo:birthYear \"1948\"^^xsd:gYear ;\n"
       "  dbo:deathYear \"2020\"^^xsd:gYear ;\n"
       "  dbo:birthPlace dbr:Lyon .\n",
       "2006-08-08", 1017},

      // E18: absolute wikipedia URL; the stale birth year misses.
      {"Sofia_Petrova_Anders",
       "Sofia Petrova Anders emigrated in 1968 and settled in Bergen.",
       "Sofia Petrova Anders emigrated in 1968 and settled in "
       "[Bergen](https://en.wikipedia.org/wiki/Bergen).",
       "dbr:Sofia_Petrova_Anders rdfs:label \"Sofia Petrova Anders\" ;\n"
       "  dbo:birthYear \"1946\"^^xsd:gYear ;\n"
       "  dbo:deathPlace dbr:Bergen .\n",
       "dbr:Sofia_Petrova_Anders rdfs:label \"Sofia Petrova Anders\" ;\n"
       "  dbo:deathPlace dbr:Bergen .\n",
       "2022-05-14", 1018},

      // E19: the out-of-shape occupation triple is restricted away.
      {"Mikkel_Sorensen",
       "Mikkel Sorensen (born 1898) piloted harbors for forty years.",
       "Mikkel Sorensen (born 1898) piloted harbors for forty years.",
       "dbr:Mikkel_Sorensen rdfs:label \"Mikkel Sorensen\" ;\n"
       "  dbo:occupation dbr:Harbor_Pilot ;\n"
       "  dbo:birthYear \"1898\"^^xsd:gYear .\n",
       "dbr:Mikkel_Sorensen rdfs:label \"Mikkel Sorensen\" ;\n"
       "  dbo:birthYear \"1898\"^^xsd:gYear .\n",
       "2021-03-09", 1019},

      // E20: the example survives purely through a derived triple.
      {"Anna_Castellano_Bruni",
       "Anna Castellano Bruni's cookbooks remained in print until 1983.",
       "Anna Castellano Bruni's cookbooks remained in print until 1983.",
       "dbr:Anna_Castellano_Bruni dbo:deathDate \"1983-10-09\"^^xsd:date .\n",
       "dbr:Anna_Castellano_Bruni dbo:deathYear \"1983\"^^xsd:gYear .\n",
       "2023-01-30", 1020},
  };
}

inline shapeforge::dataset::DualExample corpus_example(const CorpusCase& c) {
  shapeforge::dataset::DualExample ex;
  ex.entity = kDbr + c.entity;
  ex.abstract_plain = c.plain;
  ex.abstract_md = c.md;
  ex.created_date = c.created;
  ex.wiki_page_id = c.page_id;
  ex.graph = shapeforge::rdf::Graph::description(
      shapeforge::rdf::Iri{ex.entity},
      shapeforge::rdf::parse_turtle(c.graph_ttl).triples());
  return ex;
}

inline shapeforge::dataset::Dataset corpus20_base() {
  shapeforge::dataset::Dataset ds;
  for (const auto& c : corpus20()) ds.push_back(corpus_example(c));
  return ds;
}

// The adjudicated distillation result: same records with the surviving
// graphs; fully dropped examples are absent.
inline shapeforge::dataset::Dataset corpus20_expected() {
  shapeforge::dataset::Dataset ds;
  for (const auto& c : corpus20()) {
    if (c.expected_ttl.empty()) continue;
    auto ex = corpus_example(c);
    ex.graph = shapeforge::rdf::Graph::description(
        shapeforge::rdf::Iri{ex.entity},
        shapeforge::rdf::parse_turtle(c.expected_ttl).triples());
    ds.push_back(std::move(ex));
  }
  return ds;
}

}  // namespace testutil
