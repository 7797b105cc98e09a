////////////////////////////////////////////////////////////////////////////////
/// Copyright 2026 The xocube Authors
///
/// Licensed under the Apache License, Version 2.0 (the "License");
/// you may not use this file except in compliance with the License.
/// You may obtain a copy of the License at
///
///     http://www.apache.org/licenses/LICENSE-2.0
///
/// Unless required by applicable law or agreed to in writing, software
/// distributed under the License is distributed on an "AS IS" BASIS,
/// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
/// See the License for the specific language governing permissions and
/// limitations under the License.
////////////////////////////////////////////////////////////////////////////////

#include <doctest.h>

#include "xocube/Errors.h"
#include "xocube/cube/GroupTable.h"
#include "xocube/encoding/Encoders.h"

#include "Fixtures.h"
#include "Listings.h"

using namespace xocube;
using namespace xocube::encoding;

namespace {

std::size_t countNamed(xml::Document const& doc, std::string_view name,
                       bool attribute) {
  xml::Symbol s = doc.symbol(name);
  if (s == xml::kNoSymbol) {
    return 0;
  }
  return attribute ? doc.attributesNamed(s).size()
                   : doc.elementsNamed(s).size();
}

std::size_t memberCount(cube::CubeInstance const& c) {
  std::size_t n = 0;
  for (auto const& d : c.members) {
    n += d.size();
  }
  return n;
}

EncodedDataset parsed(ModelKind model, std::string_view facts,
                      std::string_view dims = {}) {
  EncodedDataset d{model, xml::parseDocument(facts), std::nullopt};
  if (!dims.empty()) {
    d.dimsDoc.emplace(xml::parseDocument(dims));
  }
  return d;
}

}  // namespace

TEST_CASE("model names") {
  for (auto m : kAllModels) {
    CHECK((parseModelKind(toString(m)) == m));
  }
  CHECK((parseModelKind("hierarchical") == ModelKind::Hierarchical));
  CHECK_THROWS_AS(parseModelKind("star"), InvalidParam);
}

TEST_CASE("flat encoding of the single order") {
  auto e = encodeFlat(testing::singleOrder());
  CHECK_FALSE(e.dimsDoc.has_value());
  CHECK(xml::serialize(e.factsDoc) ==
        "<orders><order><price>125.67</price><quantity>3</quantity>"
        "<customer_dimension><customer>Jim</customer><country>BE</country>"
        "<continent>EU</continent></customer_dimension><product_dimension>"
        "<product>Table</product><category>Kitchen</category>"
        "<family>Furniture</family></product_dimension></order></orders>");

  auto empty = testing::singleOrder();
  empty.facts.clear();
  CHECK(xml::serialize(encodeFlat(empty).factsDoc) == "<orders/>");
}

TEST_CASE("flat nested encoding") {
  auto e = encodeFlatNested(testing::singleOrder());
  CHECK(xml::serialize(e.factsDoc).find(
            "<product_dimension><product name=\"Table\"><category "
            "name=\"Kitchen\"><family name=\"Furniture\"/></category>"
            "</product></product_dimension>") != std::string::npos);

  cube::CubeInstance flat;
  flat.schema.factName = "sale";
  flat.schema.measures = {{"amount", cube::MeasureKind::Integer}};
  flat.schema.dimensions = {{"store", {"store"}}};
  flat.members = {{{"s1", "Main", "store", std::nullopt}}};
  flat.facts = {{{Decimal::fromInteger(2)}, {"s1"}}};
  CHECK(xml::serialize(encodeFlatNested(flat).factsDoc) ==
        "<sales><sale><amount>2</amount><store_dimension>"
        "<store name=\"Main\"/></store_dimension></sale></sales>");
  CHECK(equivalent(flat, decode(encodeFlatNested(flat)),
                   ModelKind::FlatNested));
}

TEST_CASE("hierarchical encoding") {
  auto e = encodeHierarchical(testing::singleOrder());
  CHECK(xml::serialize(e.factsDoc) ==
        "<orders><order><price>125.67</price><quantity>3</quantity>"
        "<customer ref=\"c42\"/><product ref=\"p98\"/></order></orders>");
  REQUIRE(e.dimsDoc.has_value());
  CHECK(xml::serialize(*e.dimsDoc).find(
            "<product_dimension><family name=\"Furniture\" id=\"fam1\">"
            "<category name=\"Kitchen\" id=\"cat77\"><product name=\"Table\" "
            "id=\"p98\"/></category></family></product_dimension>") !=
        std::string::npos);
}

TEST_CASE("xcube encoding") {
  auto e = encodeXCube(testing::singleOrder());
  REQUIRE(e.dimsDoc.has_value());
  CHECK(xml::serialize(*e.dimsDoc).find(
            "<level id=\"product\"><node id=\"p98\" name=\"Table\">"
            "<rollUp toNode=\"cat77\" level=\"category\"/></node></level>") !=
        std::string::npos);
  CHECK(xml::serialize(e.factsDoc) ==
        "<cube fact=\"order\"><cell><dimension id=\"customers\" "
        "node=\"c42\"/><dimension id=\"products\" node=\"p98\"/><fact>"
        "<price>125.67</price><quantity>3</quantity></fact></cell></cube>");
}

TEST_CASE("decoding the hand-written fragments") {
  auto hier = decodeHierarchical(
      parsed(ModelKind::Hierarchical, testing::kHierFacts, testing::kHierDims));
  REQUIRE(hier.facts.size() == 1);
  cube::MemberIndex index(hier);
  auto const& fact = hier.facts[0];
  CHECK(index.find(0, fact.leafRefs[0])->name == "Jim");
  CHECK(index.find(1, fact.leafRefs[1])->name == "Table");
  std::size_t price = hier.schema.measureIndex("price");
  CHECK(fact.measures[price] == Decimal(12567, 2));
  CHECK(hier.schema.measures[price].kind == cube::MeasureKind::Decimal);
  CHECK(cube::validate(hier).empty());

  auto xcube = decodeXCube(
      parsed(ModelKind::XCube, testing::kXCubeFacts, testing::kXCubeDims));
  CHECK(xcube.facts.size() == 1);
  CHECK(cube::validate(xcube).empty());

  auto flat = decodeFlat(parsed(ModelKind::Flat, testing::kFlatFact));
  CHECK(flat.facts.size() == 1);
  CHECK(encoding::namePathFacts(flat) ==
        encoding::namePathFacts(testing::singleOrder()));

  auto empty = decodeFlat(parsed(ModelKind::Flat, "<orders/>"));
  CHECK(empty.facts.empty());
}

TEST_CASE("decoding rejects malformed layouts") {
  CHECK_THROWS_AS(
      decodeHierarchical(parsed(ModelKind::Hierarchical,
                                "<orders><order><quantity>1</quantity>"
                                "<customer ref=\"nobody\"/></order></orders>",
                                testing::kHierDims)),
      LayoutError);
  CHECK_THROWS_AS(decodeHierarchical(parsed(ModelKind::Hierarchical,
                                            testing::kHierFacts)),
                  LayoutError);
  CHECK_THROWS_AS(
      decodeFlat(parsed(ModelKind::Flat,
                        "<orders><order><quantity>x</quantity>"
                        "</order></orders>")),
      LayoutError);
  CHECK_THROWS_AS(
      decodeXCube(parsed(ModelKind::XCube,
                         "<cube fact=\"order\"><cell><fact><quantity>1"
                         "</quantity></fact></cell></cube>",
                         testing::kXCubeDims)),
      LayoutError);
  CHECK_THROWS_AS(decodeXCube(parsed(ModelKind::XCube, "<orders/>",
                                     testing::kXCubeDims)),
                  LayoutError);
}

TEST_CASE("round trip through every layout") {
  for (std::uint64_t seed : {1u, 42u}) {
    for (std::int64_t fanout : {1, 3}) {
      auto c = cube::generate(cube::runningExampleSchema(), 200, fanout, seed);
      for (auto m : kAllModels) {
        CAPTURE(toString(m));
        auto encoded = encode(c, m);
        CHECK(equivalent(c, decode(encoded), m));
        // and through the serialized bytes
        EncodedDataset reparsed{m,
                                xml::parseDocument(xml::serialize(
                                    encoded.factsDoc, true)),
                                std::nullopt};
        if (encoded.dimsDoc) {
          reparsed.dimsDoc.emplace(
              xml::parseDocument(xml::serialize(*encoded.dimsDoc)));
        }
        CHECK(equivalent(c, decode(reparsed), m));
      }
    }
  }
}

TEST_CASE("decoded cubes group like the original") {
  auto c = cube::generate(cube::runningExampleSchema(), 500, 3, 5);
  std::vector<std::vector<cube::LevelRef>> keyLists = {
      {{"customer", "customer"}},
      {{"product", "family"}},
      {{"customer", "country"}, {"product", "category"}},
      {{"customer", "continent"}, {"product", "product"}}};
  for (auto m : kAllModels) {
    auto d = decode(encode(c, m));
    for (auto const& keys : keyLists) {
      for (char const* measure : {"quantity", "price"}) {
        CAPTURE(toString(m));
        CAPTURE(measure);
        CHECK(cube::bruteForceGroup(d, keys, measure) ==
              cube::bruteForceGroup(c, keys, measure));
      }
    }
  }
}

TEST_CASE("dimension layouts store members once, flat layouts per fact") {
  auto schema = cube::runningExampleSchema();
  for (std::size_t n : {100, 1000}) {
    auto c = cube::generate(schema, n, 4, 3);
    auto hier = encodeHierarchical(c);
    auto xcube = encodeXCube(c);
    CHECK(countNamed(*hier.dimsDoc, "name", true) == memberCount(c));
    CHECK(countNamed(*xcube.dimsDoc, "name", true) == memberCount(c));

    auto flat = encodeFlat(c);
    for (auto const& d : schema.dimensions) {
      for (auto const& level : d.levels) {
        CHECK(countNamed(flat.factsDoc, level, false) == n);
      }
    }
  }
}
