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
#include "xocube/bench/Bench.h"
#include "xocube/olap/Olap.h"
#include "xocube/query/Evaluator.h"

#include "Listings.h"

using namespace xocube;
using namespace xocube::testing;
using encoding::ModelKind;
using olap::OlapRequest;
using olap::QueryForm;

namespace {

OlapRequest request(std::vector<std::string> const& keys) {
  OlapRequest r;
  for (auto const& k : keys) {
    r.keyLevels.push_back(cube::LevelRef::parse(k));
  }
  return r;
}

std::string run(query::Query const& q,
                std::vector<xml::Document const*> const& docs) {
  query::DocumentSet set;
  for (auto const* d : docs) {
    set.add(*d);
  }
  return query::evaluate(q, set).serialize();
}

}  // namespace

TEST_CASE("compiled flat iterate query matches the hand-written listing") {
  auto schema = cube::runningExampleSchema();
  auto req = request({"product.category", "customer.country"});
  auto compiled = olap::compile(req, schema, ModelKind::Flat,
                                QueryForm::Iterate);
  auto listing = query::parseQuery(kFlatQuery);

  auto const* c = compiled.body->as<query::Flwor>();
  auto const* l = listing.body->as<query::Flwor>();
  REQUIRE(c != nullptr);
  REQUIRE(l != nullptr);
  // same loops over the same key sources, one let selecting the facts
  REQUIRE(c->clauses.size() == l->clauses.size());
  for (std::size_t i = 0; i < c->clauses.size(); ++i) {
    CHECK(c->clauses[i].kind == l->clauses[i].kind);
    CHECK(c->clauses[i].var.name == l->clauses[i].var.name);
  }
  CHECK(query::toString(*c->clauses[0].expr) ==
        query::toString(*l->clauses[0].expr));
  CHECK(query::toString(*c->clauses[1].expr) ==
        query::toString(*l->clauses[1].expr));
  CHECK(query::toString(*c->ret) == query::toString(*l->ret));

  auto doc = xml::parseDocument(kFlatFact);
  std::string expected =
      "<group><category>Kitchen</category><country>BE</country>"
      "<sum>3</sum></group>\n";
  CHECK(run(listing, {&doc}) == expected);
  CHECK(run(compiled, {&doc}) == expected);
}

TEST_CASE("compiled flat grouped query is the grouping listing") {
  auto schema = cube::runningExampleSchema();
  auto req = request({"product.category", "customer.country"});
  auto compiled = olap::compile(req, schema, ModelKind::Flat,
                                QueryForm::Grouped);
  CHECK(query::toString(compiled) ==
        query::toString(query::parseQuery(kGroupedQuery)));
}

TEST_CASE("compiled hierarchical and xcube queries agree with the listings") {
  auto schema = cube::runningExampleSchema();
  auto req = request({"product.category", "customer.country"});
  std::string expected =
      "<group><category>Kitchen</category><country>BE</country>"
      "<sum>3</sum></group>\n";

  auto hf = xml::parseDocument(kHierFacts);
  auto hd = xml::parseDocument(kHierDims);
  for (auto form : {QueryForm::Iterate, QueryForm::Grouped}) {
    CAPTURE(olap::toString(form));
    CHECK(run(olap::compile(req, schema, ModelKind::Hierarchical, form),
              {&hf, &hd}) == expected);
  }
  // the listing returns the name attributes themselves
  CHECK(run(query::parseQuery(kHierQuery), {&hf, &hd}) ==
        "<group><country name=\"BE\"/><category name=\"Kitchen\"/>"
        "<sum>3</sum></group>\n");

  auto xf = xml::parseDocument(kXCubeFacts);
  auto xd = xml::parseDocument(kXCubeDims);
  for (auto form : {QueryForm::Iterate, QueryForm::Grouped}) {
    CAPTURE(olap::toString(form));
    CHECK(run(olap::compile(req, schema, ModelKind::XCube, form),
              {&xf, &xd}) == expected);
  }
  CHECK(run(query::parseQuery(kXCubeQuery), {&xf, &xd}) ==
        "<group><category name=\"Kitchen\"/><country name=\"BE\"/>"
        "<sum>3</sum></group>\n");
}

TEST_CASE("xcube iterate query joins down one rollUp hop per level") {
  auto schema = cube::runningExampleSchema();
  auto countHops = [&](std::vector<std::string> const& keys) {
    auto q = olap::compile(request(keys), schema, ModelKind::XCube,
                           QueryForm::Iterate);
    std::size_t hops = 0;
    for (auto const& clause : q.body->as<query::Flwor>()->clauses) {
      if (query::toString(*clause.expr).find("rollUp/@toNode") !=
          std::string::npos) {
        ++hops;
      }
    }
    return hops;
  };
  CHECK(countHops({"product.family"}) == 2);
  CHECK(countHops({"product.category"}) == 1);
  CHECK(countHops({"product.product"}) == 0);
  CHECK(countHops({"customer.continent", "product.category"}) == 3);
}

TEST_CASE("request validation") {
  auto schema = cube::runningExampleSchema();
  CHECK_NOTHROW(olap::validate(request({"customer.country"}), schema));
  CHECK_THROWS_AS(olap::validate(request({"customer.planet"}), schema),
                  UnknownLevel);
  CHECK_THROWS_AS(olap::validate(request({"store.city"}), schema),
                  UnknownLevel);
  CHECK_THROWS_AS(olap::validate(request({}), schema), InvalidParam);
  CHECK_THROWS_AS(
      olap::validate(request({"customer.country", "customer.continent"}),
                     schema),
      InvalidParam);
  auto r = request({"customer.country"});
  r.measure = "weight";
  CHECK_THROWS_AS(olap::validate(r, schema), UnknownMeasure);
  r.measure = "quantity";
  r.aggregate = cube::Aggregate::Avg;
  CHECK_THROWS_AS(olap::validate(r, schema), Unsupported);
  CHECK_THROWS_AS(olap::compile(r, schema, ModelKind::Flat,
                                QueryForm::Iterate),
                  Unsupported);
}

TEST_CASE("group table extraction") {
  auto req = request({"customer.country", "product.category"});
  auto extract = [&](std::string_view text) {
    auto result = query::evaluate(query::parseQuery(text), {});
    return olap::extractGroupTable(result.items, req);
  };

  auto table = extract(
      "<group><country>BE</country><category>Kitchen</category>"
      "<sum>3</sum></group>");
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows.at({"BE", "Kitchen"}) == Decimal::fromInteger(3));
  CHECK(table.keyLevels == req.keyLevels);

  CHECK(extract("()").rows.empty());
  CHECK(extract("<group><country>BE</country><category>K</category>"
                "<sum>125.67</sum></group>")
            .rows.at({"BE", "K"}) == Decimal(12567, 2));

  CHECK_THROWS_AS(extract("\"BE\""), MalformedResult);
  CHECK_THROWS_AS(extract("<row><country>BE</country></row>"),
                  MalformedResult);
  CHECK_THROWS_AS(
      extract("<group><country>BE</country><sum>3</sum></group>"),
      MalformedResult);
  CHECK_THROWS_AS(extract("<group><country>BE</country>"
                          "<category>K</category></group>"),
                  MalformedResult);
  CHECK_THROWS_AS(extract("<group><country>BE</country><category>K"
                          "</category><sum>three</sum></group>"),
                  MalformedResult);
  CHECK_THROWS_AS(
      extract("<group><country>BE</country><category>K</category>"
              "<sum>3</sum></group>, <group><country>BE</country>"
              "<category>K</category><sum>4</sum></group>"),
      MalformedResult);
}

TEST_CASE("every compiled query equals the oracle on generated data") {
  auto instance = cube::generate(cube::runningExampleSchema(), 1000, 5, 7);
  auto targets = bench::defaultIndexTargets(instance.schema);
  auto suite = bench::defaultSuite();
  for (auto model : encoding::kAllModels) {
    bench::LoadedModel loaded(encoding::encode(instance, model), targets);
    for (auto const& entry : suite) {
      CAPTURE(encoding::toString(model));
      CAPTURE(entry.request.keysToString());
      auto expected = cube::bruteForceGroup(
          instance, entry.request.keyLevels, entry.request.measure);
      std::vector<cube::GroupTable> tables;
      for (auto form : {QueryForm::Iterate, QueryForm::Grouped}) {
        CAPTURE(olap::toString(form));
        auto q = olap::compile(entry.request, instance.schema, model, form);
        auto result = query::evaluate(q, loaded.documents(), &loaded.index());
        tables.push_back(olap::extractGroupTable(result.items, entry.request));
        CHECK(cube::describeDifference(expected, tables.back()) == "");
      }
      // both forms agree with each other
      CHECK(tables[0] == tables[1]);
    }
  }
}

TEST_CASE("compiled text survives a print and parse round trip") {
  auto schema = cube::runningExampleSchema();
  for (auto model : encoding::kAllModels) {
    for (auto form : {QueryForm::Iterate, QueryForm::Grouped}) {
      for (auto const& entry : bench::defaultSuite()) {
        auto printed = query::toString(query::parseQuery(
            olap::compileText(entry.request, schema, model, form)));
        CHECK(query::toString(query::parseQuery(printed)) == printed);
      }
    }
  }
}
