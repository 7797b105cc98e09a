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
#include "xocube/cube/Cube.h"
#include "xocube/cube/GroupTable.h"

#include "Fixtures.h"

using namespace xocube;
using namespace xocube::cube;

namespace {

bool hasViolation(ValidationReport const& report, ViolationKind kind) {
  return std::any_of(report.begin(), report.end(),
                     [&](Violation const& v) { return v.kind == kind; });
}

Decimal quantityTotal(CubeInstance const& c) {
  std::size_t q = c.schema.measureIndex("quantity");
  Decimal total;
  for (auto const& f : c.facts) {
    total += f.measures[q];
  }
  return total;
}

}  // namespace

TEST_CASE("decimal arithmetic is exact") {
  CHECK(Decimal::parse("125.67") == Decimal(12567, 2));
  CHECK(Decimal::parse("125,67", true) == Decimal(12567, 2));
  CHECK_FALSE(Decimal::parse("125,67").has_value());
  CHECK_FALSE(Decimal::parse("").has_value());
  CHECK_FALSE(Decimal::parse("1.2.3").has_value());
  CHECK(Decimal::parse("-0.50")->toString() == "-0.5");
  CHECK(Decimal::parse("+7")->toString() == "7");
  CHECK(Decimal(150, 2) == Decimal(15, 1));
  CHECK((Decimal(1, 1) + Decimal(2, 1)) == Decimal(3, 1));
  CHECK((Decimal(1, 2) + Decimal::fromInteger(3)).toFixedString() == "3.01");
  CHECK(Decimal(10, 1) < Decimal(11, 1));
  CHECK(Decimal(300, 2).isInteger());
  CHECK_THROWS_AS(Decimal(12567, 2).rescaled(0), InvalidParam);
}

TEST_CASE("running example schema") {
  auto s = runningExampleSchema();
  CHECK(s.factName == "order");
  REQUIRE(s.dimensions.size() == 2);
  for (auto const& d : s.dimensions) {
    CHECK(d.levels.size() == 3);
  }
  auto const& product = s.dimensions[s.dimensionIndex("product")];
  CHECK(product.levels ==
        std::vector<std::string>{"product", "category", "family"});
  CHECK(product.finestLevel() == "product");
  CHECK(product.coarsestLevel() == "family");
  std::vector<std::string> measures;
  for (auto const& m : s.measures) {
    measures.push_back(m.name);
  }
  std::sort(measures.begin(), measures.end());
  CHECK(measures == std::vector<std::string>{"price", "quantity"});
  CHECK(s.measures[s.measureIndex("quantity")].kind == MeasureKind::Integer);
  CHECK_THROWS_AS(s.dimensionIndex("store"), UnknownLevel);
  CHECK_THROWS_AS(s.measureIndex("weight"), UnknownMeasure);
  CHECK_THROWS_AS(product.levelIndex("brand"), UnknownLevel);
}

TEST_CASE("validation finds each kind of violation") {
  CHECK(validate(testing::singleOrder()).empty());

  auto skip = testing::singleOrder();
  skip.members[1][2].parent = "fam1";  // product directly under family
  CHECK(hasViolation(validate(skip), ViolationKind::LevelSkip));

  auto same = testing::singleOrder();
  same.members[1].push_back({"p99", "Chair", "product", "p98"});
  CHECK(hasViolation(validate(same), ViolationKind::LevelSkip));

  auto dangling = testing::singleOrder();
  dangling.facts[0].leafRefs[1] = "p999";
  CHECK(hasViolation(validate(dangling), ViolationKind::DanglingRef));

  auto nonLeaf = testing::singleOrder();
  nonLeaf.facts[0].leafRefs[1] = "cat77";
  CHECK(hasViolation(validate(nonLeaf), ViolationKind::NonLeafRef));

  auto orphan = testing::singleOrder();
  orphan.members[0][1].parent.reset();
  CHECK(hasViolation(validate(orphan), ViolationKind::MissingParent));

  auto unknownParent = testing::singleOrder();
  unknownParent.members[0][1].parent = "c999";
  CHECK_FALSE(validate(unknownParent).empty());

  auto dupId = testing::singleOrder();
  dupId.members[1].push_back({"p98", "Chair", "product", "cat77"});
  CHECK(hasViolation(validate(dupId), ViolationKind::DuplicateId));

  auto dupName = testing::singleOrder();
  dupName.members[1].push_back({"p99", "Table", "product", "cat77"});
  CHECK(hasViolation(validate(dupName), ViolationKind::DuplicateName));

  auto level = testing::singleOrder();
  level.members[1][2].level = "brand";
  CHECK(hasViolation(validate(level), ViolationKind::UnknownLevel));

  auto arity = testing::singleOrder();
  arity.facts[0].measures.pop_back();
  CHECK(hasViolation(validate(arity), ViolationKind::MeasureArity));

  auto schema = testing::singleOrder();
  schema.members.pop_back();
  CHECK(hasViolation(validate(schema), ViolationKind::SchemaError));
}

TEST_CASE("generator") {
  auto schema = runningExampleSchema();

  auto empty = generate(schema, 0, 3, 11);
  CHECK(empty.facts.empty());
  CHECK(empty.members[0].size() == 3 + 9 + 27);
  CHECK(validate(empty).empty());

  CHECK(generate(schema, 1000, 5, 42) == generate(schema, 1000, 5, 42));
  CHECK_FALSE(generate(schema, 1000, 5, 42) == generate(schema, 1000, 5, 43));

  auto big = generate(schema, 10000, 5, 42);
  CHECK(big.facts.size() == 10000);
  for (std::size_t d = 0; d < 2; ++d) {
    std::map<std::string, std::size_t> perLevel;
    for (auto const& m : big.members[d]) {
      ++perLevel[m.level];
    }
    auto const& levels = schema.dimensions[d].levels;
    CHECK(perLevel[levels[2]] == 5);
    CHECK(perLevel[levels[1]] == 25);
    CHECK(perLevel[levels[0]] == 125);
  }
  for (auto const& dim : big.members) {
    for (auto const& m : dim) {
      REQUIRE(m.id.front() == m.level.front());
    }
  }

  std::size_t q = schema.measureIndex("quantity");
  std::size_t p = schema.measureIndex("price");
  for (auto const& f : big.facts) {
    REQUIRE(f.measures[q] >= Decimal::fromInteger(1));
    REQUIRE(f.measures[q] <= Decimal::fromInteger(100));
    REQUIRE(f.measures[q].isInteger());
    REQUIRE(f.measures[p] >= Decimal(1, 2));
    REQUIRE(f.measures[p] <= Decimal(1000000, 2));
  }

  CHECK_THROWS_AS(generate(schema, 10, 0, 1), InvalidParam);
}

TEST_CASE("generated instances are valid for many seeds") {
  auto schema = runningExampleSchema();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::int64_t fanout : {1, 2, 4}) {
      CAPTURE(seed);
      CAPTURE(fanout);
      CHECK(validate(generate(schema, 50, fanout, seed)).empty());
    }
  }
}

TEST_CASE("splitmix64 reference values") {
  // published first outputs for seed 1234567
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  SplitMix64 bounded(7);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(bounded.below(6) < 6);
  }
}

TEST_CASE("brute-force grouping") {
  auto one = testing::singleOrder();
  auto table = bruteForceGroup(
      one, {{"customer", "country"}, {"product", "category"}}, "quantity");
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows.at({"BE", "Kitchen"}) == Decimal::fromInteger(3));
  CHECK(bruteForceGroup(one, {{"product", "family"}}, "price")
            .rows.at({"Furniture"}) == Decimal(12567, 2));

  auto none = one;
  none.facts.clear();
  CHECK(bruteForceGroup(none, {{"customer", "country"}}, "quantity")
            .rows.empty());

  CHECK_THROWS_AS(bruteForceGroup(one, {{"customer", "planet"}}, "quantity"),
                  UnknownLevel);
  CHECK_THROWS_AS(bruteForceGroup(one, {{"customer", "country"}}, "weight"),
                  UnknownMeasure);
  CHECK_THROWS_AS(bruteForceGroup(one, {{"customer", "country"}}, "quantity",
                                  Aggregate::Max),
                  Unsupported);
}

TEST_CASE("grouping conserves totals and coarsens consistently") {
  auto big = generate(runningExampleSchema(), 10000, 5, 42);
  Decimal total = quantityTotal(big);
  std::vector<std::vector<LevelRef>> keyLists = {
      {{"product", "family"}},
      {{"customer", "country"}},
      {{"customer", "continent"}, {"product", "category"}},
      {{"customer", "customer"}, {"product", "product"}}};
  for (auto const& keys : keyLists) {
    CHECK(bruteForceGroup(big, keys, "quantity").total() == total);
  }

  // country groups summed per continent equal continent groups
  auto byCountry = bruteForceGroup(big, {{"customer", "country"}}, "quantity");
  auto byContinent =
      bruteForceGroup(big, {{"customer", "continent"}}, "quantity");
  MemberIndex index(big);
  std::map<std::string, std::string> continentOf;
  for (auto const& m : big.members[0]) {
    if (m.level == "country") {
      continentOf[m.name] = index.rollUp(0, m.id, 2).name;
    }
  }
  std::map<std::vector<std::string>, Decimal> rolled;
  for (auto const& [key, value] : byCountry.rows) {
    rolled[{continentOf.at(key[0])}] += value;
  }
  CHECK(rolled == byContinent.rows);
}

TEST_CASE("group table differences are described") {
  GroupTable a{{{"customer", "country"}}, {{{"BE"}, Decimal::fromInteger(3)}}};
  GroupTable b = a;
  CHECK(describeDifference(a, b).empty());
  b.rows[{"BE"}] = Decimal::fromInteger(4);
  b.rows[{"FR"}] = Decimal::fromInteger(1);
  auto diff = describeDifference(a, b);
  CHECK(diff.find("BE") != std::string::npos);
  CHECK(diff.find("FR") != std::string::npos);
  CHECK(LevelRef::parse("customer.country") ==
        LevelRef{"customer", "country"});
  CHECK_THROWS_AS(LevelRef::parse("country"), InvalidParam);
}
