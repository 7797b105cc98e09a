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
#include "xocube/encoding/Encoders.h"
#include "xocube/query/Evaluator.h"
#include "xocube/query/Functions.h"

#include "Listings.h"

using namespace xocube;
using namespace xocube::query;
using namespace xocube::testing;

namespace {

std::string run(std::string_view text, std::vector<xml::Document const*> docs,
                ValueIndex const* index = nullptr) {
  DocumentSet set;
  for (auto const* d : docs) {
    set.add(*d);
  }
  return evaluate(parseQuery(text), set, index).serialize();
}

Sequence strings(std::initializer_list<char const*> values) {
  Sequence out;
  for (auto const* v : values) {
    out.emplace_back(std::string(v));
  }
  return out;
}

std::vector<IndexTarget> allTargets() {
  std::vector<IndexTarget> t;
  for (auto const* a : {"ref", "id", "toNode", "node", "name"}) {
    t.push_back({a, xml::NodeKind::Attribute});
  }
  for (auto const* e : {"customer", "country", "continent", "product",
                        "category", "family"}) {
    t.push_back({e, xml::NodeKind::Element});
  }
  return t;
}

}  // namespace

TEST_CASE("parse: nested FLWOR with two for clauses and a let") {
  Query q = parseQuery(kFlatQuery);
  auto const* outer = q.body->as<Flwor>();
  REQUIRE(outer != nullptr);
  // `for ... for ... let ... return` is one FLWOR in the parsed form
  REQUIRE(outer->clauses.size() == 3);
  CHECK(outer->clauses[0].kind == ClauseKind::For);
  CHECK(outer->clauses[1].kind == ClauseKind::For);
  CHECK(outer->clauses[2].kind == ClauseKind::Let);
  CHECK(outer->ret->is<ElementConstructor>());
  CHECK(outer->ret->as<ElementConstructor>()->content.size() == 3);
}

TEST_CASE("parse: grouping clause") {
  Query q = parseQuery(kGroupedQuery);
  auto const* f = q.body->as<Flwor>();
  REQUIRE(f != nullptr);
  REQUIRE(f->groupBy.has_value());
  REQUIRE(f->groupBy->keys.size() == 2);
  CHECK(f->groupBy->keys[0].name == "category");
  CHECK(f->groupBy->keys[1].name == "country");
  CHECK(f->groupBy->retained.size() == 1);
}

TEST_CASE("parse: scope errors") {
  CHECK_THROWS_AS(parseQuery("for $x in //a group $y by $x return $y"),
                  UnboundVariable);
  try {
    parseQuery("for $x in //a group $y by $x return $y");
  } catch (UnboundVariable const& e) {
    CHECK(e.name() == "y");
  }
  CHECK_THROWS_AS(parseQuery("$nothing"), UnboundVariable);
  CHECK_THROWS_AS(parseQuery("(for $x in //a return $x, $x)"), UnboundVariable);
}

TEST_CASE("parse: syntax errors report line and column") {
  try {
    parseQuery("for $x in //a\nreturn $x[");
    FAIL("expected SyntaxError");
  } catch (SyntaxError const& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(parseQuery("//a[1"), SyntaxError);
  CHECK_THROWS_AS(parseQuery("unknown-fn(1)"), SyntaxError);
  CHECK_THROWS_AS(parseQuery("sum(1, 2)"), SyntaxError);
  CHECK_THROWS_AS(parseQuery("<a></b>"), SyntaxError);
  CHECK_THROWS_AS(parseQuery("//*"), SyntaxError);
  CHECK_THROWS_AS(parseQuery("//a/.."), SyntaxError);
  CHECK_THROWS_AS(parseQuery("\"open"), SyntaxError);
  CHECK_THROWS_AS(parseQuery(""), SyntaxError);
}

TEST_CASE("printer output parses back to the same query") {
  std::vector<std::string> queries = {
      // the verbatim flat listing uses absolute paths in its predicate and
      // only type-checks on single-fact documents
      "for $k in distinct-values(//category) for $c in distinct-values(//country) "
      "let $f := //order[.//category eq $k and .//country eq $c] "
      "where exists($f) return <g>{$k}{$c}{sum($f/quantity)}</g>",
      kGroupedQuery,
      kHierQuery,
      kXCubeQuery,
      "(1, 2.5, \"a\"\"b&amp;c\", ())",
      "//a[b = \"x\" or c eq 'y' and d != 'z']/@id",
      "for $x in //a return <r k=\"{$x/@id}-{{lit}}\">t &lt; {string($x)} u</r>",
      "(/)",
      "for $a in //a let $b := $a//b[.//@id ne \"3\"] where exists($b) group by $a return count($b)",
      "for $x in (for $y in //a return $y) return ($x/b, .)[c]",
  };
  for (auto const& text : queries) {
    CAPTURE(text);
    std::string printed = toString(parseQuery(text));
    std::string reprinted = toString(parseQuery(printed));
    CHECK(printed == reprinted);
  }
}

TEST_CASE("value comparison") {
  CHECK(valueCompare(strings({"BE"}), strings({"BE"}), CompOp::ValueEq) == true);
  CHECK(valueCompare(strings({"BE"}), strings({"FR"}), CompOp::ValueEq) == false);
  CHECK_FALSE(valueCompare({}, strings({"BE"}), CompOp::ValueEq).has_value());
  CHECK_THROWS_AS(valueCompare(strings({"BE", "FR"}), strings({"BE"}),
                               CompOp::ValueEq),
                  TypeError);
}

TEST_CASE("general comparison") {
  CHECK(generalCompare(strings({"p98"}), strings({"p98", "p99"}),
                       CompOp::GeneralEq));
  CHECK_FALSE(generalCompare({}, strings({"p98"}), CompOp::GeneralEq));
  CHECK_FALSE(generalCompare(strings({"a"}), strings({"b"}), CompOp::GeneralEq));
  // large operands take the hashed path
  Sequence many;
  for (int i = 0; i < 100; ++i) {
    many.emplace_back("v" + std::to_string(i));
  }
  CHECK(generalCompare(strings({"x", "v77"}), many, CompOp::GeneralEq));
  CHECK_FALSE(generalCompare(strings({"x", "v100"}), many, CompOp::GeneralEq));
  CHECK(generalCompare(strings({"a"}), strings({"a", "b"}), CompOp::GeneralNe));
  CHECK_FALSE(generalCompare(strings({"a"}), strings({"a"}), CompOp::GeneralNe));

  auto hier = xml::parseDocument(kHierFacts);
  auto dims = xml::parseDocument(kHierDims);
  CHECK(run("exists(/orders/order[customer/@ref = //country[@name = \"BE\"]//@id])",
            {&hier, &dims}) == "true\n");
}

TEST_CASE("distinct-values") {
  auto doc = xml::parseDocument(
      "<r><c>Kitchen</c><c>Kitchen</c><c>Garden</c></r>");
  CHECK(run("distinct-values(//c)", {&doc}) == "Kitchen\nGarden\n");
  CHECK(distinctValues({}).empty());
  CHECK(distinctValues(strings({"a", "b", "a"})) == strings({"a", "b"}));
}

TEST_CASE("sum") {
  auto doc = xml::parseDocument("<r><q>3</q><q>4</q><p>1.5</p><x>abc</x></r>");
  CHECK(run("sum(//q)", {&doc}) == "7\n");
  CHECK(run("sum(())", {&doc}) == "0\n");
  CHECK(run("sum((//q, //p))", {&doc}) == "8.5\n");
  CHECK_THROWS_AS(run("sum(//x)", {&doc}), DynamicError);
  CHECK(std::get<std::int64_t>(sum(Sequence{std::int64_t(2), std::string("5")})) == 7);
}

TEST_CASE("group tuples") {
  TupleStream in;
  in.variables = {"k", "v"};
  auto atom = [](char const* s) { return Sequence{std::string(s)}; };
  in.tuples = {{atom("a"), atom("1")}, {atom("b"), atom("2")}, {atom("a"), atom("3")}};
  TupleStream out = groupTuples(in, {"k"});
  REQUIRE(out.tuples.size() == 2);
  CHECK(out.tuples[0][0] == atom("a"));
  CHECK(out.tuples[0][1] == strings({"1", "3"}));
  CHECK(out.tuples[1][0] == atom("b"));
  CHECK(out.tuples[1][1] == strings({"2"}));

  TupleStream single;
  single.variables = {"k", "v"};
  single.tuples = {{atom("a"), atom("1")}};
  CHECK(groupTuples(single, {"k"}).tuples == single.tuples);

  TupleStream bad;
  bad.variables = {"k"};
  bad.tuples = {{strings({"a", "b"})}};
  CHECK_THROWS_AS(groupTuples(bad, {"k"}), TypeError);
  bad.tuples = {{Sequence{}}};
  CHECK_THROWS_AS(groupTuples(bad, {"k"}), TypeError);
}

TEST_CASE("running-example queries over the single-fact documents") {
  auto flat = xml::parseDocument(kFlatFact);
  std::string expected =
      "<group><category>Kitchen</category><country>BE</country><sum>3</sum></group>\n";
  CHECK(run(kFlatQuery, {&flat}) == expected);
  CHECK(run(kGroupedQuery, {&flat}) == expected);

  auto hier = xml::parseDocument(kHierFacts);
  auto hierDims = xml::parseDocument(kHierDims);
  // attribute nodes in element content become attributes of the new element
  CHECK(run(kHierQuery, {&hier, &hierDims}) ==
        "<group><country name=\"BE\"/><category name=\"Kitchen\"/><sum>3</sum></group>\n");

  auto xc = xml::parseDocument(kXCubeFacts);
  auto xcDims = xml::parseDocument(kXCubeDims);
  CHECK(run(kXCubeQuery, {&xc, &xcDims}) ==
        "<group><category name=\"Kitchen\"/><country name=\"BE\"/><sum>3</sum></group>\n");
}

TEST_CASE("queries over an empty fact document return nothing") {
  auto empty = xml::parseDocument("<orders/>");
  CHECK(run(kFlatQuery, {&empty}).empty());
  CHECK(run(kGroupedQuery, {&empty}).empty());
}

TEST_CASE("paths are duplicate-free and in document order") {
  auto doc = xml::parseDocument("<a><a><b id='1'/></a><b id='2'/><c><b id='3'/></c></a>");
  CHECK(run("//a//b/@id", {&doc}) == "id=\"1\"\nid=\"2\"\nid=\"3\"\n");
  CHECK(run("for $x in //a return $x//b", {&doc}) ==
        "<b id=\"1\"/>\n<b id=\"2\"/>\n<b id=\"3\"/>\n<b id=\"1\"/>\n");
  CHECK(run("count(//a/b)", {&doc}) == "2\n");
  CHECK(run("count(/a/c/b)", {&doc}) == "1\n");
}

TEST_CASE("constructors build detached nodes") {
  auto doc = xml::parseDocument("<r><x k='v'>t</x></r>");
  CHECK(run("<w a=\"{//x/@k}!\">{//x}{1, 2}</w>", {&doc}) ==
        "<w a=\"v!\"><x k=\"v\">t</x>1 2</w>\n");
  CHECK(run("<w>{//x/@k}</w>", {&doc}) == "<w k=\"v\"/>\n");
  CHECK_THROWS_AS(run("<w>{//x, //x/@k}</w>", {&doc}), TypeError);
  // querying the constructed element does not see the source document
  CHECK(run("count(<w>{//x}</w>//x)", {&doc}) == "1\n");
  CHECK(run("count(//x)", {&doc}) == "1\n");
}

TEST_CASE("positional predicates are rejected") {
  auto doc = xml::parseDocument("<r><x/><x/></r>");
  CHECK_THROWS_AS(run("//x[1]", {&doc}), DynamicError);
}

TEST_CASE("value index") {
  auto hier = xml::parseDocument(kHierFacts);
  DocumentSet set;
  set.add(hier);
  ValueIndex index = ValueIndex::build(set, {{"ref", xml::NodeKind::Attribute}});
  CHECK(index.lookup("ref", xml::NodeKind::Attribute, "c42").size() == 1);
  CHECK(index.lookup("ref", xml::NodeKind::Attribute, "c43").empty());
  CHECK(index.lookup("id", xml::NodeKind::Attribute, "c42").empty());
}

TEST_CASE("value index lookups equal full scans over generated facts") {
  auto instance = cube::generate(cube::runningExampleSchema(), 500, 3, 7);
  auto encoded = encoding::encodeHierarchical(instance);
  DocumentSet set;
  set.add(encoded.factsDoc);
  ValueIndex index = ValueIndex::build(set, {{"ref", xml::NodeKind::Attribute}});
  auto const& doc = encoded.factsDoc;
  for (auto const& member : instance.members[0]) {
    std::vector<NodeRef> scanned;
    for (xml::NodeId id : doc.attributesNamed(doc.symbol("ref"))) {
      if (doc.value(id) == member.id) {
        scanned.push_back(NodeRef{&doc, id});
      }
    }
    CHECK(index.lookup("ref", xml::NodeKind::Attribute, member.id) == scanned);
  }
}

TEST_CASE("indexed evaluation returns the same results as scanning") {
  auto instance = cube::generate(cube::runningExampleSchema(), 300, 3, 11);
  std::vector<std::string> queries = {
      // the verbatim flat listing uses absolute paths in its predicate and
      // only type-checks on single-fact documents
      "for $k in distinct-values(//category) for $c in distinct-values(//country) "
      "let $f := //order[.//category eq $k and .//country eq $c] "
      "where exists($f) return <g>{$k}{$c}{sum($f/quantity)}</g>",
      kGroupedQuery,
      "for $c in distinct-values(//country) return <g c=\"{$c}\">{count(//order[customer_dimension/country eq $c])}</g>",
      "for $c in distinct-values(//country) return count(//order[customer_dimension/country = $c and quantity = \"5\"])",
      "count(//order[.//@name = \"Country2\"])",
      "count(//order[customer/@ref = //customer[@name = \"Customer3\"]/@id])",
      "count(//cell[dimension[@id = \"customers\"]/@node = \"c20\"])",
      "count(//node[rollUp[@level = \"country\"]/@toNode = //level//node/@id])",
  };
  for (auto model : encoding::kAllModels) {
    auto encoded = encoding::encode(instance, model);
    DocumentSet set;
    set.add(encoded.factsDoc);
    if (encoded.dimsDoc) {
      set.add(*encoded.dimsDoc);
    }
    ValueIndex index = ValueIndex::build(set, allTargets());
    std::vector<std::string> texts = queries;
    // the join listings only make sense on their own layout
    if (model == encoding::ModelKind::Hierarchical) {
      texts.push_back(kHierQuery);
    } else if (model == encoding::ModelKind::XCube) {
      texts.push_back(kXCubeQuery);
    }
    for (auto const& text : texts) {
      CAPTURE(text);
      CAPTURE(encoding::toString(model));
      Query q = parseQuery(text);
      auto outcome = [&](ValueIndex const* idx) -> std::string {
        try {
          return evaluate(q, set, idx).serialize();
        } catch (Error const& e) {
          return std::string("error: ") + e.what();
        }
      };
      CHECK(outcome(nullptr) == outcome(&index));
    }
  }
}

TEST_CASE("distinct-values and sum agree with the cube model") {
  auto instance = cube::generate(cube::runningExampleSchema(), 1000, 5, 42);
  auto encoded = encoding::encodeFlat(instance);
  DocumentSet set;
  set.add(encoded.factsDoc);
  std::size_t categories = 0;
  for (auto const& m : instance.members[1]) {
    categories += m.level == "category";
  }
  auto r = evaluate(parseQuery("count(distinct-values(//category))"), set);
  CHECK(std::get<std::int64_t>(r.items.at(0)) == std::int64_t(categories));

  std::int64_t total = 0;
  std::size_t q = instance.schema.measureIndex("quantity");
  for (auto const& f : instance.facts) {
    total += f.measures[q].units();
  }
  r = evaluate(parseQuery("sum(//order/quantity)"), set);
  CHECK(std::get<std::int64_t>(r.items.at(0)) == total);
}

TEST_CASE("join predicates are answered through the index") {
  auto instance = cube::generate(cube::runningExampleSchema(), 2000, 5, 3);
  auto encoded = encoding::encodeHierarchical(instance);
  DocumentSet set;
  set.add(encoded.factsDoc);
  set.add(*encoded.dimsDoc);
  ValueIndex index = ValueIndex::build(set, allTargets());
  EvalStats stats;
  evaluate(parseQuery(kHierQuery), set, &index, &stats);
  CHECK(stats.indexedSteps > 0);
  EvalStats plain;
  evaluate(parseQuery(kHierQuery), set, nullptr, &plain);
  CHECK(plain.indexedSteps == 0);
  CHECK(plain.scannedSteps > 0);
}
