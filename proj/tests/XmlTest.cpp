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
#include "xocube/xml/Document.h"

using namespace xocube;
using namespace xocube::xml;

namespace {

std::vector<NodeId> childIds(Document const& doc, NodeId id) {
  std::vector<NodeId> out;
  for (NodeId c : doc.children(id)) {
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("parse: attributes, children and text") {
  auto doc = parseDocument("<a x=\"1\"><b/>t</a>");
  NodeId a = doc.root();
  CHECK(doc.name(a) == "a");
  CHECK(doc.attribute(a, "x") == "1");
  CHECK_FALSE(doc.attribute(a, "y").has_value());
  auto kids = childIds(doc, a);
  REQUIRE(kids.size() == 2);
  CHECK(doc.kind(kids[0]) == NodeKind::Element);
  CHECK(doc.name(kids[0]) == "b");
  CHECK(doc.kind(kids[1]) == NodeKind::Text);
  CHECK(doc.value(kids[1]) == "t");
}

TEST_CASE("parse: order fragment of the flat layout") {
  auto doc = parseDocument(R"(<order>
    <price>125,67</price>
    <quantity>3</quantity>
    <customer_dimension>
      <customer>Jim</customer><country>BE</country><continent>EU</continent>
    </customer_dimension>
    <product_dimension>
      <product>Table</product><category>Kitchen</category>
      <family>Furniture</family>
    </product_dimension>
  </order>)");
  std::vector<std::string> names;
  for (NodeId c : doc.children(doc.root())) {
    names.emplace_back(doc.name(c));
  }
  CHECK(names == std::vector<std::string>{"price", "quantity",
                                          "customer_dimension",
                                          "product_dimension"});
  NodeId price = childIds(doc, doc.root())[0];
  CHECK(doc.stringValue(price) == "125,67");
}

TEST_CASE("parse: entities, character references and CDATA") {
  auto doc = parseDocument("<a>&lt;</a>");
  auto kids = childIds(doc, doc.root());
  REQUIRE(kids.size() == 1);
  CHECK(doc.value(kids[0]) == "<");

  auto more = parseDocument(
      "<a v=\"&quot;&amp;&apos;\">&#65;&#x42;<![CDATA[<c>]]>&gt;</a>");
  CHECK(more.attribute(more.root(), "v") == "\"&'");
  CHECK(more.stringValue(more.root()) == "AB<c>>");
}

TEST_CASE("parse: comments, declaration and whitespace are dropped") {
  auto doc = parseDocument(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- c -->\n<a>\n  "
      "<!-- inner --><b/>\n</a>");
  auto kids = childIds(doc, doc.root());
  REQUIRE(kids.size() == 1);
  CHECK(doc.name(kids[0]) == "b");
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parseDocument(""), ParseError);
  CHECK_THROWS_AS(parseDocument("<a>"), ParseError);
  CHECK_THROWS_AS(parseDocument("<a></b>"), ParseError);
  CHECK_THROWS_AS(parseDocument("<a/><b/>"), ParseError);
  CHECK_THROWS_AS(parseDocument("<a x=\"1\" x=\"2\"/>"), ParseError);
  CHECK_THROWS_AS(parseDocument("<a>&nope;</a>"), ParseError);
  CHECK_THROWS_AS(parseDocument("<a x=1/>"), ParseError);
  CHECK_THROWS_AS(parseDocument("<a:b/>"), UnsupportedFeature);
  CHECK_THROWS_AS(parseDocument("<a xmlns=\"u\"/>"), UnsupportedFeature);
  CHECK_THROWS_AS(parseDocument("<!DOCTYPE a><a/>"), UnsupportedFeature);
  CHECK_THROWS_AS(parseDocument("<a><?pi x?></a>"), UnsupportedFeature);
  try {
    parseDocument("<a><b></a>");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.offset() > 0);
    CHECK(e.offset() <= 10);
  }
}

TEST_CASE("serialize: escaping and empty elements") {
  DocumentBuilder b;
  b.startElement("a").attribute("q", "say \"hi\" & <go>");
  b.startElement("b").endElement();
  b.text("x < y & z");
  b.endElement();
  auto doc = b.finish();
  std::string out = serialize(doc);
  CHECK(out ==
        "<a q=\"say &quot;hi&quot; &amp; &lt;go&gt;\"><b/>x &lt; y &amp; "
        "z</a>");
  CHECK(structurallyEqual(doc, parseDocument(out)));
  CHECK(structurallyEqual(doc, parseDocument(serialize(doc, true))));
}

TEST_CASE("string values") {
  auto doc = parseDocument("<a><b>x</b>y<c ref=\"c42\"/></a>");
  CHECK(doc.stringValue(doc.root()) == "xy");
  NodeId c = childIds(doc, doc.root())[2];
  NodeId ref = doc.firstAttribute(c);
  CHECK(doc.kind(ref) == NodeKind::Attribute);
  CHECK(doc.stringValue(ref) == "c42");
  CHECK(serialize(doc, ref) == "ref=\"c42\"");
}

TEST_CASE("builder rejects malformed construction") {
  DocumentBuilder open;
  open.startElement("a");
  CHECK_THROWS_AS(open.finish(), InvalidParam);
  CHECK_THROWS_AS(DocumentBuilder().finish(), InvalidParam);
  DocumentBuilder late;
  late.startElement("a").startElement("b").endElement();
  CHECK_THROWS_AS(late.attribute("x", "1"), InvalidParam);
  CHECK_THROWS_AS(DocumentBuilder().startElement("a:b"), InvalidParam);
  CHECK(isNcName("customer_dimension"));
  CHECK_FALSE(isNcName("1a"));
  CHECK_FALSE(isNcName("a:b"));
}

TEST_CASE("document order, ancestry and name lookups") {
  auto doc = parseDocument(
      "<r><x id=\"1\"><y/><x id=\"2\"><y/></x></x><y/></r>");
  Symbol x = doc.symbol("x");
  Symbol y = doc.symbol("y");
  auto xs = doc.elementsNamed(x);
  auto ys = doc.elementsNamed(y);
  REQUIRE(xs.size() == 2);
  REQUIRE(ys.size() == 3);
  CHECK(std::is_sorted(xs.begin(), xs.end()));
  CHECK(std::is_sorted(ys.begin(), ys.end()));
  CHECK(doc.isAncestor(xs[0], xs[1]));
  CHECK(doc.isAncestor(xs[0], ys[1]));
  CHECK_FALSE(doc.isAncestor(xs[0], ys[2]));
  CHECK_FALSE(doc.isAncestor(xs[1], xs[0]));
  CHECK(doc.attributesNamed(doc.symbol("id")).size() == 2);
  CHECK(doc.symbol("absent") == kNoSymbol);
}

// Property: every node's subtree is exactly the id range (id, last], parents
// precede children, and serialization round-trips, over every encoder output.
TEST_CASE("encoder output round-trips and keeps pre-order ids") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto instance = cube::generate(cube::runningExampleSchema(), 60, 3, seed);
    for (auto model : encoding::kAllModels) {
      CAPTURE(encoding::toString(model));
      auto encoded = encoding::encode(instance, model);
      std::vector<Document const*> docs = {&encoded.factsDoc};
      if (encoded.dimsDoc) {
        docs.push_back(&*encoded.dimsDoc);
      }
      for (auto const* doc : docs) {
        for (NodeId id = 1; id < doc->size(); ++id) {
          NodeId parent = doc->parent(id);
          REQUIRE(parent < id);
          REQUIRE(doc->last(id) <= doc->last(parent));
          REQUIRE(doc->isAncestor(parent, id));
        }
        for (NodeId id = 0; id < doc->size(); ++id) {
          NodeId prev = id + doc->node(id).attributeCount;
          for (NodeId c : doc->children(id)) {
            REQUIRE(c > prev);
            prev = doc->last(c);
          }
          REQUIRE(prev == doc->last(id));
        }
        CHECK(structurallyEqual(*doc, parseDocument(serialize(*doc))));
        CHECK(structurallyEqual(*doc, parseDocument(serialize(*doc, true))));
      }
    }
  }
}
