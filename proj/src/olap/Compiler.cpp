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

#include "xocube/olap/Olap.h"

#include "xocube/Errors.h"
#include "xocube/query/Ast.h"

#include <algorithm>
#include <sstream>

namespace xocube::olap {

using encoding::ModelKind;

namespace {

struct Key {
  cube::DimensionSchema const* dimension;
  std::size_t level;  // index into dimension->levels, 0 = finest

  std::string const& name() const { return dimension->levels[level]; }
};

std::vector<Key> resolveKeys(OlapRequest const& request,
                             cube::CubeSchema const& schema) {
  std::vector<Key> keys;
  for (auto const& ref : request.keyLevels) {
    auto const& dim = schema.dimensions[schema.dimensionIndex(ref.dimension)];
    keys.push_back(Key{&dim, dim.levelIndex(ref.level)});
  }
  return keys;
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return out + "\"";
}

/// `<group><L1>{e1}</L1>...<sum>{sum(S)}</sum></group>`
void writeReturn(std::ostream& q, std::vector<Key> const& keys,
                 std::vector<std::string> const& keyExprs,
                 std::string const& summed) {
  q << "return\n  <group>\n";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    q << "    <" << keys[i].name() << ">{" << keyExprs[i] << "}</"
      << keys[i].name() << ">\n";
  }
  q << "    <sum>{sum(" << summed << ")}</sum>\n  </group>";
}

std::string keyVar(Key const& k) { return "$" + k.name(); }

std::string flatIterate(std::vector<Key> const& keys,
                        cube::CubeSchema const& schema,
                        std::string const& measure, bool nested) {
  std::ostringstream q;
  std::string suffix = nested ? "/@name" : "";
  for (auto const& k : keys) {
    q << "for " << keyVar(k) << " in distinct-values(//" << k.name() << suffix
      << ")\n";
  }
  q << "let $facts := //" << schema.factName << "[";
  std::vector<std::string> keyExprs;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    Key const& k = keys[i];
    q << (i > 0 ? " and " : "") << encoding::dimensionWrapperName(k.dimension->name)
      << (nested ? "//" : "/") << k.name() << suffix << " eq " << keyVar(k);
    keyExprs.push_back(keyVar(k));
  }
  q << "]\nwhere exists($facts)\n";
  writeReturn(q, keys, keyExprs, "$facts/" + measure);
  return q.str();
}

std::string flatGrouped(std::vector<Key> const& keys,
                        cube::CubeSchema const& schema,
                        std::string const& measure, bool nested) {
  std::ostringstream q;
  q << "for $fact in //" << schema.factName << "\n";
  std::vector<std::string> keyExprs;
  for (auto const& k : keys) {
    q << "let " << keyVar(k) << " := $fact//" << k.name()
      << (nested ? "/@name" : "") << "\n";
    keyExprs.push_back(keyVar(k));
  }
  q << "group $fact by ";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    q << (i > 0 ? ", " : "") << keyVar(keys[i]);
  }
  q << "\n";
  writeReturn(q, keys, keyExprs, "$fact/" + measure);
  return q.str();
}

std::string hierIterate(std::vector<Key> const& keys,
                        cube::CubeSchema const& schema,
                        std::string const& measure) {
  std::ostringstream q;
  for (auto const& k : keys) {
    q << "for " << keyVar(k) << " in /" << encoding::kDimensionsRoot << "//"
      << k.name() << "\n";
  }
  q << "let $facts := /" << encoding::factsRootName(schema) << "/"
    << schema.factName << "[";
  std::vector<std::string> keyExprs;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    Key const& k = keys[i];
    q << (i > 0 ? " and " : "") << k.dimension->name << "/@ref = "
      << keyVar(k) << "//@id";
    keyExprs.push_back("string(" + keyVar(k) + "/@name)");
  }
  q << "]\nwhere exists($facts)\n";
  writeReturn(q, keys, keyExprs, "$facts/" + measure);
  return q.str();
}

std::string hierGrouped(std::vector<Key> const& keys,
                        cube::CubeSchema const& schema,
                        std::string const& measure) {
  std::ostringstream q;
  q << "for $fact in /" << encoding::factsRootName(schema) << "/"
    << schema.factName << "\n";
  std::vector<std::string> keyExprs;
  for (auto const& k : keys) {
    // the key member is the level element whose subtree holds the leaf id
    q << "let " << keyVar(k) << " := /" << encoding::kDimensionsRoot << "//"
      << k.name() << "[.//@id = $fact/" << k.dimension->name
      << "/@ref]/@name\n";
    keyExprs.push_back(keyVar(k));
  }
  q << "group $fact by ";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    q << (i > 0 ? ", " : "") << keyVar(keys[i]);
  }
  q << "\n";
  writeReturn(q, keys, keyExprs, "$fact/" + measure);
  return q.str();
}

std::string levelNodes(std::string const& level) {
  return "//level[@id eq " + quoted(level) + "]/node";
}

std::string cellDimension(Key const& k) {
  return "dimension[@id=" + quoted(encoding::xcubeDimensionId(k.dimension->name)) +
         "]/@node";
}

std::string xcubeIterate(std::vector<Key> const& keys,
                         std::string const& measure) {
  std::ostringstream q;
  for (auto const& k : keys) {
    q << "for " << keyVar(k) << " in " << levelNodes(k.name()) << "\n";
  }
  // one roll-up join per level between the key level and the leaves
  std::vector<std::string> leafIds;
  for (auto const& k : keys) {
    std::string previous;
    for (std::size_t level = k.level; level-- > 0;) {
      std::string const& child = k.dimension->levels[level];
      std::string var = "$" + child + "Ids";
      q << "let " << var << " := " << levelNodes(child);
      if (previous.empty()) {
        q << "[rollUp/@toNode eq " << keyVar(k) << "/@id]/@id\n";
      } else {
        q << "[rollUp/@toNode = " << previous << "]/@id\n";
      }
      previous = var;
    }
    leafIds.push_back(previous.empty() ? keyVar(k) + "/@id" : previous);
  }
  q << "let $facts := //cell[";
  std::vector<std::string> keyExprs;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    q << (i > 0 ? " and " : "") << cellDimension(keys[i]) << " = " << leafIds[i];
    keyExprs.push_back("string(" + keyVar(keys[i]) + "/@name)");
  }
  q << "]/fact\nwhere exists($facts)\n";
  writeReturn(q, keys, keyExprs, "$facts/" + measure);
  return q.str();
}

std::string xcubeGrouped(std::vector<Key> const& keys,
                         std::string const& measure) {
  std::ostringstream q;
  q << "for $cell in /" << encoding::kCubeRoot << "/cell\n";
  std::vector<std::string> keyExprs;
  for (auto const& k : keys) {
    auto const& levels = k.dimension->levels;
    std::string current = "$cell/" + cellDimension(k);
    // walk the roll-up edges from the leaf to the key level
    for (std::size_t level = 0; level < k.level; ++level) {
      std::string var = "$" + k.name() + "_" + levels[level + 1];
      q << "let " << var << " := " << levelNodes(levels[level]) << "[@id = "
        << current << "]/rollUp/@toNode\n";
      current = var;
    }
    q << "let " << keyVar(k) << " := " << levelNodes(k.name()) << "[@id = "
      << current << "]/@name\n";
    keyExprs.push_back(keyVar(k));
  }
  q << "group $cell by ";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    q << (i > 0 ? ", " : "") << keyVar(keys[i]);
  }
  q << "\n";
  writeReturn(q, keys, keyExprs, "$cell/fact/" + measure);
  return q.str();
}

}  // namespace

std::string OlapRequest::keysToString() const {
  std::string out;
  for (auto const& k : keyLevels) {
    if (!out.empty()) {
      out.push_back(',');
    }
    out += k.toString();
  }
  return out;
}

void validate(OlapRequest const& request, cube::CubeSchema const& schema) {
  if (request.aggregate != cube::Aggregate::Sum) {
    throw Unsupported("aggregate " + std::string(toString(request.aggregate)) +
                      " is not supported, only SUM");
  }
  schema.measureIndex(request.measure);
  if (request.keyLevels.empty()) {
    throw InvalidParam("an OLAP request needs at least one key level");
  }
  std::vector<std::size_t> seen;
  for (auto const& ref : request.keyLevels) {
    std::size_t d = schema.dimensionIndex(ref.dimension);
    schema.dimensions[d].levelIndex(ref.level);
    if (std::find(seen.begin(), seen.end(), d) != seen.end()) {
      throw InvalidParam("two key levels on dimension " + ref.dimension);
    }
    seen.push_back(d);
  }
}

std::string_view toString(QueryForm form) noexcept {
  return form == QueryForm::Iterate ? "iterate" : "grouped";
}

QueryForm parseQueryForm(std::string_view text) {
  if (text == "iterate") {
    return QueryForm::Iterate;
  }
  if (text == "grouped") {
    return QueryForm::Grouped;
  }
  throw InvalidParam("unknown query form '" + std::string(text) +
                     "', expected iterate or grouped");
}

std::string compileText(OlapRequest const& request,
                        cube::CubeSchema const& schema, ModelKind model,
                        QueryForm form) {
  validate(request, schema);
  std::vector<Key> keys = resolveKeys(request, schema);
  bool iterate = form == QueryForm::Iterate;
  switch (model) {
    case ModelKind::Flat:
    case ModelKind::FlatNested: {
      bool nested = model == ModelKind::FlatNested;
      return iterate ? flatIterate(keys, schema, request.measure, nested)
                     : flatGrouped(keys, schema, request.measure, nested);
    }
    case ModelKind::Hierarchical:
      return iterate ? hierIterate(keys, schema, request.measure)
                     : hierGrouped(keys, schema, request.measure);
    case ModelKind::XCube:
      return iterate ? xcubeIterate(keys, request.measure)
                     : xcubeGrouped(keys, request.measure);
  }
  throw InvalidParam("unknown model");
}

query::Query compile(OlapRequest const& request, cube::CubeSchema const& schema,
                     ModelKind model, QueryForm form) {
  return query::parseQuery(compileText(request, schema, model, form));
}

}  // namespace xocube::olap
