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

#include "Common.h"

#include "xocube/Errors.h"

#include <algorithm>
#include <map>

namespace xocube::encoding {

using namespace xocube::cube;
using namespace xocube::encoding::detail;

EncodedDataset encodeXCube(CubeInstance const& instance) {
  CubeSchema const& schema = instance.schema;

  xml::DocumentBuilder dims;
  dims.startElement(kDimensionsRoot);
  for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
    DimensionSchema const& dim = schema.dimensions[d];
    MemberIndex index(instance);
    for (std::size_t l = dim.levels.size(); l-- > 0;) {
      dims.startElement("level").attribute("id", dim.levels[l]);
      for (Member const& m : instance.members.at(d)) {
        if (m.level != dim.levels[l]) {
          continue;
        }
        dims.startElement("node").attribute("id", m.id).attribute("name",
                                                                  m.name);
        if (m.parent) {
          Member const* p = index.find(d, *m.parent);
          dims.startElement("rollUp")
              .attribute("toNode", *m.parent)
              .attribute("level", p != nullptr ? p->level : dim.levels[l + 1])
              .endElement();
        }
        dims.endElement();
      }
      dims.endElement();
    }
  }
  dims.endElement();

  std::vector<std::string> dimIds;
  for (DimensionSchema const& dim : schema.dimensions) {
    dimIds.push_back(xcubeDimensionId(dim.name));
  }
  xml::DocumentBuilder facts;
  facts.startElement(kCubeRoot).attribute("fact", schema.factName);
  for (FactRecord const& fact : instance.facts) {
    facts.startElement("cell");
    for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
      facts.startElement("dimension")
          .attribute("id", dimIds[d])
          .attribute("node", fact.leafRefs.at(d))
          .endElement();
    }
    facts.startElement("fact");
    for (std::size_t m = 0; m < schema.measures.size(); ++m) {
      facts.leaf(schema.measures[m].name,
                 formatMeasure(fact.measures.at(m), schema.measures[m].kind));
    }
    facts.endElement();
    facts.endElement();
  }
  facts.endElement();

  return {ModelKind::XCube, facts.finish(), dims.finish()};
}

namespace {

struct LevelInfo {
  std::string name;
  std::size_t position = 0;
  std::optional<std::string> parentLevel;
  std::vector<Member> members;
};

}  // namespace

CubeInstance decodeXCube(EncodedDataset const& dataset) {
  if (dataset.model != ModelKind::XCube) {
    throw LayoutError("dataset is not in the XCube layout");
  }
  if (!dataset.dimsDoc) {
    throw LayoutError("XCube dataset has no dimensions document");
  }
  xml::Document const& dimsDoc = *dataset.dimsDoc;
  xml::Document const& factsDoc = dataset.factsDoc;

  // levels
  std::vector<LevelInfo> levels;
  std::map<std::string, std::size_t, std::less<>> levelByName;
  std::unordered_map<std::string, std::size_t> levelOfNode;
  xml::NodeId root = dimsDoc.root();
  requireName(dimsDoc, root, kDimensionsRoot);
  for (xml::NodeId levelNode : elementChildren(dimsDoc, root)) {
    requireName(dimsDoc, levelNode, "level");
    LevelInfo info;
    info.name = std::string(requireAttribute(dimsDoc, levelNode, "id"));
    info.position = levels.size();
    if (levelByName.contains(info.name)) {
      layoutError(dimsDoc, levelNode, "duplicate level '" + info.name + "'");
    }
    bool firstNode = true;
    for (xml::NodeId node : elementChildren(dimsDoc, levelNode)) {
      requireName(dimsDoc, node, "node");
      Member m;
      m.id = std::string(requireAttribute(dimsDoc, node, "id"));
      m.name = std::string(requireAttribute(dimsDoc, node, "name"));
      m.level = info.name;
      auto rollUps = elementChildren(dimsDoc, node);
      if (rollUps.size() > 1) {
        layoutError(dimsDoc, node, "more than one rollUp");
      }
      std::optional<std::string> parentLevel;
      if (!rollUps.empty()) {
        requireName(dimsDoc, rollUps[0], "rollUp");
        m.parent = std::string(requireAttribute(dimsDoc, rollUps[0], "toNode"));
        parentLevel = std::string(requireAttribute(dimsDoc, rollUps[0], "level"));
      }
      if (firstNode) {
        info.parentLevel = parentLevel;
        firstNode = false;
      } else if (info.parentLevel != parentLevel) {
        layoutError(dimsDoc, node, "inconsistent rollUp level");
      }
      if (!levelOfNode.emplace(m.id, levels.size()).second) {
        layoutError(dimsDoc, node, "duplicate node id '" + m.id + "'");
      }
      info.members.push_back(std::move(m));
    }
    levelByName.emplace(info.name, levels.size());
    levels.push_back(std::move(info));
  }

  // chains: a level is finest when no other level rolls up into it
  std::map<std::size_t, std::size_t> childOf;  // parent level -> child level
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!levels[i].parentLevel) {
      continue;
    }
    auto it = levelByName.find(*levels[i].parentLevel);
    if (it == levelByName.end()) {
      throw LayoutError("level '" + levels[i].name +
                        "' rolls up to unknown level '" +
                        *levels[i].parentLevel + "'");
    }
    if (!childOf.emplace(it->second, i).second) {
      throw LayoutError("level '" + it->first + "' has two child levels");
    }
  }
  struct Chain {
    std::vector<std::size_t> finestFirst;
    std::size_t position;
  };
  std::vector<Chain> chains;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (childOf.contains(i)) {
      continue;
    }
    Chain chain{{}, levels[i].position};
    std::size_t cur = i;
    for (;;) {
      chain.finestFirst.push_back(cur);
      chain.position = std::min(chain.position, levels[cur].position);
      if (!levels[cur].parentLevel) {
        break;
      }
      cur = levelByName.find(*levels[cur].parentLevel)->second;
      if (chain.finestFirst.size() > levels.size()) {
        throw LayoutError("cyclic rollUp levels");
      }
    }
    chains.push_back(std::move(chain));
  }
  std::sort(chains.begin(), chains.end(),
            [](Chain const& a, Chain const& b) { return a.position < b.position; });

  CubeInstance instance;
  std::unordered_map<std::size_t, std::size_t> dimOfFinest;
  for (std::size_t d = 0; d < chains.size(); ++d) {
    DimensionSchema dim;
    dim.name = levels[chains[d].finestFirst.front()].name;
    std::vector<Member> members;
    for (std::size_t l : chains[d].finestFirst) {
      dim.levels.push_back(levels[l].name);
    }
    for (auto it = chains[d].finestFirst.rbegin();
         it != chains[d].finestFirst.rend(); ++it) {
      for (Member& m : levels[*it].members) {
        members.push_back(std::move(m));
      }
    }
    dimOfFinest.emplace(chains[d].finestFirst.front(), d);
    instance.schema.dimensions.push_back(std::move(dim));
    instance.members.push_back(std::move(members));
  }

  // facts
  xml::NodeId factsRoot = factsDoc.root();
  requireName(factsDoc, factsRoot, kCubeRoot);
  MeasureReader measures;
  std::vector<bool> named(chains.size(), false);
  std::size_t const nDims = chains.size();
  for (xml::NodeId cell : elementChildren(factsDoc, factsRoot)) {
    requireName(factsDoc, cell, "cell");
    auto children = elementChildren(factsDoc, cell);
    if (children.size() != nDims + 1) {
      layoutError(factsDoc, cell,
                  "expected " + std::to_string(nDims) +
                      " dimension references and one <fact>");
    }
    FactRecord record;
    record.leafRefs.resize(nDims);
    std::vector<bool> seen(nDims, false);
    for (std::size_t i = 0; i < nDims; ++i) {
      xml::NodeId ref = children[i];
      requireName(factsDoc, ref, "dimension");
      std::string_view dimId = requireAttribute(factsDoc, ref, "id");
      std::string node(requireAttribute(factsDoc, ref, "node"));
      auto lit = levelOfNode.find(node);
      if (lit == levelOfNode.end()) {
        layoutError(factsDoc, ref, "reference to unknown node '" + node + "'");
      }
      auto dit = dimOfFinest.find(lit->second);
      if (dit == dimOfFinest.end()) {
        layoutError(factsDoc, ref, "reference to non-leaf node '" + node + "'");
      }
      std::size_t d = dit->second;
      if (seen[d]) {
        layoutError(factsDoc, ref, "dimension referenced twice");
      }
      seen[d] = true;
      std::string dimName = factNameFromRoot(dimId);
      if (!named[d]) {
        instance.schema.dimensions[d].name = dimName;
        named[d] = true;
      } else if (instance.schema.dimensions[d].name != dimName) {
        layoutError(factsDoc, ref, "inconsistent dimension id");
      }
      record.leafRefs[d] = std::move(node);
    }
    xml::NodeId factNode = children[nDims];
    requireName(factsDoc, factNode, "fact");
    record.measures = measures.readAll(factsDoc, factNode);
    instance.facts.push_back(std::move(record));
  }
  instance.schema.factName =
      std::string(factsDoc.attribute(factsRoot, "fact").value_or("order"));
  instance.schema.measures = measures.schema();
  return instance;
}

}  // namespace xocube::encoding
