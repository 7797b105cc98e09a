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

namespace xocube::encoding {

using namespace xocube::cube;
using namespace xocube::encoding::detail;

namespace {

void writeMember(xml::DocumentBuilder& b, Member const& m,
                 std::unordered_map<std::string_view,
                                    std::vector<Member const*>> const& children) {
  b.startElement(m.level).attribute("name", m.name).attribute("id", m.id);
  auto it = children.find(m.id);
  if (it != children.end()) {
    for (Member const* c : it->second) {
      writeMember(b, *c, children);
    }
  }
  b.endElement();
}

}  // namespace

EncodedDataset encodeHierarchical(CubeInstance const& instance) {
  CubeSchema const& schema = instance.schema;

  xml::DocumentBuilder facts;
  facts.startElement(factsRootName(schema));
  for (FactRecord const& fact : instance.facts) {
    facts.startElement(schema.factName);
    for (std::size_t m = 0; m < schema.measures.size(); ++m) {
      facts.leaf(schema.measures[m].name,
                 formatMeasure(fact.measures.at(m), schema.measures[m].kind));
    }
    for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
      facts.startElement(schema.dimensions[d].name)
          .attribute("ref", fact.leafRefs.at(d))
          .endElement();
    }
    facts.endElement();
  }
  facts.endElement();

  xml::DocumentBuilder dims;
  dims.startElement(kDimensionsRoot);
  for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
    DimensionSchema const& dim = schema.dimensions[d];
    std::unordered_map<std::string_view, std::vector<Member const*>> children;
    std::vector<Member const*> roots;
    for (Member const& m : instance.members.at(d)) {
      if (m.parent) {
        children[*m.parent].push_back(&m);
      } else {
        roots.push_back(&m);
      }
    }
    dims.startElement(dimensionWrapperName(dim.name));
    for (Member const* m : roots) {
      writeMember(dims, *m, children);
    }
    dims.endElement();
  }
  dims.endElement();

  return {ModelKind::Hierarchical, facts.finish(), dims.finish()};
}

namespace {

struct TreeReader {
  xml::Document const& doc;
  DimensionSchema& dim;
  IdMinter& minter;
  // members per depth (0 = coarsest), document order
  std::vector<std::vector<Member>> byDepth;

  void collectIds(xml::NodeId id) {
    if (auto v = doc.attribute(id, "id")) {
      minter.reserve(std::string(*v));
    }
    for (xml::NodeId c : elementChildren(doc, id)) {
      collectIds(c);
    }
  }

  void read(xml::NodeId id, std::size_t depth,
            std::optional<std::string> const& parent) {
    if (depth == dim.levels.size()) {
      dim.levels.emplace_back(doc.name(id));
      byDepth.emplace_back();
    } else if (doc.name(id) != dim.levels[depth]) {
      layoutError(doc, id, "expected level <" + dim.levels[depth] + ">");
    }
    Member m;
    m.name = std::string(requireAttribute(doc, id, "name"));
    m.level = dim.levels[depth];
    m.parent = parent;
    if (auto v = doc.attribute(id, "id")) {
      m.id = std::string(*v);
    } else {
      m.id = minter.mint(m.level);
    }
    auto children = elementChildren(doc, id);
    std::string self = m.id;
    byDepth[depth].push_back(std::move(m));
    for (xml::NodeId c : children) {
      read(c, depth + 1, self);
    }
  }
};

}  // namespace

CubeInstance decodeHierarchical(EncodedDataset const& dataset) {
  if (dataset.model != ModelKind::Hierarchical) {
    throw LayoutError("dataset is not in the hierarchical layout");
  }
  if (!dataset.dimsDoc) {
    throw LayoutError("hierarchical dataset has no dimensions document");
  }
  xml::Document const& dimsDoc = *dataset.dimsDoc;
  xml::Document const& factsDoc = dataset.factsDoc;
  std::string const suffix = "_dimension";

  CubeInstance instance;
  IdMinter minter;
  xml::NodeId dimsRoot = dimsDoc.root();
  requireName(dimsDoc, dimsRoot, kDimensionsRoot);
  auto wrappers = elementChildren(dimsDoc, dimsRoot);
  for (xml::NodeId w : wrappers) {
    TreeReader{dimsDoc, instance.schema.dimensions.emplace_back(), minter, {}}
        .collectIds(w);
  }
  instance.schema.dimensions.clear();

  for (xml::NodeId w : wrappers) {
    std::string_view wname = dimsDoc.name(w);
    if (!wname.ends_with(suffix)) {
      layoutError(dimsDoc, w, "expected a <..._dimension> wrapper");
    }
    DimensionSchema dim;
    dim.name = std::string(wname.substr(0, wname.size() - suffix.size()));
    TreeReader reader{dimsDoc, dim, minter, {}};
    for (xml::NodeId tree : elementChildren(dimsDoc, w)) {
      reader.read(tree, 0, std::nullopt);
    }
    if (dim.levels.empty()) {
      layoutError(dimsDoc, w, "dimension without levels");
    }
    std::vector<Member> members;
    for (auto& level : reader.byDepth) {
      for (Member& m : level) {
        members.push_back(std::move(m));
      }
    }
    std::reverse(dim.levels.begin(), dim.levels.end());
    instance.schema.dimensions.push_back(std::move(dim));
    instance.members.push_back(std::move(members));
  }

  std::vector<std::unordered_map<std::string_view, Member const*>> byId(
      instance.members.size());
  for (std::size_t d = 0; d < instance.members.size(); ++d) {
    for (Member const& m : instance.members[d]) {
      byId[d].emplace(m.id, &m);
    }
  }

  xml::NodeId root = factsDoc.root();
  instance.schema.factName = factNameFromRoot(factsDoc.name(root));
  MeasureReader measures;
  std::size_t const nDims = instance.schema.dimensions.size();
  for (xml::NodeId fact : elementChildren(factsDoc, root)) {
    requireName(factsDoc, fact, instance.schema.factName);
    auto children = elementChildren(factsDoc, fact);
    if (children.size() < nDims) {
      layoutError(factsDoc, fact, "missing dimension references");
    }
    std::size_t nMeasures = children.size() - nDims;
    FactRecord record;
    record.measures = measures.read(factsDoc, fact, children, 0, nMeasures);
    for (std::size_t d = 0; d < nDims; ++d) {
      xml::NodeId refNode = children[nMeasures + d];
      requireName(factsDoc, refNode, instance.schema.dimensions[d].name);
      std::string_view ref = requireAttribute(factsDoc, refNode, "ref");
      auto it = byId[d].find(ref);
      if (it == byId[d].end()) {
        layoutError(factsDoc, refNode,
                    "reference to unknown member '" + std::string(ref) + "'");
      }
      if (it->second->level != instance.schema.dimensions[d].finestLevel()) {
        layoutError(factsDoc, refNode,
                    "reference to non-leaf member '" + std::string(ref) + "'");
      }
      record.leafRefs.emplace_back(ref);
    }
    instance.facts.push_back(std::move(record));
  }
  instance.schema.measures = measures.schema();
  return instance;
}

}  // namespace xocube::encoding
