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

namespace xocube::encoding {

using namespace xocube::cube;
using namespace xocube::encoding::detail;

EncodedDataset encodeFlat(CubeInstance const& instance) {
  CubeSchema const& schema = instance.schema;
  std::vector<LeafChains> chains;
  std::vector<std::string> wrappers;
  for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
    chains.push_back(leafChains(instance, d));
    wrappers.push_back(dimensionWrapperName(schema.dimensions[d].name));
  }

  xml::DocumentBuilder b;
  b.startElement(factsRootName(schema));
  for (FactRecord const& fact : instance.facts) {
    b.startElement(schema.factName);
    for (std::size_t m = 0; m < schema.measures.size(); ++m) {
      b.leaf(schema.measures[m].name,
             formatMeasure(fact.measures.at(m), schema.measures[m].kind));
    }
    for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
      b.startElement(wrappers[d]);
      for (Member const* m : chains[d].at(fact.leafRefs.at(d))) {
        b.leaf(m->level, m->name);
      }
      b.endElement();
    }
    b.endElement();
  }
  b.endElement();
  return {ModelKind::Flat, b.finish(), std::nullopt};
}

CubeInstance decodeFlat(EncodedDataset const& dataset) {
  if (dataset.model != ModelKind::Flat) {
    throw LayoutError("dataset is not in the flat layout");
  }
  xml::Document const& doc = dataset.factsDoc;
  xml::NodeId root = doc.root();

  CubeInstance instance;
  instance.schema.factName = factNameFromRoot(doc.name(root));
  MeasureReader measures;
  IdMinter minter;
  std::vector<NamePathMembers> dims;
  std::string const suffix = "_dimension";
  bool first = true;

  for (xml::NodeId fact : elementChildren(doc, root)) {
    requireName(doc, fact, instance.schema.factName);
    auto children = elementChildren(doc, fact);
    std::size_t nMeasures = 0;
    while (nMeasures < children.size() &&
           !doc.name(children[nMeasures]).ends_with(suffix)) {
      ++nMeasures;
    }
    std::size_t nDims = children.size() - nMeasures;
    if (!first) {
      if (nDims != instance.schema.dimensions.size()) {
        layoutError(doc, fact, "unexpected number of dimensions");
      }
    } else {
      first = false;
      for (std::size_t i = nMeasures; i < children.size(); ++i) {
        std::string_view wrapper = doc.name(children[i]);
        DimensionSchema dim;
        dim.name = std::string(wrapper.substr(0, wrapper.size() - suffix.size()));
        for (xml::NodeId level : elementChildren(doc, children[i])) {
          dim.levels.emplace_back(doc.name(level));
        }
        if (dim.levels.empty()) {
          layoutError(doc, children[i], "dimension without levels");
        }
        instance.schema.dimensions.push_back(std::move(dim));
      }
      for (DimensionSchema const& dim : instance.schema.dimensions) {
        dims.emplace_back(dim, minter);
      }
    }

    FactRecord record;
    record.measures = measures.read(doc, fact, children, 0, nMeasures);
    for (std::size_t d = 0; d < nDims; ++d) {
      xml::NodeId wrapper = children[nMeasures + d];
      DimensionSchema const& dim = instance.schema.dimensions[d];
      requireName(doc, wrapper, dimensionWrapperName(dim.name));
      auto levels = elementChildren(doc, wrapper);
      if (levels.size() != dim.levels.size()) {
        layoutError(doc, wrapper, "expected " +
                                      std::to_string(dim.levels.size()) +
                                      " levels");
      }
      std::vector<std::string> path(levels.size());
      for (std::size_t l = 0; l < levels.size(); ++l) {
        requireName(doc, levels[l], dim.levels[l]);
        if (doc.node(levels[l]).childCount != 0 &&
            doc.kind(doc.node(levels[l]).firstChild) != xml::NodeKind::Text) {
          layoutError(doc, levels[l], "level element has element content");
        }
        path[levels.size() - 1 - l] = doc.stringValue(levels[l]);
      }
      record.leafRefs.push_back(dims[d].resolve(path));
    }
    instance.facts.push_back(std::move(record));
  }

  instance.schema.measures = measures.schema();
  for (auto& dim : dims) {
    instance.members.push_back(dim.take());
  }
  canonicalizeMembers(instance);
  return instance;
}

}  // namespace xocube::encoding
