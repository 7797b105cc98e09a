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

EncodedDataset encodeFlatNested(CubeInstance const& instance) {
  CubeSchema const& schema = instance.schema;
  std::vector<LeafChains> chains;
  for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
    chains.push_back(leafChains(instance, d));
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
      b.startElement(dimensionWrapperName(schema.dimensions[d].name));
      auto const& chain = chains[d].at(fact.leafRefs.at(d));
      for (Member const* m : chain) {
        b.startElement(m->level).attribute("name", m->name);
      }
      for (std::size_t i = 0; i < chain.size(); ++i) {
        b.endElement();
      }
      b.endElement();
    }
    b.endElement();
  }
  b.endElement();
  return {ModelKind::FlatNested, b.finish(), std::nullopt};
}

CubeInstance decodeFlatNested(EncodedDataset const& dataset) {
  if (dataset.model != ModelKind::FlatNested) {
    throw LayoutError("dataset is not in the flat-nested layout");
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

    // chain of nested level elements below each wrapper
    std::vector<std::vector<xml::NodeId>> chainNodes;
    for (std::size_t i = nMeasures; i < children.size(); ++i) {
      std::vector<xml::NodeId> chain;
      xml::NodeId cur = children[i];
      for (;;) {
        auto next = elementChildren(doc, cur);
        if (next.empty()) {
          break;
        }
        if (next.size() != 1) {
          layoutError(doc, cur, "level chain must not branch");
        }
        cur = next.front();
        chain.push_back(cur);
      }
      if (chain.empty()) {
        layoutError(doc, children[i], "dimension without levels");
      }
      chainNodes.push_back(std::move(chain));
    }

    if (first) {
      first = false;
      for (std::size_t i = 0; i < nDims; ++i) {
        std::string_view wrapper = doc.name(children[nMeasures + i]);
        DimensionSchema dim;
        dim.name =
            std::string(wrapper.substr(0, wrapper.size() - suffix.size()));
        for (xml::NodeId level : chainNodes[i]) {
          dim.levels.emplace_back(doc.name(level));
        }
        instance.schema.dimensions.push_back(std::move(dim));
      }
      for (DimensionSchema const& dim : instance.schema.dimensions) {
        dims.emplace_back(dim, minter);
      }
    } else if (nDims != instance.schema.dimensions.size()) {
      layoutError(doc, fact, "unexpected number of dimensions");
    }

    FactRecord record;
    record.measures = measures.read(doc, fact, children, 0, nMeasures);
    for (std::size_t d = 0; d < nDims; ++d) {
      DimensionSchema const& dim = instance.schema.dimensions[d];
      requireName(doc, children[nMeasures + d], dimensionWrapperName(dim.name));
      auto const& chain = chainNodes[d];
      if (chain.size() != dim.levels.size()) {
        layoutError(doc, children[nMeasures + d],
                    "expected " + std::to_string(dim.levels.size()) +
                        " nested levels");
      }
      std::vector<std::string> path(chain.size());
      for (std::size_t l = 0; l < chain.size(); ++l) {
        requireName(doc, chain[l], dim.levels[l]);
        path[chain.size() - 1 - l] =
            std::string(requireAttribute(doc, chain[l], "name"));
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
