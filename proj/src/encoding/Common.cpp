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

std::string_view toString(ModelKind model) noexcept {
  switch (model) {
    case ModelKind::Flat:
      return "flat";
    case ModelKind::FlatNested:
      return "flat-nested";
    case ModelKind::Hierarchical:
      return "hier";
    case ModelKind::XCube:
      return "xcube";
  }
  return "?";
}

ModelKind parseModelKind(std::string_view text) {
  if (text == "flat") {
    return ModelKind::Flat;
  }
  if (text == "flat-nested" || text == "flat_nested") {
    return ModelKind::FlatNested;
  }
  if (text == "hier" || text == "hierarchical") {
    return ModelKind::Hierarchical;
  }
  if (text == "xcube") {
    return ModelKind::XCube;
  }
  throw InvalidParam("unknown model '" + std::string(text) + "'");
}

std::string factsRootName(CubeSchema const& schema) {
  return schema.factName + "s";
}

std::string dimensionWrapperName(std::string_view dimension) {
  return std::string(dimension) + "_dimension";
}

std::string xcubeDimensionId(std::string_view dimension) {
  return std::string(dimension) + "s";
}

EncodedDataset encode(CubeInstance const& instance, ModelKind model) {
  switch (model) {
    case ModelKind::Flat:
      return encodeFlat(instance);
    case ModelKind::FlatNested:
      return encodeFlatNested(instance);
    case ModelKind::Hierarchical:
      return encodeHierarchical(instance);
    case ModelKind::XCube:
      return encodeXCube(instance);
  }
  throw InvalidParam("unknown model");
}

CubeInstance decode(EncodedDataset const& dataset) {
  switch (dataset.model) {
    case ModelKind::Flat:
      return decodeFlat(dataset);
    case ModelKind::FlatNested:
      return decodeFlatNested(dataset);
    case ModelKind::Hierarchical:
      return decodeHierarchical(dataset);
    case ModelKind::XCube:
      return decodeXCube(dataset);
  }
  throw InvalidParam("unknown model");
}

std::vector<NamePathFact> namePathFacts(CubeInstance const& instance) {
  MemberIndex index(instance);
  std::vector<NamePathFact> out;
  out.reserve(instance.facts.size());
  for (FactRecord const& f : instance.facts) {
    NamePathFact npf;
    npf.measures = f.measures;
    for (std::size_t d = 0; d < f.leafRefs.size(); ++d) {
      std::vector<std::string> path;
      Member const* m = index.find(d, f.leafRefs[d]);
      std::size_t guard = 0;
      while (m != nullptr && guard++ <= instance.schema.dimensions[d].levels.size()) {
        path.push_back(m->name);
        m = m->parent ? index.find(d, *m->parent) : nullptr;
      }
      npf.paths.push_back(std::move(path));
    }
    out.push_back(std::move(npf));
  }
  return out;
}

bool equivalent(CubeInstance const& original, CubeInstance const& decoded,
                ModelKind model) {
  if (!(original.schema == decoded.schema)) {
    return false;
  }
  if (model == ModelKind::Flat || model == ModelKind::FlatNested) {
    return namePathFacts(original) == namePathFacts(decoded);
  }
  CubeInstance a = original;
  CubeInstance b = decoded;
  detail::canonicalizeMembers(a);
  detail::canonicalizeMembers(b);
  return a == b;
}

namespace detail {

std::string formatMeasure(Decimal value, MeasureKind kind) {
  if (kind == MeasureKind::Integer) {
    return value.normalized().toFixedString();
  }
  return value.rescaled(std::max(value.scale(), 2)).toFixedString();
}

std::string describeNode(xml::Document const& doc, xml::NodeId id) {
  std::vector<std::string> parts;
  while (id != xml::Document::kDocumentNode && id != xml::kNoNode) {
    xml::NodeKind kind = doc.kind(id);
    xml::NodeId parent = doc.parent(id);
    if (kind == xml::NodeKind::Attribute) {
      parts.push_back("@" + std::string(doc.name(id)));
    } else if (kind == xml::NodeKind::Text) {
      parts.push_back("text()");
    } else {
      std::size_t pos = 0;
      std::size_t same = 0;
      for (xml::NodeId c : doc.children(parent)) {
        if (doc.kind(c) == xml::NodeKind::Element &&
            doc.name(c) == doc.name(id)) {
          ++same;
          if (c == id) {
            pos = same;
          }
        }
      }
      std::string part(doc.name(id));
      if (same > 1) {
        part += "[" + std::to_string(pos) + "]";
      }
      parts.push_back(std::move(part));
    }
    id = parent;
  }
  std::string out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    out += "/" + *it;
  }
  return out.empty() ? "/" : out;
}

void layoutError(xml::Document const& doc, xml::NodeId id,
                 std::string const& what) {
  throw LayoutError(what + " at " + describeNode(doc, id));
}

std::vector<xml::NodeId> elementChildren(xml::Document const& doc,
                                         xml::NodeId id) {
  std::vector<xml::NodeId> out;
  out.reserve(doc.node(id).childCount);
  for (xml::NodeId c : doc.children(id)) {
    if (doc.kind(c) != xml::NodeKind::Element) {
      layoutError(doc, c, "unexpected text");
    }
    out.push_back(c);
  }
  return out;
}

std::string_view requireAttribute(xml::Document const& doc, xml::NodeId id,
                                  std::string_view name) {
  auto v = doc.attribute(id, name);
  if (!v) {
    layoutError(doc, id, "missing attribute '" + std::string(name) + "'");
  }
  return *v;
}

void requireName(xml::Document const& doc, xml::NodeId id,
                 std::string_view name) {
  if (doc.kind(id) != xml::NodeKind::Element || doc.name(id) != name) {
    layoutError(doc, id, "expected element <" + std::string(name) + ">");
  }
}

void MeasureReader::initialize(std::vector<std::string> names) {
  _names = std::move(names);
  _decimal.assign(_names.size(), false);
  _initialized = true;
}

std::vector<Decimal> MeasureReader::read(xml::Document const& doc,
                                         xml::NodeId parent,
                                         std::vector<xml::NodeId> const& nodes,
                                         std::size_t first, std::size_t count) {
  if (!_initialized) {
    std::vector<std::string> names;
    for (std::size_t i = first; i < first + count; ++i) {
      names.emplace_back(doc.name(nodes[i]));
    }
    initialize(std::move(names));
  }
  if (count != _names.size()) {
    layoutError(doc, parent,
                "expected " + std::to_string(_names.size()) + " measures");
  }
  std::vector<Decimal> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    xml::NodeId n = nodes[first + i];
    if (doc.name(n) != _names[i]) {
      layoutError(doc, n, "expected measure <" + _names[i] + ">");
    }
    if (doc.node(n).attributeCount != 0) {
      layoutError(doc, n, "measure element has attributes");
    }
    std::string text = doc.stringValue(n);
    for (xml::NodeId c : doc.children(n)) {
      if (doc.kind(c) != xml::NodeKind::Text) {
        layoutError(doc, c, "measure element has element content");
      }
    }
    auto v = Decimal::parse(text, true);
    if (!v) {
      layoutError(doc, n, "non-numeric measure value '" + text + "'");
    }
    if (text.find_first_of(".,") != std::string::npos) {
      _decimal[i] = true;
    }
    values.push_back(*v);
  }
  return values;
}

std::vector<Decimal> MeasureReader::readAll(xml::Document const& doc,
                                            xml::NodeId parent) {
  auto nodes = elementChildren(doc, parent);
  return read(doc, parent, nodes, 0, nodes.size());
}

std::vector<MeasureSchema> MeasureReader::schema() const {
  std::vector<MeasureSchema> out;
  for (std::size_t i = 0; i < _names.size(); ++i) {
    out.push_back({_names[i], _decimal[i] ? MeasureKind::Decimal
                                          : MeasureKind::Integer});
  }
  return out;
}

std::string IdMinter::mint(std::string_view level) {
  std::string prefix(1, level.empty() ? 'm' : level[0]);
  for (;;) {
    std::string id = prefix + std::to_string(++_next);
    if (_used.insert(id).second) {
      return id;
    }
  }
}

std::string factNameFromRoot(std::string_view root) {
  if (root.size() > 1 && root.back() == 's') {
    root.remove_suffix(1);
  }
  return std::string(root);
}

void canonicalizeMembers(CubeInstance& instance) {
  for (std::size_t d = 0; d < instance.members.size() &&
                          d < instance.schema.dimensions.size();
       ++d) {
    DimensionSchema const& dim = instance.schema.dimensions[d];
    auto rank = [&](Member const& m) {
      auto it = std::find(dim.levels.begin(), dim.levels.end(), m.level);
      return dim.levels.end() - it;  // coarsest first
    };
    std::stable_sort(instance.members[d].begin(), instance.members[d].end(),
                     [&](Member const& a, Member const& b) {
                       return rank(a) < rank(b);
                     });
  }
}

}  // namespace detail
}  // namespace xocube::encoding

namespace xocube::encoding::detail {

LeafChains leafChains(cube::CubeInstance const& instance, std::size_t dim) {
  cube::MemberIndex index(instance);
  cube::DimensionSchema const& schema = instance.schema.dimensions.at(dim);
  LeafChains out;
  for (cube::Member const& m : instance.members.at(dim)) {
    if (m.level != schema.finestLevel()) {
      continue;
    }
    std::vector<cube::Member const*> chain;
    for (std::size_t l = 0; l < schema.levels.size(); ++l) {
      chain.push_back(&index.rollUp(dim, m.id, l));
    }
    out.emplace(m.id, std::move(chain));
  }
  return out;
}

std::string const& NamePathMembers::resolve(
    std::vector<std::string> const& coarsestFirst) {
  std::vector<std::string> prefix;
  std::string const* parent = nullptr;
  std::string const* id = nullptr;
  for (std::size_t i = 0; i < coarsestFirst.size(); ++i) {
    prefix.push_back(coarsestFirst[i]);
    auto it = _ids.find(prefix);
    if (it == _ids.end()) {
      std::string const& level = _dim.levels[_dim.levels.size() - 1 - i];
      cube::Member m;
      m.id = _minter.mint(level);
      m.name = coarsestFirst[i];
      m.level = level;
      if (parent != nullptr) {
        m.parent = *parent;
      }
      it = _ids.emplace(prefix, m.id).first;
      _members.push_back(std::move(m));
    }
    id = &it->second;
    parent = id;
  }
  return *id;
}

}  // namespace xocube::encoding::detail
