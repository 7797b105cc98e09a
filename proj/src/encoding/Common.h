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

#pragma once

#include "xocube/encoding/Encoders.h"

#include <map>
#include <set>
#include <unordered_map>
#include <string>
#include <vector>

namespace xocube::encoding::detail {

std::string formatMeasure(Decimal value, cube::MeasureKind kind);

/// `/orders/order[3]/price` style location of a node.
std::string describeNode(xml::Document const& doc, xml::NodeId id);

[[noreturn]] void layoutError(xml::Document const& doc, xml::NodeId id,
                              std::string const& what);

/// Element children of `id`; text children other than whitespace are an
/// error.
std::vector<xml::NodeId> elementChildren(xml::Document const& doc,
                                         xml::NodeId id);

std::string_view requireAttribute(xml::Document const& doc, xml::NodeId id,
                                  std::string_view name);

void requireName(xml::Document const& doc, xml::NodeId id,
                 std::string_view name);

/// Collects measure elements across facts: the first fact fixes names and
/// order, later facts must repeat them. Kinds are inferred at the end.
class MeasureReader {
 public:
  /// Reads `count` measure elements from `nodes` (children of `parent`)
  /// starting at `first`.
  std::vector<Decimal> read(xml::Document const& doc, xml::NodeId parent,
                            std::vector<xml::NodeId> const& nodes,
                            std::size_t first, std::size_t count);
  /// Reads every child of `parent` as a measure.
  std::vector<Decimal> readAll(xml::Document const& doc, xml::NodeId parent);

  bool initialized() const noexcept { return _initialized; }
  void initialize(std::vector<std::string> names);
  std::vector<cube::MeasureSchema> schema() const;

 private:
  bool _initialized = false;
  std::vector<std::string> _names;
  std::vector<bool> _decimal;
};

/// Mints ids with the generator's scheme (level initial + ordinal), skipping
/// ids already in use.
class IdMinter {
 public:
  void reserve(std::string const& id) { _used.insert(id); }
  std::string mint(std::string_view level);

 private:
  std::set<std::string> _used;
  std::size_t _next = 0;
};

/// The fact element name implied by a facts root (`orders` -> `order`).
std::string factNameFromRoot(std::string_view root);

/// Orders each dimension's members coarsest level first, keeping the
/// relative order within a level.
void canonicalizeMembers(cube::CubeInstance& instance);

}  // namespace xocube::encoding::detail

namespace xocube::encoding::detail {

/// leaf id -> members from the leaf up to the coarsest level
using LeafChains =
    std::unordered_map<std::string_view, std::vector<cube::Member const*>>;
LeafChains leafChains(cube::CubeInstance const& instance, std::size_t dim);

/// Builds members from name paths (coarsest first) as the flat layouts
/// describe them.
class NamePathMembers {
 public:
  NamePathMembers(cube::DimensionSchema const& dim, IdMinter& minter)
      : _dim(dim), _minter(minter) {}

  /// `coarsestFirst` holds one name per level; returns the leaf id.
  std::string const& resolve(std::vector<std::string> const& coarsestFirst);
  std::vector<cube::Member> take() { return std::move(_members); }

 private:
  cube::DimensionSchema const& _dim;
  IdMinter& _minter;
  std::map<std::vector<std::string>, std::string> _ids;
  std::vector<cube::Member> _members;
};

}  // namespace xocube::encoding::detail
