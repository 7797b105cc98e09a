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

#include "xocube/cube/Cube.h"
#include "xocube/xml/Document.h"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace xocube::encoding {

enum class ModelKind { Flat, FlatNested, Hierarchical, XCube };

inline constexpr std::array<ModelKind, 4> kAllModels = {
    ModelKind::Flat, ModelKind::FlatNested, ModelKind::Hierarchical,
    ModelKind::XCube};

/// "flat", "flat-nested", "hier", "xcube"
std::string_view toString(ModelKind model) noexcept;
/// Accepts the names above plus "hierarchical"; throws InvalidParam.
ModelKind parseModelKind(std::string_view text);

/// A cube in one XML layout. Hierarchical and XCube keep dimensions in a
/// separate document; the flat layouts embed them in every fact.
struct EncodedDataset {
  ModelKind model = ModelKind::Flat;
  xml::Document factsDoc;
  std::optional<xml::Document> dimsDoc;
};

// Fixed element names of the layouts.
inline constexpr std::string_view kDimensionsRoot = "dimensions";
inline constexpr std::string_view kCubeRoot = "cube";

/// `order` -> `orders`
std::string factsRootName(cube::CubeSchema const& schema);
/// `customer` -> `customer_dimension`
std::string dimensionWrapperName(std::string_view dimension);
/// `customer` -> `customers`, the cell-side dimension id in XCube.
std::string xcubeDimensionId(std::string_view dimension);

/// <orders><order><price>125.67</price><quantity>3</quantity>
///   <customer_dimension><customer>Jim</customer><country>BE</country>
///   <continent>EU</continent></customer_dimension>...</order></orders>
EncodedDataset encodeFlat(cube::CubeInstance const& instance);
/// Like flat, but each `<D_dimension>` wraps a finest-to-coarsest chain
/// <product name="Table"><category name="Kitchen"><family name="Furniture"/>
/// </category></product>.
EncodedDataset encodeFlatNested(cube::CubeInstance const& instance);
/// Facts: <orders><order>measures<customer ref="c42"/><product ref="p98"/>
/// </order></orders>. Dimensions: <dimensions><product_dimension>
/// <family name=".." id=".."><category ...><product name="Table" id="p98"/>
/// coarsest level outermost; every member carries its id.
EncodedDataset encodeHierarchical(cube::CubeInstance const& instance);
/// Dimensions: <dimensions> with one <level id="L"> per level (coarsest first
/// per dimension) holding <node id name> elements; non-coarsest nodes carry
/// <rollUp toNode="PARENT" level="PARENTLEVEL"/>. Facts: <cube fact="order"><cell>
/// <dimension id="customers" node="c42"/>...<fact>measures</fact></cell>.
EncodedDataset encodeXCube(cube::CubeInstance const& instance);
EncodedDataset encode(cube::CubeInstance const& instance, ModelKind model);

/// Inverse codecs. The schema is recovered from the documents (measure kind
/// is decimal when a value has a fractional separator; `,` is accepted).
/// Flat layouts do not store ids: fresh ids are minted per distinct name
/// path. Throws LayoutError naming the offending node.
cube::CubeInstance decodeFlat(EncodedDataset const& dataset);
cube::CubeInstance decodeFlatNested(EncodedDataset const& dataset);
cube::CubeInstance decodeHierarchical(EncodedDataset const& dataset);
cube::CubeInstance decodeXCube(EncodedDataset const& dataset);
cube::CubeInstance decode(EncodedDataset const& dataset);

/// A fact with its dimension references replaced by name paths
/// (finest to coarsest), which is all a flat layout preserves.
struct NamePathFact {
  std::vector<Decimal> measures;
  std::vector<std::vector<std::string>> paths;

  bool operator==(NamePathFact const&) const = default;
};

std::vector<NamePathFact> namePathFacts(cube::CubeInstance const& instance);

/// Round-trip equivalence for `model`: exact (schema, members, facts; member
/// order compared level by level) for Hierarchical/XCube, schema plus
/// name-path facts for the flat layouts.
bool equivalent(cube::CubeInstance const& original,
                cube::CubeInstance const& decoded, ModelKind model);

}  // namespace xocube::encoding
