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

#include "xocube/cube/GroupTable.h"
#include "xocube/encoding/Encoders.h"
#include "xocube/query/Ast.h"
#include "xocube/query/Item.h"

#include <string>
#include <vector>

namespace xocube::olap {

/// Aggregate `measure` grouped by one level of each listed dimension.
struct OlapRequest {
  std::string measure = "quantity";
  cube::Aggregate aggregate = cube::Aggregate::Sum;
  std::vector<cube::LevelRef> keyLevels;

  /// "customer.country,product.category"
  std::string keysToString() const;
};

/// Throws UnknownLevel, UnknownMeasure, Unsupported (aggregate other than
/// SUM) or InvalidParam (no keys, two keys on one dimension).
void validate(OlapRequest const& request, cube::CubeSchema const& schema);

enum class QueryForm { Iterate, Grouped };

/// "iterate", "grouped"
std::string_view toString(QueryForm form) noexcept;
QueryForm parseQueryForm(std::string_view text);

/// Query text for `request` on documents in `model` layout. Iterate form
/// loops over every key combination and selects the matching facts;
/// grouped form derives the keys of each fact and groups them. Both return
/// one `<group>` per non-empty group, with a child per key level followed
/// by `<sum>`.
std::string compileText(OlapRequest const& request,
                        cube::CubeSchema const& schema,
                        encoding::ModelKind model, QueryForm form);

query::Query compile(OlapRequest const& request, cube::CubeSchema const& schema,
                     encoding::ModelKind model, QueryForm form);

/// Reads the `<group>` elements of a compiled query result. Throws
/// MalformedResult if an item is not a group, lacks a key child or `<sum>`,
/// or repeats a key tuple.
cube::GroupTable extractGroupTable(query::Sequence const& result,
                                   OlapRequest const& request);

}  // namespace xocube::olap
