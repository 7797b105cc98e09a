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

#include "xocube/Decimal.h"
#include "xocube/cube/Cube.h"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace xocube::cube {

struct LevelRef {
  std::string dimension;
  std::string level;

  /// "dimension.level"
  std::string toString() const { return dimension + "." + level; }
  /// Parses "dimension.level"; throws InvalidParam.
  static LevelRef parse(std::string_view text);

  auto operator<=>(LevelRef const&) const = default;
};

enum class Aggregate { Sum, Count, Min, Max, Avg };

std::string_view toString(Aggregate a) noexcept;

/// Query result normalized to key tuple (member names, in `keyLevels`
/// order) -> aggregate value.
struct GroupTable {
  std::vector<LevelRef> keyLevels;
  std::map<std::vector<std::string>, Decimal> rows;

  Decimal total() const;
  bool operator==(GroupTable const&) const = default;
};

/// Human-readable diff (at most `limit` lines); empty when equal.
std::string describeDifference(GroupTable const& expected,
                               GroupTable const& actual,
                               std::size_t limit = 10);

/// Reference grouping computed directly on the canonical instance: every
/// fact's leaves are rolled up to the key levels and facts sharing a key
/// tuple are summed. Empty groups do not appear.
/// Throws UnknownLevel / UnknownMeasure, Unsupported for non-SUM aggregates.
GroupTable bruteForceGroup(CubeInstance const& instance,
                           std::vector<LevelRef> const& keyLevels,
                           std::string_view measure,
                           Aggregate aggregate = Aggregate::Sum);

}  // namespace xocube::cube
