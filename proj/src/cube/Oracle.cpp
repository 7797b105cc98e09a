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

#include "xocube/Errors.h"
#include "xocube/cube/GroupTable.h"

#include <sstream>

namespace xocube::cube {

LevelRef LevelRef::parse(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size() ||
      text.find('.', dot + 1) != std::string_view::npos) {
    throw InvalidParam("expected 'dimension.level', got '" +
                       std::string(text) + "'");
  }
  return {std::string(text.substr(0, dot)), std::string(text.substr(dot + 1))};
}

std::string_view toString(Aggregate a) noexcept {
  switch (a) {
    case Aggregate::Sum:
      return "SUM";
    case Aggregate::Count:
      return "COUNT";
    case Aggregate::Min:
      return "MIN";
    case Aggregate::Max:
      return "MAX";
    case Aggregate::Avg:
      return "AVG";
  }
  return "?";
}

Decimal GroupTable::total() const {
  Decimal sum;
  for (auto const& [key, value] : rows) {
    sum += value;
  }
  return sum;
}

namespace {
std::string keyString(std::vector<std::string> const& key) {
  std::string out = "(";
  for (std::size_t i = 0; i < key.size(); ++i) {
    out += (i ? ", " : "") + key[i];
  }
  return out + ")";
}
}  // namespace

std::string describeDifference(GroupTable const& expected,
                               GroupTable const& actual, std::size_t limit) {
  std::ostringstream out;
  std::size_t lines = 0;
  auto line = [&](std::string const& s) {
    if (lines++ < limit) {
      out << s << "\n";
    }
  };
  if (expected.keyLevels != actual.keyLevels) {
    line("key levels differ");
  }
  for (auto const& [key, value] : expected.rows) {
    auto it = actual.rows.find(key);
    if (it == actual.rows.end()) {
      line("missing " + keyString(key) + " = " + value.toString());
    } else if (!(it->second == value)) {
      line("value of " + keyString(key) + ": expected " + value.toString() +
           ", got " + it->second.toString());
    }
  }
  for (auto const& [key, value] : actual.rows) {
    if (!expected.rows.contains(key)) {
      line("unexpected " + keyString(key) + " = " + value.toString());
    }
  }
  if (lines > limit) {
    out << "... " << (lines - limit) << " more\n";
  }
  return out.str();
}

GroupTable bruteForceGroup(CubeInstance const& instance,
                           std::vector<LevelRef> const& keyLevels,
                           std::string_view measure, Aggregate aggregate) {
  if (aggregate != Aggregate::Sum) {
    throw Unsupported("aggregate " + std::string(toString(aggregate)) +
                      " is not supported");
  }
  CubeSchema const& schema = instance.schema;
  std::size_t measureIdx = schema.measureIndex(measure);

  struct KeyColumn {
    std::size_t dimension;
    // leaf id -> name of its ancestor at the key level
    std::unordered_map<std::string_view, std::string_view> names;
  };
  MemberIndex members(instance);
  std::vector<KeyColumn> columns;
  for (LevelRef const& ref : keyLevels) {
    std::size_t d = schema.dimensionIndex(ref.dimension);
    std::size_t level = schema.dimensions[d].levelIndex(ref.level);
    KeyColumn col{d, {}};
    std::string const& finest = schema.dimensions[d].finestLevel();
    for (Member const& m : instance.members[d]) {
      if (m.level == finest) {
        col.names.emplace(m.id, members.rollUp(d, m.id, level).name);
      }
    }
    columns.push_back(std::move(col));
  }

  GroupTable table;
  table.keyLevels = keyLevels;
  std::vector<std::string> key(columns.size());
  for (FactRecord const& fact : instance.facts) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      auto it = columns[c].names.find(fact.leafRefs.at(columns[c].dimension));
      if (it == columns[c].names.end()) {
        throw InvalidParam("fact references unknown leaf '" +
                           fact.leafRefs[columns[c].dimension] + "'");
      }
      key[c] = std::string(it->second);
    }
    table.rows[key] += fact.measures.at(measureIdx);
  }
  return table;
}

}  // namespace xocube::cube
