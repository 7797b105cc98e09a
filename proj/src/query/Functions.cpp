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

#include "xocube/query/Functions.h"

#include "xocube/Errors.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace xocube::query {

namespace {

bool isTypedNumeric(Item const& item) noexcept {
  return std::holds_alternative<std::int64_t>(item) ||
         std::holds_alternative<Decimal>(item);
}

bool anyTypedNumeric(Sequence const& seq) {
  return std::any_of(seq.begin(), seq.end(), isTypedNumeric);
}

/// Length-prefixed concatenation, so distinct key tuples never collide.
void appendKeyPart(std::string_view part, std::string& key) {
  key += std::to_string(part.size());
  key.push_back(':');
  key += part;
}

}  // namespace

bool atomicEqual(Item const& a, Item const& b) {
  bool numA = isTypedNumeric(a);
  bool numB = isTypedNumeric(b);
  if (numA && numB) {
    return *numericValue(a) == *numericValue(b);
  }
  // untyped node content compared to a number is cast to a number
  if ((numA && isNode(b)) || (numB && isNode(a))) {
    auto va = numericValue(a);
    auto vb = numericValue(b);
    return va && vb && *va == *vb;
  }
  return atomize(a) == atomize(b);
}

std::optional<bool> valueCompare(Sequence const& lhs, Sequence const& rhs,
                                 CompOp op) {
  if (lhs.empty() || rhs.empty()) {
    return std::nullopt;
  }
  if (lhs.size() > 1 || rhs.size() > 1) {
    throw TypeError("value comparison operand is a sequence of " +
                    std::to_string(std::max(lhs.size(), rhs.size())) +
                    " items");
  }
  bool equal = atomicEqual(lhs.front(), rhs.front());
  return op == CompOp::ValueNe ? !equal : equal;
}

bool generalCompare(Sequence const& lhs, Sequence const& rhs, CompOp op) {
  if (lhs.empty() || rhs.empty()) {
    return false;
  }
  bool wantEqual = op == CompOp::GeneralEq || op == CompOp::ValueEq;
  if (anyTypedNumeric(lhs) || anyTypedNumeric(rhs)) {
    for (auto const& a : lhs) {
      for (auto const& b : rhs) {
        if (atomicEqual(a, b) == wantEqual) {
          return true;
        }
      }
    }
    return false;
  }
  std::vector<std::string> la = atomizeAll(lhs);
  std::vector<std::string> ra = atomizeAll(rhs);
  if (!wantEqual) {
    // some pair differs unless every value on both sides is the same
    std::string_view v = la.front();
    auto same = [&](std::string const& s) { return s == v; };
    return !(std::all_of(la.begin(), la.end(), same) &&
             std::all_of(ra.begin(), ra.end(), same));
  }
  if (la.size() * ra.size() <= 32) {
    for (auto const& a : la) {
      if (std::find(ra.begin(), ra.end(), a) != ra.end()) {
        return true;
      }
    }
    return false;
  }
  auto& small = la.size() < ra.size() ? la : ra;
  auto& large = la.size() < ra.size() ? ra : la;
  std::unordered_set<std::string_view> set(small.begin(), small.end());
  return std::any_of(large.begin(), large.end(),
                     [&](std::string const& s) { return set.contains(s); });
}

namespace {

struct ViewHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

}  // namespace

Sequence distinctValues(Sequence const& seq) {
  Sequence out;
  std::unordered_set<std::string, ViewHash, std::equal_to<>> strings;
  std::unordered_set<std::string> numbers;
  std::string scratch;
  for (auto const& item : seq) {
    if (isTypedNumeric(item)) {
      if (numbers.insert(numericValue(item)->normalized().toString()).second) {
        out.push_back(item);
      }
      continue;
    }
    std::string_view s = atomView(item, scratch);
    if (strings.find(s) != strings.end()) {
      continue;
    }
    strings.emplace(s);
    if (std::holds_alternative<bool>(item)) {
      out.push_back(item);
    } else {
      out.push_back(std::string(s));
    }
  }
  return out;
}

Item sum(Sequence const& seq) {
  Decimal total;
  bool allIntegers = true;
  std::string scratch;
  for (auto const& item : seq) {
    if (auto const* i = std::get_if<std::int64_t>(&item)) {
      total += Decimal::fromInteger(*i);
      continue;
    }
    if (auto const* d = std::get_if<Decimal>(&item)) {
      total += *d;
      allIntegers = false;
      continue;
    }
    if (std::holds_alternative<bool>(item)) {
      throw DynamicError("sum() of a boolean value");
    }
    std::string_view text = atomView(item, scratch);
    auto value = parseNumeric(text);
    if (!value) {
      throw DynamicError("sum() of non-numeric value '" + std::string(text) +
                         "'");
    }
    if (text.find('.') != std::string_view::npos) {
      allIntegers = false;
    }
    total += *value;
  }
  if (allIntegers) {
    return total.rescaled(0).units();
  }
  return total;
}

std::vector<std::vector<Sequence>> groupTupleRows(
    std::vector<std::vector<Sequence>> const& rows,
    std::vector<std::size_t> const& keyColumns) {
  std::vector<std::vector<Sequence>> groups;
  std::unordered_map<std::string, std::size_t> groupOf;
  std::vector<std::string> atoms(keyColumns.size());
  std::string key;
  for (auto const& row : rows) {
    key.clear();
    for (std::size_t k = 0; k < keyColumns.size(); ++k) {
      Sequence const& value = row[keyColumns[k]];
      if (value.size() != 1) {
        throw TypeError("grouping key must be a single item, got " +
                        std::to_string(value.size()));
      }
      atoms[k] = atomize(value.front());
      appendKeyPart(atoms[k], key);
    }
    auto [it, inserted] = groupOf.try_emplace(key, groups.size());
    if (inserted) {
      groups.emplace_back(row.size());
      for (std::size_t k = 0; k < keyColumns.size(); ++k) {
        groups.back()[keyColumns[k]] = Sequence{atoms[k]};
      }
    }
    auto& group = groups[it->second];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::find(keyColumns.begin(), keyColumns.end(), c) !=
          keyColumns.end()) {
        continue;
      }
      group[c].insert(group[c].end(), row[c].begin(), row[c].end());
    }
  }
  return groups;
}

TupleStream groupTuples(TupleStream const& input,
                        std::vector<std::string> const& keys) {
  std::vector<std::size_t> columns;
  for (auto const& k : keys) {
    auto it = std::find(input.variables.rbegin(), input.variables.rend(), k);
    if (it == input.variables.rend()) {
      throw UnboundVariable(k);
    }
    columns.push_back(
        std::size_t(std::distance(it, input.variables.rend()) - 1));
  }
  TupleStream out;
  out.variables = input.variables;
  out.tuples = groupTupleRows(input.tuples, columns);
  return out;
}

}  // namespace xocube::query
