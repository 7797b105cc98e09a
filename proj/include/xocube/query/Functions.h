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

#include "xocube/query/Item.h"

#include <optional>
#include <string>
#include <vector>

namespace xocube::query {

/// `eq`/`ne`: nullopt if either operand is empty; TypeError if either has
/// more than one item.
std::optional<bool> valueCompare(Sequence const& lhs, Sequence const& rhs,
                                 CompOp op);

/// `=`/`!=`: true if some pair of atomized items satisfies the operator.
bool generalCompare(Sequence const& lhs, Sequence const& rhs, CompOp op);

/// Two atomic values compare numerically when both are numeric, otherwise
/// by their string values.
bool atomicEqual(Item const& a, Item const& b);

/// Atomized values, duplicates removed, first occurrence order.
Sequence distinctValues(Sequence const& seq);

/// Integer when every value is an integer, otherwise an exact decimal.
/// Empty input sums to 0. Throws DynamicError on non-numeric values.
Item sum(Sequence const& seq);

/// Variable bindings of a FLWOR tuple stream.
struct TupleStream {
  std::vector<std::string> variables;
  std::vector<std::vector<Sequence>> tuples;
};

/// Groups tuples by the atomized values of `keys`. In each output tuple the
/// key variables hold their single atomized value and every other variable
/// holds the concatenation of its values across the group. Groups are
/// ordered by first occurrence. Throws TypeError if a key is not a single
/// item.
TupleStream groupTuples(TupleStream const& input,
                        std::vector<std::string> const& keys);

/// Column-index form used by the evaluator.
std::vector<std::vector<Sequence>> groupTupleRows(
    std::vector<std::vector<Sequence>> const& rows,
    std::vector<std::size_t> const& keyColumns);

}  // namespace xocube::query
