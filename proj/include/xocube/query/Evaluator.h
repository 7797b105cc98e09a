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

#include "xocube/query/Ast.h"
#include "xocube/query/Item.h"
#include "xocube/query/ValueIndex.h"

namespace xocube::query {

struct EvalStats {
  std::size_t indexedSteps = 0;  // steps answered through the value index
  std::size_t scannedSteps = 0;  // predicate steps evaluated by scanning
};

/// Evaluates `query` against `docs`. With an index, predicate steps that
/// compare a relative path to a context-independent value are answered by
/// index probes when that is cheaper than scanning; results are identical
/// either way.
QueryResult evaluate(Query const& query, DocumentSet const& docs,
                     ValueIndex const* index = nullptr,
                     EvalStats* stats = nullptr);

}  // namespace xocube::query
