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

namespace xocube::testing {

/// The one-order cube: Jim (BE, EU) bought 3 Tables (Kitchen, Furniture)
/// for 125.67.
inline cube::CubeInstance singleOrder() {
  cube::CubeInstance c;
  c.schema = cube::runningExampleSchema();
  c.members = {
      {{"c1", "EU", "continent", std::nullopt},
       {"c7", "BE", "country", "c1"},
       {"c42", "Jim", "customer", "c7"}},
      {{"fam1", "Furniture", "family", std::nullopt},
       {"cat77", "Kitchen", "category", "fam1"},
       {"p98", "Table", "product", "cat77"}},
  };
  c.facts = {{{Decimal(12567, 2), Decimal::fromInteger(3)}, {"c42", "p98"}}};
  return c;
}

}  // namespace xocube::testing
