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

#include "xocube/bench/Bench.h"

namespace xocube::bench {

std::vector<SuiteEntry> defaultSuite() {
  using Keys = std::vector<cube::LevelRef>;
  cube::LevelRef const continent{"customer", "continent"};
  cube::LevelRef const country{"customer", "country"};
  cube::LevelRef const family{"product", "family"};
  cube::LevelRef const category{"product", "category"};

  std::vector<Keys> keys = {{continent},           {family},
                            {country},             {category},
                            {continent, family},   {continent, category},
                            {country, family},     {country, category}};
  std::vector<SuiteEntry> suite;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    SuiteEntry entry;
    entry.id = "q" + std::to_string(i + 1);
    entry.request.keyLevels = std::move(keys[i]);
    suite.push_back(std::move(entry));
  }
  return suite;
}

std::vector<query::IndexTarget> defaultIndexTargets(
    cube::CubeSchema const& schema) {
  std::vector<query::IndexTarget> targets;
  for (char const* name : {"ref", "id", "toNode", "node", "name"}) {
    targets.push_back({name, xml::NodeKind::Attribute});
  }
  for (auto const& dimension : schema.dimensions) {
    for (auto const& level : dimension.levels) {
      targets.push_back({level, xml::NodeKind::Element});
    }
  }
  return targets;
}

}  // namespace xocube::bench
