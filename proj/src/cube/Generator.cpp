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
#include "xocube/cube/Cube.h"

#include <cctype>

namespace xocube::cube {

namespace {

std::string capitalized(std::string const& s) {
  std::string out = s;
  if (!out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

}  // namespace

CubeInstance generate(CubeSchema const& schema, std::size_t nFacts,
                      std::int64_t fanout, std::uint64_t seed) {
  if (fanout < 1) {
    throw InvalidParam("fanout must be >= 1, got " + std::to_string(fanout));
  }
  auto const width = static_cast<std::size_t>(fanout);

  CubeInstance instance;
  instance.schema = schema;
  instance.members.resize(schema.dimensions.size());

  std::size_t ordinal = 0;
  std::vector<std::vector<std::size_t>> leaves(schema.dimensions.size());
  for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
    DimensionSchema const& dim = schema.dimensions[d];
    auto& members = instance.members[d];
    // indices into `members` of the previous (coarser) level
    std::vector<std::size_t> parents;
    for (std::size_t l = dim.levels.size(); l-- > 0;) {
      std::string const& level = dim.levels[l];
      std::string prefix(1, level.empty() ? 'm' : level[0]);
      std::string label = capitalized(level);
      std::vector<std::size_t> current;
      std::size_t count = parents.empty() ? width : parents.size() * width;
      for (std::size_t i = 0; i < count; ++i) {
        Member m;
        m.id = prefix + std::to_string(++ordinal);
        m.name = label + std::to_string(i + 1);
        m.level = level;
        if (!parents.empty()) {
          m.parent = members[parents[i / width]].id;
        }
        current.push_back(members.size());
        members.push_back(std::move(m));
      }
      parents = std::move(current);
    }
    leaves[d] = std::move(parents);
  }

  SplitMix64 rng(seed);
  instance.facts.reserve(nFacts);
  for (std::size_t f = 0; f < nFacts; ++f) {
    FactRecord fact;
    fact.leafRefs.reserve(schema.dimensions.size());
    for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
      std::size_t pick = leaves[d][rng.below(leaves[d].size())];
      fact.leafRefs.push_back(instance.members[d][pick].id);
    }
    fact.measures.reserve(schema.measures.size());
    for (MeasureSchema const& m : schema.measures) {
      if (m.kind == MeasureKind::Integer) {
        fact.measures.push_back(
            Decimal::fromInteger(1 + static_cast<std::int64_t>(rng.below(100))));
      } else {
        fact.measures.emplace_back(
            1 + static_cast<std::int64_t>(rng.below(1000000)), 2);
      }
    }
    instance.facts.push_back(std::move(fact));
  }
  return instance;
}

}  // namespace xocube::cube
