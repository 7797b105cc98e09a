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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xocube::cube {

enum class MeasureKind { Integer, Decimal };

struct MeasureSchema {
  std::string name;
  MeasureKind kind = MeasureKind::Integer;

  bool operator==(MeasureSchema const&) const = default;
};

struct DimensionSchema {
  std::string name;
  /// Level names, finest first, e.g. {"product", "category", "family"}.
  std::vector<std::string> levels;

  /// Throws UnknownLevel.
  std::size_t levelIndex(std::string_view level) const;
  std::string const& finestLevel() const { return levels.front(); }
  std::string const& coarsestLevel() const { return levels.back(); }

  bool operator==(DimensionSchema const&) const = default;
};

struct CubeSchema {
  std::string factName;
  std::vector<MeasureSchema> measures;
  std::vector<DimensionSchema> dimensions;

  /// Throws UnknownLevel for an unknown dimension name.
  std::size_t dimensionIndex(std::string_view dimension) const;
  /// Throws UnknownMeasure.
  std::size_t measureIndex(std::string_view measure) const;

  bool operator==(CubeSchema const&) const = default;
};

/// fact `order`, measures price (decimal) and quantity (integer),
/// dimensions customer [customer, country, continent] and
/// product [product, category, family].
CubeSchema runningExampleSchema();

struct Member {
  std::string id;
  std::string name;
  std::string level;
  /// Empty iff the member is at the coarsest level.
  std::optional<std::string> parent;

  bool operator==(Member const&) const = default;
};

/// Values are positional: `measures[i]` belongs to `schema.measures[i]` and
/// `leafRefs[d]` is a finest-level member id of `schema.dimensions[d]`.
struct FactRecord {
  std::vector<Decimal> measures;
  std::vector<std::string> leafRefs;

  bool operator==(FactRecord const&) const = default;
};

struct CubeInstance {
  CubeSchema schema;
  /// members[d] holds every member of dimension d.
  std::vector<std::vector<Member>> members;
  std::vector<FactRecord> facts;

  bool operator==(CubeInstance const&) const = default;
};

/// Id lookup and roll-up over the members of one instance. Holds pointers
/// into the instance, which must outlive it.
class MemberIndex {
 public:
  explicit MemberIndex(CubeInstance const& instance);

  Member const* find(std::size_t dimension, std::string_view id) const;
  /// Ancestor of `memberId` at `level` (levelIndex into the dimension's
  /// levels). Throws InvalidParam if the chain is broken.
  Member const& rollUp(std::size_t dimension, std::string_view memberId,
                       std::size_t level) const;

 private:
  CubeInstance const& _instance;
  std::vector<std::unordered_map<std::string_view, Member const*>> _byId;
};

enum class ViolationKind {
  DanglingRef,
  MultiParent,
  LevelSkip,
  MissingParent,
  DuplicateId,
  DuplicateName,
  NonLeafRef,
  UnknownLevel,
  MeasureArity,
  SchemaError,
};

std::string_view toString(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

/// One entry per violated invariant; empty when the instance is consistent.
/// Besides strictness and referential integrity this also rejects names
/// repeated within one level, since query results are keyed by name.
ValidationReport validate(CubeInstance const& instance);

/// SplitMix64. Fully specified, so generated datasets are identical on every
/// platform for a given seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : _state(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (_state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) {
        return r % bound;
      }
    }
  }

 private:
  std::uint64_t _state;
};

/// Deterministic synthetic instance. Every dimension gets `fanout` coarsest
/// members and `fanout` children per non-leaf member. Member ids are the
/// first letter of the level plus a global ordinal (`c42`, `p98`), names are
/// the capitalized level plus an ordinal within the level (`Country7`).
/// Each fact references uniformly drawn leaves; integer measures lie in
/// [1, 100], decimal measures in [0.01, 10000.00] with two digits.
/// Throws InvalidParam if fanout < 1.
CubeInstance generate(CubeSchema const& schema, std::size_t nFacts,
                      std::int64_t fanout, std::uint64_t seed);

}  // namespace xocube::cube
