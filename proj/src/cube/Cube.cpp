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

#include "xocube/cube/Cube.h"

#include "xocube/Errors.h"

#include <set>
#include <unordered_set>

namespace xocube::cube {

std::size_t DimensionSchema::levelIndex(std::string_view level) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] == level) {
      return i;
    }
  }
  throw UnknownLevel("dimension '" + name + "' has no level '" +
                     std::string(level) + "'");
}

std::size_t CubeSchema::dimensionIndex(std::string_view dimension) const {
  for (std::size_t i = 0; i < dimensions.size(); ++i) {
    if (dimensions[i].name == dimension) {
      return i;
    }
  }
  throw UnknownLevel("unknown dimension '" + std::string(dimension) + "'");
}

std::size_t CubeSchema::measureIndex(std::string_view measure) const {
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (measures[i].name == measure) {
      return i;
    }
  }
  throw UnknownMeasure("unknown measure '" + std::string(measure) + "'");
}

CubeSchema runningExampleSchema() {
  CubeSchema s;
  s.factName = "order";
  // listing order of the running example: price before quantity
  s.measures = {{"price", MeasureKind::Decimal},
                {"quantity", MeasureKind::Integer}};
  s.dimensions = {{"customer", {"customer", "country", "continent"}},
                  {"product", {"product", "category", "family"}}};
  return s;
}

MemberIndex::MemberIndex(CubeInstance const& instance) : _instance(instance) {
  _byId.resize(instance.members.size());
  for (std::size_t d = 0; d < instance.members.size(); ++d) {
    for (Member const& m : instance.members[d]) {
      _byId[d].emplace(m.id, &m);
    }
  }
}

Member const* MemberIndex::find(std::size_t dimension,
                                std::string_view id) const {
  if (dimension >= _byId.size()) {
    return nullptr;
  }
  auto it = _byId[dimension].find(id);
  return it == _byId[dimension].end() ? nullptr : it->second;
}

Member const& MemberIndex::rollUp(std::size_t dimension,
                                  std::string_view memberId,
                                  std::size_t level) const {
  DimensionSchema const& dim = _instance.schema.dimensions.at(dimension);
  Member const* m = find(dimension, memberId);
  if (m == nullptr) {
    throw InvalidParam("unknown member '" + std::string(memberId) + "'");
  }
  // bounded by the number of levels, so a cyclic parent chain terminates
  for (std::size_t hops = 0; hops <= dim.levels.size(); ++hops) {
    if (m->level == dim.levels[level]) {
      return *m;
    }
    if (!m->parent) {
      break;
    }
    m = find(dimension, *m->parent);
    if (m == nullptr) {
      break;
    }
  }
  throw InvalidParam("member '" + std::string(memberId) +
                     "' does not roll up to level '" + dim.levels[level] +
                     "'");
}

std::string_view toString(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::DanglingRef:
      return "dangling ref";
    case ViolationKind::MultiParent:
      return "multi-parent";
    case ViolationKind::LevelSkip:
      return "level skip";
    case ViolationKind::MissingParent:
      return "missing parent";
    case ViolationKind::DuplicateId:
      return "duplicate id";
    case ViolationKind::DuplicateName:
      return "duplicate name";
    case ViolationKind::NonLeafRef:
      return "non-leaf ref";
    case ViolationKind::UnknownLevel:
      return "unknown level";
    case ViolationKind::MeasureArity:
      return "measure arity";
    case ViolationKind::SchemaError:
      return "schema error";
  }
  return "unknown";
}

namespace {

void checkSchema(CubeSchema const& schema, ValidationReport& report) {
  auto add = [&](std::string msg) {
    report.push_back({ViolationKind::SchemaError, std::move(msg)});
  };
  std::set<std::string> measureNames;
  for (MeasureSchema const& m : schema.measures) {
    if (!measureNames.insert(m.name).second) {
      add("duplicate measure '" + m.name + "'");
    }
  }
  std::set<std::string> dimNames;
  std::set<std::string> allLevels;
  for (DimensionSchema const& d : schema.dimensions) {
    if (!dimNames.insert(d.name).second) {
      add("duplicate dimension '" + d.name + "'");
    }
    if (d.levels.empty()) {
      add("dimension '" + d.name + "' has no levels");
    }
    for (std::string const& l : d.levels) {
      // the XML layouts address levels by element name across dimensions
      if (!allLevels.insert(l).second) {
        add("level name '" + l + "' is not unique");
      }
    }
  }
}

}  // namespace

ValidationReport validate(CubeInstance const& instance) {
  ValidationReport report;
  CubeSchema const& schema = instance.schema;
  checkSchema(schema, report);
  if (instance.members.size() != schema.dimensions.size()) {
    report.push_back({ViolationKind::SchemaError,
                      "member sets do not match the dimension count"});
    return report;
  }

  for (std::size_t d = 0; d < schema.dimensions.size(); ++d) {
    DimensionSchema const& dim = schema.dimensions[d];
    std::unordered_map<std::string, Member const*> byId;
    std::set<std::pair<std::string, std::string>> names;
    for (Member const& m : instance.members[d]) {
      auto [it, inserted] = byId.emplace(m.id, &m);
      if (!inserted) {
        bool sameParent = it->second->parent == m.parent;
        report.push_back(
            {sameParent ? ViolationKind::DuplicateId
                        : ViolationKind::MultiParent,
             "member '" + m.id + "' of dimension '" + dim.name + "'" +
                 (sameParent ? " is declared twice"
                             : " has more than one parent")});
      }
      if (!names.emplace(m.level, m.name).second) {
        report.push_back({ViolationKind::DuplicateName,
                          "name '" + m.name + "' repeated at level '" +
                              m.level + "'"});
      }
    }
    for (Member const& m : instance.members[d]) {
      std::size_t level = 0;
      try {
        level = dim.levelIndex(m.level);
      } catch (UnknownLevel const&) {
        report.push_back({ViolationKind::UnknownLevel,
                          "member '" + m.id + "' has unknown level '" +
                              m.level + "'"});
        continue;
      }
      bool coarsest = level + 1 == dim.levels.size();
      if (coarsest) {
        if (m.parent) {
          report.push_back({ViolationKind::LevelSkip,
                            "coarsest member '" + m.id + "' has a parent"});
        }
        continue;
      }
      if (!m.parent) {
        report.push_back({ViolationKind::MissingParent,
                          "member '" + m.id + "' has no parent"});
        continue;
      }
      auto pit = byId.find(*m.parent);
      if (pit == byId.end()) {
        report.push_back({ViolationKind::DanglingRef,
                          "member '" + m.id + "' references unknown parent '" +
                              *m.parent + "'"});
      } else if (pit->second->level != dim.levels[level + 1]) {
        report.push_back({ViolationKind::LevelSkip,
                          "parent of '" + m.id + "' is at level '" +
                              pit->second->level + "', expected '" +
                              dim.levels[level + 1] + "'"});
      }
    }

    for (std::size_t f = 0; f < instance.facts.size(); ++f) {
      FactRecord const& fact = instance.facts[f];
      if (fact.leafRefs.size() != schema.dimensions.size()) {
        if (d == 0) {
          report.push_back({ViolationKind::DanglingRef,
                            "fact " + std::to_string(f) +
                                " does not reference every dimension"});
        }
        continue;
      }
      std::string const& ref = fact.leafRefs[d];
      auto it = byId.find(ref);
      if (it == byId.end()) {
        report.push_back({ViolationKind::DanglingRef,
                          "fact " + std::to_string(f) +
                              " references unknown id '" + ref + "'"});
      } else if (it->second->level != dim.finestLevel()) {
        report.push_back({ViolationKind::NonLeafRef,
                          "fact " + std::to_string(f) + " references '" + ref +
                              "' at level '" + it->second->level + "'"});
      }
    }
  }

  for (std::size_t f = 0; f < instance.facts.size(); ++f) {
    FactRecord const& fact = instance.facts[f];
    if (fact.measures.size() != schema.measures.size()) {
      report.push_back({ViolationKind::MeasureArity,
                        "fact " + std::to_string(f) + " has " +
                            std::to_string(fact.measures.size()) +
                            " measure values"});
      continue;
    }
    for (std::size_t m = 0; m < fact.measures.size(); ++m) {
      if (schema.measures[m].kind == MeasureKind::Integer &&
          !fact.measures[m].isInteger()) {
        report.push_back({ViolationKind::MeasureArity,
                          "fact " + std::to_string(f) + " has non-integer " +
                              schema.measures[m].name});
      }
    }
  }
  return report;
}

}  // namespace xocube::cube
