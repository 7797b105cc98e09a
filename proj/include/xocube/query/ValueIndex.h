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

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xocube::query {

struct IndexTarget {
  std::string name;
  xml::NodeKind kind = xml::NodeKind::Attribute;
};

/// Maps the string value of selected element/attribute names to the nodes
/// carrying it.
class ValueIndex {
 public:
  class Bucket {
   public:
    std::span<xml::NodeId const> find(std::string_view value) const;

   private:
    friend class ValueIndex;
    struct Hash {
      using is_transparent = void;
      std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
      }
    };
    std::unordered_map<std::string, std::vector<xml::NodeId>, Hash,
                       std::equal_to<>>
        _nodes;
  };

  static ValueIndex build(DocumentSet const& docs,
                          std::vector<IndexTarget> const& targets);

  bool covers(std::string_view name, xml::NodeKind kind) const;

  /// nullptr when the document has no node of that name.
  Bucket const* bucket(xml::Document const& doc, xml::Symbol name,
                       xml::NodeKind kind) const;

  /// Nodes across all indexed documents, in document order.
  std::vector<NodeRef> lookup(std::string_view name, xml::NodeKind kind,
                              std::string_view value) const;

  std::size_t entryCount() const noexcept { return _entries; }

 private:
  static std::uint64_t key(xml::Symbol name, xml::NodeKind kind) {
    return (std::uint64_t(name) << 8) | std::uint64_t(kind);
  }

  std::vector<IndexTarget> _targets;
  std::vector<xml::Document const*> _docs;
  std::unordered_map<xml::Document const*,
                     std::unordered_map<std::uint64_t, Bucket>>
      _buckets;
  std::size_t _entries = 0;
};

}  // namespace xocube::query
