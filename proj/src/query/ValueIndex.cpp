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

#include "xocube/query/ValueIndex.h"

#include <algorithm>

namespace xocube::query {

std::span<xml::NodeId const> ValueIndex::Bucket::find(
    std::string_view value) const {
  auto it = _nodes.find(value);
  if (it == _nodes.end()) {
    return {};
  }
  return it->second;
}

ValueIndex ValueIndex::build(DocumentSet const& docs,
                             std::vector<IndexTarget> const& targets) {
  ValueIndex index;
  index._targets = targets;
  index._docs = docs.documents();
  for (xml::Document const* doc : docs.documents()) {
    auto& perDoc = index._buckets[doc];
    for (auto const& target : targets) {
      xml::Symbol sym = doc->symbol(target.name);
      if (sym == xml::kNoSymbol) {
        continue;
      }
      auto nodes = target.kind == xml::NodeKind::Attribute
                       ? doc->attributesNamed(sym)
                       : doc->elementsNamed(sym);
      if (nodes.empty()) {
        continue;
      }
      Bucket& bucket = perDoc[key(sym, target.kind)];
      std::string value;
      // name lists are in document order, so each vector stays sorted
      for (xml::NodeId id : nodes) {
        value.clear();
        doc->appendStringValue(id, value);
        bucket._nodes[value].push_back(id);
        ++index._entries;
      }
    }
  }
  return index;
}

bool ValueIndex::covers(std::string_view name, xml::NodeKind kind) const {
  return std::any_of(_targets.begin(), _targets.end(), [&](auto const& t) {
    return t.kind == kind && t.name == name;
  });
}

ValueIndex::Bucket const* ValueIndex::bucket(xml::Document const& doc,
                                             xml::Symbol name,
                                             xml::NodeKind kind) const {
  auto d = _buckets.find(&doc);
  if (d == _buckets.end() || name == xml::kNoSymbol) {
    return nullptr;
  }
  auto b = d->second.find(key(name, kind));
  return b == d->second.end() ? nullptr : &b->second;
}

std::vector<NodeRef> ValueIndex::lookup(std::string_view name,
                                        xml::NodeKind kind,
                                        std::string_view value) const {
  std::vector<NodeRef> out;
  for (xml::Document const* doc : _docs) {
    if (Bucket const* b = bucket(*doc, doc->symbol(name), kind)) {
      for (xml::NodeId id : b->find(value)) {
        out.push_back(NodeRef{doc, id});
      }
    }
  }
  return out;
}

}  // namespace xocube::query
