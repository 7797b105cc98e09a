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
#include "xocube/query/Ast.h"
#include "xocube/xml/Document.h"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace xocube::query {

struct NodeRef {
  xml::Document const* doc = nullptr;
  xml::NodeId id = xml::kNoNode;

  bool operator==(NodeRef const&) const = default;
};

/// Document order across documents: by document ordinal, then node id.
inline bool documentOrderLess(NodeRef const& a, NodeRef const& b) noexcept {
  if (a.doc != b.doc) {
    return a.doc->ordinal() < b.doc->ordinal();
  }
  return a.id < b.id;
}

using Item = std::variant<NodeRef, std::string, std::int64_t, Decimal, bool>;
using Sequence = std::vector<Item>;

inline bool isNode(Item const& item) noexcept {
  return std::holds_alternative<NodeRef>(item);
}

/// String value of an item (nodes are atomized as untyped text).
std::string atomize(Item const& item);
void appendAtomized(Item const& item, std::string& out);
std::vector<std::string> atomizeAll(Sequence const& seq);

/// Numeric value of an item, if it is numeric or numeric text.
std::optional<Decimal> numericValue(Item const& item);
/// Decimal value of `text` with surrounding whitespace ignored.
std::optional<Decimal> parseNumeric(std::string_view text);

/// The string value of `n` when it is stored contiguously (attribute, text,
/// empty element, element with a lone text child); nullopt otherwise.
std::optional<std::string_view> directStringValue(NodeRef n);
/// String value of an item, pointing into the document or the item when
/// possible; `scratch` holds it otherwise.
std::string_view atomView(Item const& item, std::string& scratch);

/// Effective boolean value. Throws TypeError for sequences of more than one
/// atomic value.
bool effectiveBooleanValue(Sequence const& seq);

/// The documents a query runs against; `/` and `//` start from each of them
/// in document order.
class DocumentSet {
 public:
  void add(xml::Document const& doc);
  std::vector<xml::Document const*> const& documents() const noexcept {
    return _docs;
  }
  bool empty() const noexcept { return _docs.empty(); }

 private:
  std::vector<xml::Document const*> _docs;
};

/// Items plus the documents built by element constructors they may point
/// into. Moving keeps the node references valid.
struct QueryResult {
  Sequence items;
  std::vector<std::unique_ptr<xml::Document>> constructed;

  /// One line per item: nodes serialized as XML, atomics as text.
  std::string serialize(bool pretty = false) const;
};

}  // namespace xocube::query
