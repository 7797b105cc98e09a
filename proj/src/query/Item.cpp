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

#include "xocube/query/Item.h"

#include "xocube/Errors.h"

#include <algorithm>

namespace xocube::query {

void appendAtomized(Item const& item, std::string& out) {
  std::visit(
      [&](auto const& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NodeRef>) {
          v.doc->appendStringValue(v.id, out);
        } else if constexpr (std::is_same_v<T, std::string>) {
          out += v;
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          out += std::to_string(v);
        } else if constexpr (std::is_same_v<T, Decimal>) {
          out += v.toString();
        } else {
          out += v ? "true" : "false";
        }
      },
      item);
}

std::string atomize(Item const& item) {
  if (auto const* s = std::get_if<std::string>(&item)) {
    return *s;
  }
  std::string out;
  appendAtomized(item, out);
  return out;
}

std::vector<std::string> atomizeAll(Sequence const& seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (auto const& item : seq) {
    out.push_back(atomize(item));
  }
  return out;
}

std::optional<Decimal> numericValue(Item const& item) {
  if (auto const* i = std::get_if<std::int64_t>(&item)) {
    return Decimal::fromInteger(*i);
  }
  if (auto const* d = std::get_if<Decimal>(&item)) {
    return *d;
  }
  if (std::holds_alternative<bool>(item)) {
    return std::nullopt;
  }
  std::string scratch;
  return parseNumeric(atomView(item, scratch));
}

std::optional<Decimal> parseNumeric(std::string_view text) {
  auto const ws = " \t\r\n";
  std::size_t b = text.find_first_not_of(ws);
  if (b == std::string_view::npos) {
    return std::nullopt;
  }
  return Decimal::parse(text.substr(b, text.find_last_not_of(ws) - b + 1));
}

std::optional<std::string_view> directStringValue(NodeRef n) {
  xml::Node const& node = n.doc->node(n.id);
  if (node.kind == xml::NodeKind::Attribute ||
      node.kind == xml::NodeKind::Text) {
    return std::string_view(node.value);
  }
  if (node.firstChild == xml::kNoNode) {
    return std::string_view();
  }
  // a lone text child is the whole string value
  if (node.last == node.firstChild &&
      n.doc->kind(node.firstChild) == xml::NodeKind::Text) {
    return n.doc->value(node.firstChild);
  }
  return std::nullopt;
}

std::string_view atomView(Item const& item, std::string& scratch) {
  if (auto const* s = std::get_if<std::string>(&item)) {
    return *s;
  }
  if (auto const* n = std::get_if<NodeRef>(&item)) {
    if (auto view = directStringValue(*n)) {
      return *view;
    }
  }
  scratch.clear();
  appendAtomized(item, scratch);
  return scratch;
}

bool effectiveBooleanValue(Sequence const& seq) {
  if (seq.empty()) {
    return false;
  }
  if (isNode(seq.front())) {
    return true;
  }
  if (seq.size() > 1) {
    throw TypeError(
        "effective boolean value of a sequence of more than one atomic value");
  }
  return std::visit(
      [](auto const& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return !v.empty();
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return v != 0;
        } else if constexpr (std::is_same_v<T, Decimal>) {
          return v.units() != 0;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v;
        } else {
          return true;
        }
      },
      seq.front());
}

void DocumentSet::add(xml::Document const& doc) {
  auto pos = std::upper_bound(
      _docs.begin(), _docs.end(), &doc,
      [](auto const* a, auto const* b) { return a->ordinal() < b->ordinal(); });
  _docs.insert(pos, &doc);
}

std::string QueryResult::serialize(bool pretty) const {
  std::string out;
  for (auto const& item : items) {
    if (auto const* n = std::get_if<NodeRef>(&item)) {
      xml::serializeInto(*n->doc, n->id, pretty, out);
      if (pretty && !out.empty() && out.back() == '\n') {
        out.pop_back();
      }
    } else {
      appendAtomized(item, out);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace xocube::query
