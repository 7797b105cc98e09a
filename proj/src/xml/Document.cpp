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

#include "xocube/xml/Document.h"

#include "xocube/Errors.h"

#include <algorithm>
#include <atomic>

namespace xocube::xml {

namespace {
std::atomic<std::uint64_t> nextOrdinal{1};

bool isNameStart(unsigned char c) noexcept {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' ||
         c >= 0x80;
}

bool isNameChar(unsigned char c) noexcept {
  return isNameStart(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

std::span<NodeId const> bucket(std::vector<std::vector<NodeId>> const& index,
                               Symbol s) {
  if (s == kNoSymbol || s >= index.size()) {
    return {};
  }
  return index[s];
}
}  // namespace

bool isNcName(std::string_view name) noexcept {
  if (name.empty() || !isNameStart(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return isNameChar(static_cast<unsigned char>(c));
  });
}

Document::Document() : _ordinal(nextOrdinal.fetch_add(1)) {
  Node doc;
  doc.kind = NodeKind::Document;
  _nodes.push_back(std::move(doc));
}

std::string_view Document::name(NodeId id) const {
  Symbol s = _nodes[id].name;
  return s == kNoSymbol ? std::string_view{} : std::string_view(_symbols[s]);
}

std::optional<std::string_view> Document::attribute(
    NodeId element, std::string_view name) const {
  for (Node const& a : attributeNodes(element)) {
    if (_symbols[a.name] == name) {
      return std::string_view(a.value);
    }
  }
  return std::nullopt;
}

Symbol Document::symbol(std::string_view name) const {
  auto it = _symbolIds.find(name);
  return it == _symbolIds.end() ? kNoSymbol : it->second;
}

std::span<NodeId const> Document::elementsNamed(Symbol s) const {
  return bucket(_elementsBySymbol, s);
}

std::span<NodeId const> Document::attributesNamed(Symbol s) const {
  return bucket(_attributesBySymbol, s);
}

std::string Document::stringValue(NodeId id) const {
  std::string out;
  appendStringValue(id, out);
  return out;
}

void Document::appendStringValue(NodeId id, std::string& out) const {
  Node const& n = _nodes[id];
  if (n.kind == NodeKind::Attribute || n.kind == NodeKind::Text) {
    out.append(n.value);
    return;
  }
  for (NodeId i = id + 1; i <= n.last; ++i) {
    if (_nodes[i].kind == NodeKind::Text) {
      out.append(_nodes[i].value);
    }
  }
}

DocumentBuilder::DocumentBuilder() {
  _open.push_back(Document::kDocumentNode);
  _lastChild.push_back(kNoNode);
}

Symbol DocumentBuilder::intern(std::string_view name) {
  if (!isNcName(name)) {
    throw InvalidParam("invalid XML name '" + std::string(name) + "'");
  }
  auto it = _doc._symbolIds.find(name);
  if (it != _doc._symbolIds.end()) {
    return it->second;
  }
  auto s = static_cast<Symbol>(_doc._symbols.size());
  _doc._symbols.emplace_back(name);
  _doc._symbolIds.emplace(std::string(name), s);
  return s;
}

NodeId DocumentBuilder::append(Node node) {
  auto id = static_cast<NodeId>(_doc._nodes.size());
  NodeId parent = _open.back();
  node.parent = parent;
  node.last = id;
  Node& p = _doc._nodes[parent];
  if (_lastChild.back() == kNoNode) {
    p.firstChild = id;
  } else {
    _doc._nodes[_lastChild.back()].nextSibling = id;
  }
  ++p.childCount;
  _lastChild.back() = id;
  _doc._nodes.push_back(std::move(node));
  return id;
}

DocumentBuilder& DocumentBuilder::startElement(std::string_view name) {
  if (_open.size() == 1 && _doc._nodes[0].firstChild != kNoNode) {
    throw InvalidParam("document already has a root element");
  }
  Node n;
  n.kind = NodeKind::Element;
  n.name = intern(name);
  NodeId id = append(std::move(n));
  _open.push_back(id);
  _lastChild.push_back(kNoNode);
  _acceptAttributes = true;
  return *this;
}

DocumentBuilder& DocumentBuilder::attribute(std::string_view name,
                                            std::string_view value) {
  if (!_acceptAttributes) {
    throw InvalidParam("attribute '" + std::string(name) +
                       "' must directly follow its element");
  }
  NodeId owner = _open.back();
  Symbol s = intern(name);
  Node& element = _doc._nodes[owner];
  for (Node const& a : _doc.attributeNodes(owner)) {
    if (a.name == s) {
      throw InvalidParam("duplicate attribute '" + std::string(name) + "'");
    }
  }
  if (element.attributeCount == UINT16_MAX) {
    throw InvalidParam("too many attributes");
  }
  ++element.attributeCount;
  Node n;
  n.kind = NodeKind::Attribute;
  n.name = s;
  n.parent = owner;
  n.last = static_cast<NodeId>(_doc._nodes.size());
  n.value = std::string(value);
  _doc._nodes.push_back(std::move(n));
  return *this;
}

DocumentBuilder& DocumentBuilder::text(std::string_view text) {
  if (text.empty()) {
    return *this;
  }
  if (_open.size() == 1) {
    throw InvalidParam("text outside the root element");
  }
  _acceptAttributes = false;
  NodeId prev = _lastChild.back();
  if (prev != kNoNode && _doc._nodes[prev].kind == NodeKind::Text) {
    _doc._nodes[prev].value.append(text);
    return *this;
  }
  Node n;
  n.kind = NodeKind::Text;
  n.value = std::string(text);
  append(std::move(n));
  return *this;
}

DocumentBuilder& DocumentBuilder::endElement() {
  if (_open.size() <= 1) {
    throw InvalidParam("endElement without open element");
  }
  NodeId id = _open.back();
  _doc._nodes[id].last = static_cast<NodeId>(_doc._nodes.size() - 1);
  _open.pop_back();
  _lastChild.pop_back();
  _acceptAttributes = false;
  return *this;
}

DocumentBuilder& DocumentBuilder::leaf(std::string_view name,
                                       std::string_view text) {
  return startElement(name).text(text).endElement();
}

DocumentBuilder& DocumentBuilder::copy(Document const& src, NodeId id) {
  Node const& n = src.node(id);
  switch (n.kind) {
    case NodeKind::Attribute:
      return attribute(src.name(id), n.value);
    case NodeKind::Text:
      return text(n.value);
    case NodeKind::Document:
      for (NodeId c : src.children(id)) {
        copy(src, c);
      }
      return *this;
    case NodeKind::Element:
      startElement(src.name(id));
      for (Node const& a : src.attributeNodes(id)) {
        attribute(src.symbolName(a.name), a.value);
      }
      for (NodeId c : src.children(id)) {
        copy(src, c);
      }
      return endElement();
  }
  return *this;
}

Document DocumentBuilder::finish() {
  if (_open.size() != 1) {
    throw InvalidParam("unclosed element in document builder");
  }
  if (_doc._nodes[0].firstChild == kNoNode) {
    throw InvalidParam("document has no root element");
  }
  Document& d = _doc;
  d._nodes[0].last = static_cast<NodeId>(d._nodes.size() - 1);
  d._elementsBySymbol.assign(d._symbols.size(), {});
  d._attributesBySymbol.assign(d._symbols.size(), {});
  for (NodeId i = 0; i < d._nodes.size(); ++i) {
    Node const& n = d._nodes[i];
    if (n.kind == NodeKind::Element) {
      d._elementsBySymbol[n.name].push_back(i);
    } else if (n.kind == NodeKind::Attribute) {
      d._attributesBySymbol[n.name].push_back(i);
    }
  }
  Document out = std::move(_doc);
  _doc = Document();
  _open.assign(1, Document::kDocumentNode);
  _lastChild.assign(1, kNoNode);
  return out;
}

bool structurallyEqual(Document const& a, NodeId aNode, Document const& b,
                       NodeId bNode) {
  Node const& x = a.node(aNode);
  Node const& y = b.node(bNode);
  if (x.kind != y.kind || a.name(aNode) != b.name(bNode) ||
      x.value != y.value || x.attributeCount != y.attributeCount ||
      x.childCount != y.childCount) {
    return false;
  }
  for (std::uint16_t i = 0; i < x.attributeCount; ++i) {
    NodeId ai = aNode + 1 + i;
    NodeId bi = bNode + 1 + i;
    if (a.name(ai) != b.name(bi) || a.value(ai) != b.value(bi)) {
      return false;
    }
  }
  auto ca = a.children(aNode).begin();
  auto cb = b.children(bNode).begin();
  for (; ca != a.children(aNode).end(); ++ca, ++cb) {
    if (!structurallyEqual(a, *ca, b, *cb)) {
      return false;
    }
  }
  return true;
}

}  // namespace xocube::xml
