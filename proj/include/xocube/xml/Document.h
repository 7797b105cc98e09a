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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xocube::xml {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = UINT32_MAX;

/// Interned element/attribute name, local to one document.
using Symbol = std::uint32_t;
inline constexpr Symbol kNoSymbol = UINT32_MAX;

enum class NodeKind : std::uint8_t { Document, Element, Attribute, Text };

/// One node of the arena. Ids are assigned in document order (pre-order,
/// an element's attributes directly follow it, then its children), so
/// `a` is an ancestor of `d` iff `a < d && d <= last(a)`.
struct Node {
  NodeKind kind = NodeKind::Element;
  std::uint16_t attributeCount = 0;
  Symbol name = kNoSymbol;
  NodeId parent = kNoNode;
  NodeId last = 0;
  NodeId firstChild = kNoNode;
  NodeId nextSibling = kNoNode;
  std::uint32_t childCount = 0;
  std::string value;  // attribute value or text content
};

class Document;

/// Forward range over the children of a node.
class ChildRange {
 public:
  class iterator {
   public:
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(Document const* doc, NodeId id) : _doc(doc), _id(id) {}
    NodeId operator*() const { return _id; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(iterator const& other) const { return _id == other._id; }

   private:
    Document const* _doc = nullptr;
    NodeId _id = kNoNode;
  };

  ChildRange(Document const* doc, NodeId first) : _doc(doc), _first(first) {}
  iterator begin() const { return iterator(_doc, _first); }
  iterator end() const { return iterator(_doc, kNoNode); }

 private:
  Document const* _doc;
  NodeId _first;
};

/// Immutable ordered XML tree. Built with DocumentBuilder or parseDocument.
/// Node 0 is the document node; its single element child is the root.
class Document {
 public:
  static constexpr NodeId kDocumentNode = 0;

  Document(Document const&) = delete;
  Document& operator=(Document const&) = delete;
  Document(Document&&) noexcept = default;
  Document& operator=(Document&&) noexcept = default;

  NodeId root() const noexcept { return _nodes[0].firstChild; }
  std::size_t size() const noexcept { return _nodes.size(); }
  /// Process-wide creation number; orders nodes of distinct documents.
  std::uint64_t ordinal() const noexcept { return _ordinal; }

  Node const& node(NodeId id) const { return _nodes[id]; }
  NodeKind kind(NodeId id) const { return _nodes[id].kind; }
  std::string_view name(NodeId id) const;
  std::string_view value(NodeId id) const { return _nodes[id].value; }
  NodeId parent(NodeId id) const { return _nodes[id].parent; }
  NodeId last(NodeId id) const { return _nodes[id].last; }

  ChildRange children(NodeId id) const {
    return ChildRange(this, _nodes[id].firstChild);
  }
  /// Attribute node ids of an element, in document order.
  std::span<Node const> attributeNodes(NodeId id) const {
    return {_nodes.data() + id + 1, _nodes[id].attributeCount};
  }
  NodeId firstAttribute(NodeId id) const { return id + 1; }
  std::optional<std::string_view> attribute(NodeId element,
                                            std::string_view name) const;

  bool isAncestor(NodeId ancestor, NodeId descendant) const noexcept {
    return ancestor < descendant && descendant <= _nodes[ancestor].last;
  }

  Symbol symbol(std::string_view name) const;
  std::string_view symbolName(Symbol s) const { return _symbols[s]; }

  /// All elements (resp. attributes) with the given name, in document order.
  std::span<NodeId const> elementsNamed(Symbol s) const;
  std::span<NodeId const> attributesNamed(Symbol s) const;

  /// Attribute -> value; text -> text; element/document -> concatenation of
  /// descendant text in document order.
  std::string stringValue(NodeId id) const;
  void appendStringValue(NodeId id, std::string& out) const;

 private:
  friend class DocumentBuilder;
  Document();

  struct SymbolHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<Node> _nodes;
  std::vector<std::string> _symbols;
  std::unordered_map<std::string, Symbol, SymbolHash, std::equal_to<>>
      _symbolIds;
  std::vector<std::vector<NodeId>> _elementsBySymbol;
  std::vector<std::vector<NodeId>> _attributesBySymbol;
  std::uint64_t _ordinal = 0;
};

inline ChildRange::iterator& ChildRange::iterator::operator++() {
  _id = _doc->node(_id).nextSibling;
  return *this;
}

/// Streaming constructor for documents. Attributes must be added right after
/// their element is started; adjacent text merges into one node.
class DocumentBuilder {
 public:
  DocumentBuilder();

  DocumentBuilder& startElement(std::string_view name);
  DocumentBuilder& attribute(std::string_view name, std::string_view value);
  DocumentBuilder& text(std::string_view text);
  DocumentBuilder& endElement();
  /// `<name>text</name>`
  DocumentBuilder& leaf(std::string_view name, std::string_view text);
  /// Deep copy of `id` (element, text or attribute) from another document
  /// at the current position.
  DocumentBuilder& copy(Document const& src, NodeId id);

  std::size_t depth() const noexcept { return _open.size(); }

  /// Throws InvalidParam unless exactly one root element was built and all
  /// elements are closed.
  Document finish();

 private:
  Symbol intern(std::string_view name);
  NodeId append(Node node);

  Document _doc;
  std::vector<NodeId> _open;
  std::vector<NodeId> _lastChild;
  bool _acceptAttributes = false;
};

/// True if `name` is a valid NCName (no colon).
bool isNcName(std::string_view name) noexcept;

/// Deep structural equality of two subtrees (names, attribute lists in order,
/// text values, child order).
bool structurallyEqual(Document const& a, NodeId aNode, Document const& b,
                       NodeId bNode);
inline bool structurallyEqual(Document const& a, Document const& b) {
  return structurallyEqual(a, Document::kDocumentNode, b,
                           Document::kDocumentNode);
}

/// Parses the supported XML subset: elements, attributes, text, the five
/// predefined entities and character references, CDATA sections. Comments
/// and the XML declaration are discarded; whitespace-only text is dropped.
/// Throws ParseError (with byte offset) or UnsupportedFeature.
Document parseDocument(std::string_view bytes);

/// Serializes the whole document (`pretty` indents by two spaces).
std::string serialize(Document const& doc, bool pretty = false);
/// Serializes one node; an attribute serializes as `name="value"`.
std::string serialize(Document const& doc, NodeId id, bool pretty = false);
void serializeInto(Document const& doc, NodeId id, bool pretty,
                   std::string& out);

std::string escapeText(std::string_view text);
std::string escapeAttribute(std::string_view text);

}  // namespace xocube::xml
