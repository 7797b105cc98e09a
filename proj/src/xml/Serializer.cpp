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

namespace xocube::xml {

namespace {

void appendEscaped(std::string& out, std::string_view text, bool attribute) {
  for (char c : text) {
    switch (c) {
      case '<':
        out.append("&lt;");
        break;
      case '>':
        out.append("&gt;");
        break;
      case '&':
        out.append("&amp;");
        break;
      case '"':
        if (attribute) {
          out.append("&quot;");
        } else {
          out.push_back(c);
        }
        break;
      case '\n':
      case '\t':
      case '\r':
        // attribute normalization would turn these into spaces on re-parse
        if (attribute) {
          out.append(c == '\n' ? "&#10;" : (c == '\t' ? "&#9;" : "&#13;"));
        } else if (c == '\r') {
          out.append("&#13;");
        } else {
          out.push_back(c);
        }
        break;
      default:
        out.push_back(c);
    }
  }
}

class Writer {
 public:
  Writer(Document const& doc, bool pretty, std::string& out)
      : _doc(doc), _pretty(pretty), _out(out) {}

  void write(NodeId id, std::size_t depth) {
    Node const& n = _doc.node(id);
    switch (n.kind) {
      case NodeKind::Document:
        for (NodeId c : _doc.children(id)) {
          write(c, depth);
        }
        return;
      case NodeKind::Text:
        indent(depth);
        appendEscaped(_out, n.value, false);
        newline();
        return;
      case NodeKind::Attribute:
        _out.append(_doc.name(id));
        _out.append("=\"");
        appendEscaped(_out, n.value, true);
        _out.push_back('"');
        return;
      case NodeKind::Element:
        break;
    }
    indent(depth);
    _out.push_back('<');
    _out.append(_doc.name(id));
    for (NodeId a = id + 1; a <= id + n.attributeCount; ++a) {
      _out.push_back(' ');
      write(a, depth);
    }
    if (n.firstChild == kNoNode) {
      _out.append("/>");
      newline();
      return;
    }
    _out.push_back('>');
    bool hasText = false;
    for (NodeId c : _doc.children(id)) {
      hasText = hasText || _doc.kind(c) == NodeKind::Text;
    }
    if (hasText || !_pretty) {
      // text content is emitted inline so no whitespace is introduced
      bool saved = _pretty;
      _pretty = false;
      for (NodeId c : _doc.children(id)) {
        write(c, 0);
      }
      _pretty = saved;
    } else {
      newline();
      for (NodeId c : _doc.children(id)) {
        write(c, depth + 1);
      }
      indent(depth);
    }
    _out.append("</");
    _out.append(_doc.name(id));
    _out.push_back('>');
    newline();
  }

 private:
  void indent(std::size_t depth) {
    if (_pretty) {
      _out.append(2 * depth, ' ');
    }
  }
  void newline() {
    if (_pretty) {
      _out.push_back('\n');
    }
  }

  Document const& _doc;
  bool _pretty;
  std::string& _out;
};

}  // namespace

std::string escapeText(std::string_view text) {
  std::string out;
  appendEscaped(out, text, false);
  return out;
}

std::string escapeAttribute(std::string_view text) {
  std::string out;
  appendEscaped(out, text, true);
  return out;
}

void serializeInto(Document const& doc, NodeId id, bool pretty,
                   std::string& out) {
  Writer(doc, pretty, out).write(id, 0);
}

std::string serialize(Document const& doc, NodeId id, bool pretty) {
  std::string out;
  serializeInto(doc, id, pretty, out);
  return out;
}

std::string serialize(Document const& doc, bool pretty) {
  return serialize(doc, Document::kDocumentNode, pretty);
}

}  // namespace xocube::xml
