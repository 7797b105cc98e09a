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
#include "xocube/xml/Document.h"

#include <algorithm>
#include <vector>

namespace xocube::xml {

namespace {

bool isSpace(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view input) : _in(input) {}

  Document run() {
    if (_in.substr(0, 3) == "\xEF\xBB\xBF") {
      _pos = 3;
    }
    if (_in.substr(_pos, 5) == "<?xml" &&
        (_pos + 5 < _in.size() && isSpace(_in[_pos + 5]))) {
      std::size_t end = _in.find("?>", _pos);
      if (end == std::string_view::npos) {
        fail("unterminated XML declaration");
      }
      _pos = end + 2;
    }
    skipMisc();
    if (atEnd() || peek() != '<') {
      fail("expected root element");
    }
    parseElement();
    skipMisc();
    if (!atEnd()) {
      fail("content after root element");
    }
    return _builder.finish();
  }

 private:
  [[noreturn]] void fail(std::string const& msg) const {
    throw ParseError(msg, _pos);
  }

  bool atEnd() const noexcept { return _pos >= _in.size(); }
  char peek() const noexcept { return _in[_pos]; }
  bool startsWith(std::string_view s) const noexcept {
    return _in.substr(_pos, s.size()) == s;
  }

  void skipSpace() {
    while (!atEnd() && isSpace(peek())) {
      ++_pos;
    }
  }

  void skipComment() {
    std::size_t end = _in.find("-->", _pos + 4);
    if (end == std::string_view::npos) {
      fail("unterminated comment");
    }
    _pos = end + 3;
  }

  // whitespace and comments outside the root element
  void skipMisc() {
    for (;;) {
      skipSpace();
      if (startsWith("<!--")) {
        skipComment();
      } else if (startsWith("<!DOCTYPE")) {
        throw UnsupportedFeature("DTD at byte offset " + std::to_string(_pos));
      } else if (startsWith("<?")) {
        throw UnsupportedFeature("processing instruction at byte offset " +
                                 std::to_string(_pos));
      } else {
        return;
      }
    }
  }

  std::string_view parseName() {
    std::size_t start = _pos;
    while (!atEnd() && !isSpace(peek()) && peek() != '/' && peek() != '>' &&
           peek() != '=' && peek() != '<' && peek() != '"' && peek() != '\'') {
      ++_pos;
    }
    std::string_view name = _in.substr(start, _pos - start);
    if (name.find(':') != std::string_view::npos) {
      throw UnsupportedFeature("namespace prefix in '" + std::string(name) +
                               "' at byte offset " + std::to_string(start));
    }
    if (!isNcName(name)) {
      _pos = start;
      fail("invalid name '" + std::string(name) + "'");
    }
    return name;
  }

  void parseReference(std::string& out) {
    std::size_t start = _pos;
    std::size_t end = _in.find(';', _pos);
    if (end == std::string_view::npos || end - _pos > 12) {
      fail("unterminated entity reference");
    }
    std::string_view ref = _in.substr(_pos + 1, end - _pos - 1);
    _pos = end + 1;
    if (ref == "lt") {
      out.push_back('<');
    } else if (ref == "gt") {
      out.push_back('>');
    } else if (ref == "amp") {
      out.push_back('&');
    } else if (ref == "quot") {
      out.push_back('"');
    } else if (ref == "apos") {
      out.push_back('\'');
    } else if (ref.size() > 1 && ref[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = ref[1] == 'x';
      std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) {
        _pos = start;
        fail("empty character reference");
      }
      for (char c : digits) {
        std::uint32_t d;
        if (c >= '0' && c <= '9') {
          d = static_cast<std::uint32_t>(c - '0');
        } else if (hex && c >= 'a' && c <= 'f') {
          d = static_cast<std::uint32_t>(c - 'a' + 10);
        } else if (hex && c >= 'A' && c <= 'F') {
          d = static_cast<std::uint32_t>(c - 'A' + 10);
        } else {
          _pos = start;
          fail("invalid character reference");
        }
        cp = cp * (hex ? 16 : 10) + d;
        if (cp > 0x10FFFF) {
          _pos = start;
          fail("character reference out of range");
        }
      }
      if (cp == 0) {
        _pos = start;
        fail("character reference to NUL");
      }
      appendUtf8(out, cp);
    } else {
      _pos = start;
      fail("unknown entity '&" + std::string(ref) + ";'");
    }
  }

  void parseAttributes() {
    std::vector<std::string_view> seen;
    for (;;) {
      std::size_t before = _pos;
      skipSpace();
      if (atEnd()) {
        fail("unterminated start tag");
      }
      if (peek() == '/' || peek() == '>') {
        return;
      }
      if (before == _pos) {
        fail("expected whitespace before attribute");
      }
      std::size_t nameAt = _pos;
      std::string_view name = parseName();
      if (name == "xmlns") {
        throw UnsupportedFeature("namespace declaration at byte offset " +
                                 std::to_string(nameAt));
      }
      if (std::find(seen.begin(), seen.end(), name) != seen.end()) {
        _pos = nameAt;
        fail("duplicate attribute '" + std::string(name) + "'");
      }
      seen.push_back(name);
      skipSpace();
      if (atEnd() || peek() != '=') {
        fail("expected '=' after attribute name");
      }
      ++_pos;
      skipSpace();
      if (atEnd() || (peek() != '"' && peek() != '\'')) {
        fail("expected quoted attribute value");
      }
      char quote = peek();
      ++_pos;
      std::string value;
      for (;;) {
        if (atEnd()) {
          fail("unterminated attribute value");
        }
        char c = peek();
        if (c == quote) {
          ++_pos;
          break;
        }
        if (c == '<') {
          fail("'<' in attribute value");
        }
        if (c == '&') {
          parseReference(value);
          continue;
        }
        value.push_back(isSpace(c) ? ' ' : c);
        ++_pos;
      }
      _builder.attribute(name, value);
    }
  }

  void flushText() {
    bool blank = std::all_of(_text.begin(), _text.end(), isSpace);
    if (!blank) {
      _builder.text(_text);
    }
    _text.clear();
  }

  void parseElement() {
    std::vector<std::string_view> stack;
    for (;;) {
      // at '<' of a start tag
      ++_pos;
      std::string_view name = parseName();
      _builder.startElement(name);
      parseAttributes();
      if (peek() == '/') {
        ++_pos;
        if (atEnd() || peek() != '>') {
          fail("expected '>' after '/'");
        }
        ++_pos;
        _builder.endElement();
      } else {
        ++_pos;
        stack.push_back(name);
      }
      // content until the next start tag, or until the stack empties
      for (;;) {
        if (stack.empty()) {
          return;
        }
        if (atEnd()) {
          fail("unexpected end of input inside <" +
               std::string(stack.back()) + ">");
        }
        char c = peek();
        if (c == '&') {
          parseReference(_text);
        } else if (c != '<') {
          _text.push_back(c);
          ++_pos;
        } else if (startsWith("<!--")) {
          skipComment();
        } else if (startsWith("<![CDATA[")) {
          std::size_t end = _in.find("]]>", _pos + 9);
          if (end == std::string_view::npos) {
            fail("unterminated CDATA section");
          }
          _text.append(_in.substr(_pos + 9, end - _pos - 9));
          _pos = end + 3;
        } else if (startsWith("<?")) {
          throw UnsupportedFeature("processing instruction at byte offset " +
                                   std::to_string(_pos));
        } else if (startsWith("<!")) {
          throw UnsupportedFeature("markup declaration at byte offset " +
                                   std::to_string(_pos));
        } else if (startsWith("</")) {
          flushText();
          std::size_t at = _pos;
          _pos += 2;
          std::string_view endName = parseName();
          if (endName != stack.back()) {
            _pos = at;
            fail("mismatched end tag </" + std::string(endName) +
                 ">, expected </" + std::string(stack.back()) + ">");
          }
          skipSpace();
          if (atEnd() || peek() != '>') {
            fail("expected '>' in end tag");
          }
          ++_pos;
          _builder.endElement();
          stack.pop_back();
        } else {
          flushText();
          break;
        }
      }
    }
  }

  std::string_view _in;
  std::size_t _pos = 0;
  std::string _text;
  DocumentBuilder _builder;
};

}  // namespace

Document parseDocument(std::string_view bytes) { return Parser(bytes).run(); }

}  // namespace xocube::xml
