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

#include "Scanner.h"

#include "xocube/Errors.h"

#include <charconv>
#include <cstdint>

namespace xocube::query::detail {

namespace {

void appendUtf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(char(cp));
  } else if (cp < 0x800) {
    out.push_back(char(0xC0 | (cp >> 6)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(char(0xE0 | (cp >> 12)));
    out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(char(0xF0 | (cp >> 18)));
    out.push_back(char(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  }
}

bool isSpace(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

}  // namespace

void Scanner::skipWhitespace() {
  while (_pos < _text.size() && isSpace(_text[_pos])) {
    ++_pos;
  }
}

void Scanner::skipSpace() {
  for (;;) {
    skipWhitespace();
    if (!startsWith("(:")) {
      return;
    }
    std::size_t start = _pos;
    int depth = 0;
    do {
      if (startsWith("(:")) {
        ++depth;
        _pos += 2;
      } else if (startsWith(":)")) {
        --depth;
        _pos += 2;
      } else if (_pos >= _text.size()) {
        fail("unterminated comment", start);
      } else {
        ++_pos;
      }
    } while (depth > 0);
  }
}

bool Scanner::atEnd() {
  skipSpace();
  return _pos >= _text.size();
}

bool Scanner::consume(std::string_view symbol) {
  skipSpace();
  if (!startsWith(symbol)) {
    return false;
  }
  _pos += symbol.size();
  return true;
}

void Scanner::expect(std::string_view symbol) {
  if (!consume(symbol)) {
    fail("expected '" + std::string(symbol) + "'");
  }
}

bool Scanner::peekKeyword(std::string_view keyword) {
  skipSpace();
  return startsWith(keyword) && !isNameChar(peek(keyword.size()));
}

bool Scanner::consumeKeyword(std::string_view keyword) {
  if (!peekKeyword(keyword)) {
    return false;
  }
  _pos += keyword.size();
  return true;
}

void Scanner::expectKeyword(std::string_view keyword) {
  if (!consumeKeyword(keyword)) {
    fail("expected '" + std::string(keyword) + "'");
  }
}

bool Scanner::isNameStart(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         (static_cast<unsigned char>(c) >= 0x80);
}

bool Scanner::isNameChar(char c) noexcept {
  return isNameStart(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

std::string Scanner::readName() {
  if (!atNameStart()) {
    if (peek() == '*') {
      fail("wildcard name tests are not supported");
    }
    fail("expected a name");
  }
  std::size_t start = _pos;
  while (isNameChar(peek())) {
    ++_pos;
  }
  if (peek() == ':' && isNameStart(peek(1))) {
    fail("prefixed names are not supported");
  }
  return std::string(_text.substr(start, _pos - start));
}

void Scanner::readReference(std::string& out) {
  std::size_t start = _pos;
  std::size_t semi = _text.find(';', _pos);
  if (semi == std::string_view::npos || semi - _pos > 12) {
    fail("malformed entity reference", start);
  }
  std::string_view ref = _text.substr(_pos + 1, semi - _pos - 1);
  _pos = semi + 1;
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
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                     cp, hex ? 16 : 10);
    if (digits.empty() || ec != std::errc() ||
        ptr != digits.data() + digits.size() || cp == 0 || cp > 0x10FFFF) {
      fail("invalid character reference", start);
    }
    appendUtf8(cp, out);
  } else {
    fail("unknown entity '&" + std::string(ref) + ";'", start);
  }
}

std::string Scanner::readStringLiteral() {
  std::size_t start = _pos;
  char quote = get();
  std::string out;
  for (;;) {
    if (_pos >= _text.size()) {
      fail("unterminated string literal", start);
    }
    char c = _text[_pos];
    if (c == quote) {
      if (peek(1) == quote) {
        out.push_back(quote);
        _pos += 2;
        continue;
      }
      ++_pos;
      return out;
    }
    if (c == '&') {
      readReference(out);
      continue;
    }
    out.push_back(c);
    ++_pos;
  }
}

void Scanner::fail(std::string const& message) const { fail(message, _pos); }

void Scanner::fail(std::string const& message, std::size_t offset) const {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < _text.size(); ++i) {
    if (_text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw SyntaxError(message, line, column);
}

}  // namespace xocube::query::detail
