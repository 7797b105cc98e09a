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

#include <cstddef>
#include <string>
#include <string_view>

namespace xocube::query::detail {

/// Character-level cursor over query text. The query grammar mixes
/// expression tokens with raw constructor content, so the parser drives the
/// scanner directly instead of consuming a token stream.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : _text(text) {}

  std::size_t offset() const noexcept { return _pos; }
  void reset(std::size_t offset) noexcept { _pos = offset; }
  std::string_view text() const noexcept { return _text; }

  /// Whitespace and `(: ... :)` comments (which nest).
  void skipSpace();
  void skipWhitespace();
  bool atEnd();

  char peek(std::size_t ahead = 0) const noexcept {
    return _pos + ahead < _text.size() ? _text[_pos + ahead] : '\0';
  }
  char get() noexcept { return _pos < _text.size() ? _text[_pos++] : '\0'; }
  bool startsWith(std::string_view s) const noexcept {
    return _text.substr(_pos).starts_with(s);
  }

  /// Skips space, then consumes `symbol` if present.
  bool consume(std::string_view symbol);
  void expect(std::string_view symbol);

  /// Skips space, then consumes `keyword` if it is present as a whole name.
  bool consumeKeyword(std::string_view keyword);
  bool peekKeyword(std::string_view keyword);
  void expectKeyword(std::string_view keyword);

  static bool isNameStart(char c) noexcept;
  static bool isNameChar(char c) noexcept;
  bool atNameStart() const noexcept { return isNameStart(peek()); }
  /// Reads a name at the current position (no space skipping).
  std::string readName();

  /// Reads a quoted literal at the current position. A doubled quote stands
  /// for itself; entity and character references are expanded.
  std::string readStringLiteral();

  /// Expands the reference starting at `&` and appends it to `out`.
  void readReference(std::string& out);

  [[noreturn]] void fail(std::string const& message) const;
  [[noreturn]] void fail(std::string const& message, std::size_t offset) const;

 private:
  std::string_view _text;
  std::size_t _pos = 0;
};

}  // namespace xocube::query::detail
