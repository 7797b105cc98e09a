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
#include <stdexcept>
#include <string>

namespace xocube {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define XOCUBE_DECLARE_ERROR(Name)         \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// xml
XOCUBE_DECLARE_ERROR(UnsupportedFeature);

class ParseError : public Error {
 public:
  ParseError(std::string const& message, std::size_t offset)
      : Error(message + " at byte offset " + std::to_string(offset)),
        _offset(offset) {}

  std::size_t offset() const noexcept { return _offset; }

 private:
  std::size_t _offset;
};

// cube model
XOCUBE_DECLARE_ERROR(InvalidParam);
XOCUBE_DECLARE_ERROR(UnknownLevel);
XOCUBE_DECLARE_ERROR(UnknownMeasure);

// encoders
XOCUBE_DECLARE_ERROR(LayoutError);

// query engine
class SyntaxError : public Error {
 public:
  SyntaxError(std::string const& message, std::size_t line, std::size_t column)
      : Error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        _line(line),
        _column(column) {}

  std::size_t line() const noexcept { return _line; }
  std::size_t column() const noexcept { return _column; }

 private:
  std::size_t _line;
  std::size_t _column;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string name)
      : Error("unbound variable $" + name), _name(std::move(name)) {}

  std::string const& name() const noexcept { return _name; }

 private:
  std::string _name;
};

XOCUBE_DECLARE_ERROR(TypeError);
XOCUBE_DECLARE_ERROR(DynamicError);

// olap compiler
XOCUBE_DECLARE_ERROR(Unsupported);
XOCUBE_DECLARE_ERROR(MalformedResult);

// bench
XOCUBE_DECLARE_ERROR(MalformedCsv);
XOCUBE_DECLARE_ERROR(IoError);
XOCUBE_DECLARE_ERROR(CorrectnessFailure);

#undef XOCUBE_DECLARE_ERROR

}  // namespace xocube
