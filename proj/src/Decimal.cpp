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

#include "xocube/Decimal.h"

#include "xocube/Errors.h"

#include <limits>

namespace xocube {

namespace {

constexpr std::int64_t kPow10[] = {1,
                                   10,
                                   100,
                                   1000,
                                   10000,
                                   100000,
                                   1000000,
                                   10000000,
                                   100000000,
                                   1000000000};

std::int64_t checkedMul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw InvalidParam("decimal overflow");
  }
  return r;
}

}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view text, bool allowComma) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  std::int64_t units = 0;
  int scale = 0;
  bool digits = false;
  bool fraction = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      if (fraction && scale == kMaxScale) {
        return std::nullopt;
      }
      if (__builtin_mul_overflow(units, 10, &units) ||
          __builtin_add_overflow(units, c - '0', &units)) {
        return std::nullopt;
      }
      digits = true;
      if (fraction) {
        ++scale;
      }
    } else if ((c == '.' || (allowComma && c == ',')) && !fraction) {
      fraction = true;
    } else {
      return std::nullopt;
    }
  }
  if (!digits) {
    return std::nullopt;
  }
  return Decimal(negative ? -units : units, scale);
}

bool Decimal::isInteger() const noexcept {
  return _units % kPow10[_scale] == 0;
}

Decimal Decimal::rescaled(int scale) const {
  if (scale < 0 || scale > kMaxScale) {
    throw InvalidParam("decimal scale out of range");
  }
  if (scale >= _scale) {
    return Decimal(checkedMul(_units, kPow10[scale - _scale]), scale);
  }
  std::int64_t div = kPow10[_scale - scale];
  if (_units % div != 0) {
    throw InvalidParam("decimal rescale loses precision");
  }
  return Decimal(_units / div, scale);
}

Decimal Decimal::normalized() const noexcept {
  Decimal d = *this;
  while (d._scale > 0 && d._units % 10 == 0) {
    d._units /= 10;
    --d._scale;
  }
  return d;
}

std::string Decimal::toFixedString() const {
  std::uint64_t mag = _units < 0 ? 0 - static_cast<std::uint64_t>(_units)
                                 : static_cast<std::uint64_t>(_units);
  std::string digits = std::to_string(mag);
  if (_scale > 0) {
    if (digits.size() <= static_cast<std::size_t>(_scale)) {
      digits.insert(0, static_cast<std::size_t>(_scale) - digits.size() + 1,
                    '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(_scale), ".");
  }
  return _units < 0 ? "-" + digits : digits;
}

std::string Decimal::toString() const { return normalized().toFixedString(); }

double Decimal::toDouble() const noexcept {
  return static_cast<double>(_units) / static_cast<double>(kPow10[_scale]);
}

Decimal operator+(Decimal const& a, Decimal const& b) {
  int scale = std::max(a._scale, b._scale);
  Decimal x = a.rescaled(scale);
  Decimal y = b.rescaled(scale);
  std::int64_t r;
  if (__builtin_add_overflow(x._units, y._units, &r)) {
    throw InvalidParam("decimal overflow");
  }
  return Decimal(r, scale);
}

bool operator==(Decimal const& a, Decimal const& b) noexcept {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(Decimal const& a, Decimal const& b) noexcept {
  Decimal x = a.normalized();
  Decimal y = b.normalized();
  int scale = std::max(x._scale, y._scale);
  // normalized values at most kMaxScale digits; overflow falls back to double
  std::int64_t xu, yu;
  if (__builtin_mul_overflow(x._units, kPow10[scale - x._scale], &xu) ||
      __builtin_mul_overflow(y._units, kPow10[scale - y._scale], &yu)) {
    double dx = x.toDouble();
    double dy = y.toDouble();
    return dx < dy ? std::strong_ordering::less
                   : (dx > dy ? std::strong_ordering::greater
                              : std::strong_ordering::equal);
  }
  return xu <=> yu;
}

}  // namespace xocube
