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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace xocube {

/// Exact fixed-point number: `units * 10^-scale`.
///
/// Measures and query sums use this type so that results computed through
/// different XML layouts compare exactly, without floating point noise.
class Decimal {
 public:
  static constexpr int kMaxScale = 9;

  constexpr Decimal() noexcept = default;
  constexpr Decimal(std::int64_t units, int scale) noexcept
      : _units(units), _scale(scale) {}

  static constexpr Decimal fromInteger(std::int64_t v) noexcept {
    return Decimal(v, 0);
  }

  /// Parses `[-+]digits[(.|,)digits]`. The comma is accepted only when
  /// `allowComma` is set (some typeset sources print "125,67").
  static std::optional<Decimal> parse(std::string_view text,
                                      bool allowComma = false);

  std::int64_t units() const noexcept { return _units; }
  int scale() const noexcept { return _scale; }
  bool isInteger() const noexcept;

  /// Same value expressed with `scale` fractional digits. Throws
  /// InvalidParam if precision would be lost.
  Decimal rescaled(int scale) const;
  /// Drops trailing fractional zeros.
  Decimal normalized() const noexcept;

  /// Shortest representation, e.g. "7", "125.67", "-0.5".
  std::string toString() const;
  /// Representation with exactly `scale()` fractional digits.
  std::string toFixedString() const;

  double toDouble() const noexcept;

  friend Decimal operator+(Decimal const& a, Decimal const& b);
  Decimal& operator+=(Decimal const& other) { return *this = *this + other; }

  friend bool operator==(Decimal const& a, Decimal const& b) noexcept;
  friend std::strong_ordering operator<=>(Decimal const& a,
                                          Decimal const& b) noexcept;

 private:
  std::int64_t _units = 0;
  int _scale = 0;
};

}  // namespace xocube
