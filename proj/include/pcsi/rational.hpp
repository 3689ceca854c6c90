// Copyright 2026 The pcsi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace pcsi {

/// Exact rational on int64 with 128-bit intermediates. Always normalized:
/// gcd(|num|, den) = 1, den > 0, zero is 0/1. Overflow on narrowing back to
/// int64 throws instead of wrapping; audit arithmetic must never be
/// silently wrong.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t num, int64_t den);

  static Rational integer(int64_t n) { return Rational(n, 1); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational operator/(const Rational& other) const;
  Rational operator-() const;

  Rational abs() const;

  bool operator==(const Rational& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }
  bool operator!=(const Rational& other) const { return !(*this == other); }
  bool operator<(const Rational& other) const;
  bool operator>(const Rational& other) const { return other < *this; }
  bool operator<=(const Rational& other) const { return !(other < *this); }
  bool operator>=(const Rational& other) const { return !(*this < other); }

  /// "num/den", e.g. "0/1", "-3/7".
  std::string to_string() const;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  static Rational normalized(__int128 num, __int128 den);

  int64_t num_;
  int64_t den_;
};

}  // namespace pcsi
