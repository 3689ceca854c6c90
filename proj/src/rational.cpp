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

#include "pcsi/rational.hpp"

#include <limits>
#include <stdexcept>

namespace pcsi {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<int64_t>::max() ||
      v < std::numeric_limits<int64_t>::min()) {
    throw std::overflow_error("rational arithmetic overflowed int64");
  }
  return static_cast<int64_t>(v);
}

}  // namespace

Rational Rational::normalized(__int128 num, __int128 den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    den = 1;
  } else {
    __int128 g = gcd128(num, den);
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rational::Rational(int64_t num, int64_t den) {
  *this = normalized(num, den);
}

Rational Rational::operator+(const Rational& other) const {
  return normalized(static_cast<__int128>(num_) * other.den_ +
                        static_cast<__int128>(other.num_) * den_,
                    static_cast<__int128>(den_) * other.den_);
}

Rational Rational::operator-(const Rational& other) const {
  return *this + (-other);
}

Rational Rational::operator*(const Rational& other) const {
  return normalized(static_cast<__int128>(num_) * other.num_,
                    static_cast<__int128>(den_) * other.den_);
}

Rational Rational::operator/(const Rational& other) const {
  if (other.num_ == 0) {
    throw std::domain_error("rational division by zero");
  }
  return normalized(static_cast<__int128>(num_) * other.den_,
                    static_cast<__int128>(den_) * other.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

bool Rational::operator<(const Rational& other) const {
  return static_cast<__int128>(num_) * other.den_ <
         static_cast<__int128>(other.num_) * den_;
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace pcsi
