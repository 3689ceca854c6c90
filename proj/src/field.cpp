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

#include "pcsi/field.hpp"

#include <string>

namespace pcsi {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

FieldParams::FieldParams(uint32_t modulus) {
  if (modulus >= (1u << 16)) {
    throw std::invalid_argument("field modulus must be < 2^16, got " +
                                std::to_string(modulus));
  }
  if (!is_prime(modulus)) {
    throw std::invalid_argument("field modulus must be prime, got " +
                                std::to_string(modulus));
  }
  q_ = static_cast<uint16_t>(modulus);
}

FieldElement FieldParams::element(uint64_t residue) const {
  return FieldElement(static_cast<uint16_t>(residue % q_), *this);
}

FieldElement FieldParams::zero() const { return element(0); }

FieldElement FieldParams::one() const { return element(1); }

FieldElement::FieldElement(uint16_t value, FieldParams params)
    : value_(value), q_(params.q()) {
  if (value_ >= q_) {
    throw std::invalid_argument("residue " + std::to_string(value_) +
                                " out of range for GF(" + std::to_string(q_) +
                                ")");
  }
}

void FieldElement::require_same_field(const FieldElement& other) const {
  if (q_ != other.q_) {
    throw FieldMismatchError("mixed elements of GF(" + std::to_string(q_) +
                             ") and GF(" + std::to_string(other.q_) + ")");
  }
}

FieldElement FieldElement::operator+(FieldElement other) const {
  require_same_field(other);
  uint32_t sum = static_cast<uint32_t>(value_) + other.value_;
  if (sum >= q_) sum -= q_;
  return FieldElement(static_cast<uint16_t>(sum), field());
}

FieldElement FieldElement::operator-(FieldElement other) const {
  require_same_field(other);
  uint32_t diff = static_cast<uint32_t>(value_) + q_ - other.value_;
  if (diff >= q_) diff -= q_;
  return FieldElement(static_cast<uint16_t>(diff), field());
}

FieldElement FieldElement::operator*(FieldElement other) const {
  require_same_field(other);
  uint32_t prod = static_cast<uint32_t>(value_) * other.value_;
  return FieldElement(static_cast<uint16_t>(prod % q_), field());
}

FieldElement FieldElement::operator-() const {
  return FieldElement(value_ == 0 ? 0 : static_cast<uint16_t>(q_ - value_),
                      field());
}

FieldElement FieldElement::inv() const {
  if (value_ == 0) {
    throw DivisionByZeroError("inverse of zero in GF(" + std::to_string(q_) +
                              ")");
  }
  // Extended Euclid on (q, value).
  int32_t t = 0, new_t = 1;
  int32_t r = q_, new_r = value_;
  while (new_r != 0) {
    int32_t quotient = r / new_r;
    int32_t tmp_t = t - quotient * new_t;
    t = new_t;
    new_t = tmp_t;
    int32_t tmp_r = r - quotient * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (t < 0) t += q_;
  return FieldElement(static_cast<uint16_t>(t), field());
}

FieldElement FieldElement::pow(uint64_t exponent) const {
  FieldElement base = *this;
  FieldElement acc = field().one();
  while (exponent > 0) {
    if (exponent & 1) acc = acc * base;
    base = base * base;
    exponent >>= 1;
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
  return os << e.value_;
}

Polynomial::Polynomial(FieldParams field) : field_(field) {}

Polynomial::Polynomial(FieldParams field, std::vector<FieldElement> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (const FieldElement& c : coeffs_) {
    if (c.field() != field_) {
      throw FieldMismatchError("polynomial coefficient from a foreign field");
    }
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Polynomial::coeff(size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : field_.zero();
}

FieldElement Polynomial::eval(FieldElement x) const {
  if (x.field() != field_) {
    throw FieldMismatchError("polynomial evaluated at a foreign-field point");
  }
  FieldElement acc = field_.zero();
  for (size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * x + coeffs_[i];
  }
  return acc;
}

Polynomial poly_from_roots(FieldParams field,
                           const std::vector<FieldElement>& roots) {
  // Running product of the monic linear factors (x - r).
  std::vector<FieldElement> coeffs{field.one()};
  for (const FieldElement& root : roots) {
    if (root.field() != field) {
      throw FieldMismatchError("root from a foreign field");
    }
    coeffs.push_back(field.zero());
    for (size_t i = coeffs.size(); i-- > 1;) {
      coeffs[i] = coeffs[i - 1] - root * coeffs[i];
    }
    coeffs[0] = -root * coeffs[0];
  }
  return Polynomial(field, std::move(coeffs));
}

}  // namespace pcsi
