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
#include <vector>

#include "pcsi/errors.hpp"

namespace pcsi {

class FieldElement;

/// The prime field GF(q), 2 <= q < 2^16.
///
/// q is capped below 2^16 so an element always serializes as one 2-byte
/// little-endian word on the wire. Primality is verified eagerly by trial
/// division; a composite modulus is a construction-time error.
class FieldParams {
 public:
  explicit FieldParams(uint32_t modulus);

  uint16_t q() const { return q_; }

  /// Element with the given residue, reduced into [0, q).
  FieldElement element(uint64_t residue) const;
  FieldElement zero() const;
  FieldElement one() const;

  bool operator==(const FieldParams& other) const { return q_ == other.q_; }
  bool operator!=(const FieldParams& other) const { return q_ != other.q_; }

 private:
  uint16_t q_;
};

/// A residue in [0, q). Pure value type; every element carries its modulus
/// and arithmetic between elements of different fields throws
/// FieldMismatchError.
class FieldElement {
 public:
  FieldElement(uint16_t value, FieldParams params);

  uint16_t value() const { return value_; }
  FieldParams field() const { return FieldParams(q_); }
  uint16_t modulus() const { return q_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(FieldElement other) const;
  FieldElement operator-(FieldElement other) const;
  FieldElement operator*(FieldElement other) const;
  FieldElement operator-() const;

  FieldElement& operator+=(FieldElement other) { return *this = *this + other; }
  FieldElement& operator-=(FieldElement other) { return *this = *this - other; }
  FieldElement& operator*=(FieldElement other) { return *this = *this * other; }

  /// Multiplicative inverse by extended Euclid; throws DivisionByZeroError
  /// on zero.
  FieldElement inv() const;

  /// this^exponent by square-and-multiply; 0^0 = 1.
  FieldElement pow(uint64_t exponent) const;

  bool operator==(const FieldElement& other) const {
    return value_ == other.value_ && q_ == other.q_;
  }
  bool operator!=(const FieldElement& other) const { return !(*this == other); }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e);

 private:
  void require_same_field(const FieldElement& other) const;

  uint16_t value_;
  uint16_t q_;
};

/// Univariate polynomial over GF(q); coeffs_[i] is the coefficient of x^i.
/// Trailing zero coefficients are trimmed, so the zero polynomial has an
/// empty coefficient list and degree() == -1.
class Polynomial {
 public:
  /// The zero polynomial.
  explicit Polynomial(FieldParams field);
  Polynomial(FieldParams field, std::vector<FieldElement> coeffs);

  FieldParams field() const { return field_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::ptrdiff_t degree() const {
    return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1;
  }

  /// Coefficient of x^i, zero beyond the degree.
  FieldElement coeff(size_t i) const;

  /// Horner evaluation at x.
  FieldElement eval(FieldElement x) const;

  bool operator==(const Polynomial& other) const {
    return field_ == other.field_ && coeffs_ == other.coeffs_;
  }

 private:
  FieldParams field_;
  std::vector<FieldElement> coeffs_;
};

/// Monic polynomial prod_{r in roots} (x - r); the empty product is the
/// constant 1.
Polynomial poly_from_roots(FieldParams field,
                           const std::vector<FieldElement>& roots);

}  // namespace pcsi
