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

#include <stdexcept>
#include <string>

namespace pcsi {

/// Arithmetic mixed elements from two different GF(q) instances.
class FieldMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Multiplicative inverse of zero was requested.
class DivisionByZeroError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A message or evaluation-point index fell outside [0, K).
class InvalidIndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A GRS column multiplier was zero.
class InvalidMultiplierError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A side-information coefficient was zero.
class InvalidCoefficientError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The (demand, side-information-set) relation contradicts the declared model.
class ModelViolationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The field is too small for the requested operation (model II needs q >= 3).
class FieldTooSmallError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration would exceed its size guard.
class EnumerationTooLargeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Matrix, query, or database dimensions do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed bytes on the wire: bad magic, bad version, truncation,
/// or an element word outside [0, q).
class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Socket-level failure: connect, bind, send, or receive.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The server advertised parameters that differ from the client's.
class ParamsMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A protocol invariant that must be unbreakable was broken.
class InternalInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pcsi
