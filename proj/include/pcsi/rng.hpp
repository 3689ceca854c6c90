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
#include <random>
#include <vector>

#include "pcsi/field.hpp"

namespace pcsi {

/// Source of uniform draws. Protocol code takes this interface so that
/// the privacy auditor can replay the exact same code path with scripted
/// draws, one randomness atom at a time.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  /// Uniform draw from [0, bound), bound >= 1.
  virtual uint32_t uniform_below(uint32_t bound) = 0;

  /// Uniform element of F_q^x (never zero).
  FieldElement nonzero_element(FieldParams field) {
    return field.element(1 + uniform_below(field.q() - 1u));
  }
};

/// Seeded generator backed by mt19937_64. Range reduction uses rejection
/// sampling, so a given seed yields the same draw sequence on every
/// platform and every draw is exactly uniform.
class Mt19937Source final : public RandomSource {
 public:
  explicit Mt19937Source(uint64_t seed) : engine_(seed) {}

  uint32_t uniform_below(uint32_t bound) override;

 private:
  std::mt19937_64 engine_;
};

/// Replays a fixed list of draws. Each uniform_below call consumes the next
/// scripted value and checks it lies below the requested bound; running out
/// of draws or a bound mismatch means the caller consumed randomness in an
/// order the script did not anticipate, which is a hard error.
class ScriptedSource final : public RandomSource {
 public:
  explicit ScriptedSource(std::vector<uint32_t> draws)
      : draws_(std::move(draws)) {}

  uint32_t uniform_below(uint32_t bound) override;

  bool exhausted() const { return next_ == draws_.size(); }

 private:
  std::vector<uint32_t> draws_;
  size_t next_ = 0;
};

}  // namespace pcsi
