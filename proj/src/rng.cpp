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

#include "pcsi/rng.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace pcsi {

uint32_t Mt19937Source::uniform_below(uint32_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below(0)");
  }
  if (bound == 1) return 0;
  const uint64_t span = std::numeric_limits<uint64_t>::max();
  const uint64_t limit = span - span % bound;
  uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return static_cast<uint32_t>(draw % bound);
}

uint32_t ScriptedSource::uniform_below(uint32_t bound) {
  if (next_ >= draws_.size()) {
    throw std::logic_error("scripted randomness exhausted");
  }
  uint32_t draw = draws_[next_++];
  if (draw >= bound) {
    throw std::logic_error("scripted draw " + std::to_string(draw) +
                           " out of range for bound " + std::to_string(bound));
  }
  return draw;
}

}  // namespace pcsi
