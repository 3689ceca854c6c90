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
#include <string>
#include <vector>

#include "pcsi/grs.hpp"
#include "pcsi/protocol.hpp"

namespace pcsi {

// Framed wire format. Every frame is:
//   magic "PCSI" | version 0x01 | kind | payload_len u32 LE | payload
// Field elements travel as 2-byte little-endian words, which is why the
// field modulus is capped below 2^16.

inline constexpr uint8_t kWireVersion = 0x01;
inline constexpr size_t kFrameHeaderSize = 10;
inline constexpr uint32_t kMaxPayload = (1u << 31) - 1;

enum class FrameKind : uint8_t {
  kHello = 0x01,
  kParams = 0x02,
  kQuery = 0x03,
  kAnswer = 0x04,
  kError = 0x7F,
};

enum class WireErrorCode : uint8_t {
  kMalformed = 0x01,
  kDimension = 0x02,
  kElementOutOfRange = 0x03,
  kUnexpectedKind = 0x04,
};

struct Frame {
  FrameKind kind = FrameKind::kHello;
  std::vector<uint8_t> payload;
};

std::vector<uint8_t> encode_frame(FrameKind kind,
                                  const std::vector<uint8_t>& payload);

/// Parses one complete frame; rejects bad magic, bad version, and payload
/// length mismatches with WireError.
Frame decode_frame(const std::vector<uint8_t>& bytes);

/// Header-only parse for incremental socket reads; returns (kind, length).
std::pair<FrameKind, uint32_t> decode_frame_header(const uint8_t* header);

// QUERY payload: model u8 | R u16 | K u16 | R*K element words, row-major.
std::vector<uint8_t> encode_query(const Query& query);
Query decode_query(const std::vector<uint8_t>& payload, FieldParams field);

// ANSWER payload: R u16 | m u16 | R*m element words, row-major.
std::vector<uint8_t> encode_answer(const Answer& answer);
Answer decode_answer(const std::vector<uint8_t>& payload, FieldParams field);

// PARAMS payload: q u16 | K u16 | M u16 | m u16 | model u8 | K omega words.
std::vector<uint8_t> encode_params(const ProtocolParams& params);
ProtocolParams decode_params(const std::vector<uint8_t>& payload);

// ERROR payload: code u8 | human-readable message bytes.
std::vector<uint8_t> encode_error(WireErrorCode code,
                                  const std::string& message);
std::pair<WireErrorCode, std::string> decode_error(
    const std::vector<uint8_t>& payload);

}  // namespace pcsi
