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

#include "pcsi/wire.hpp"

#include <cstring>

namespace pcsi {

namespace {

constexpr char kMagic[4] = {'P', 'C', 'S', 'I'};

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<uint8_t>((v >> shift) & 0xFF));
  }
}

class Reader {
 public:
  Reader(const std::vector<uint8_t>& bytes) : bytes_(bytes) {}

  uint8_t u8() {
    require(1);
    return bytes_[pos_++];
  }

  uint16_t u16() {
    require(2);
    uint16_t v = static_cast<uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }

  size_t remaining() const { return bytes_.size() - pos_; }

  std::string rest() {
    std::string s(bytes_.begin() + pos_, bytes_.end());
    pos_ = bytes_.size();
    return s;
  }

  void expect_done() const {
    if (pos_ != bytes_.size()) {
      throw WireError("trailing bytes in payload");
    }
  }

 private:
  void require(size_t n) const {
    if (pos_ + n > bytes_.size()) {
      throw WireError("truncated payload");
    }
  }

  const std::vector<uint8_t>& bytes_;
  size_t pos_ = 0;
};

FieldElement checked_element(uint16_t word, FieldParams field) {
  if (word >= field.q()) {
    throw WireError("element-out-of-range: word " + std::to_string(word) +
                    " with q=" + std::to_string(field.q()));
  }
  return field.element(word);
}

}  // namespace

std::vector<uint8_t> encode_frame(FrameKind kind,
                                  const std::vector<uint8_t>& payload) {
  if (payload.size() > kMaxPayload) {
    throw WireError("payload too large");
  }
  std::vector<uint8_t> out;
  out.reserve(kFrameHeaderSize + payload.size());
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kWireVersion);
  out.push_back(static_cast<uint8_t>(kind));
  put_u32(out, static_cast<uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::pair<FrameKind, uint32_t> decode_frame_header(const uint8_t* header) {
  if (std::memcmp(header, kMagic, 4) != 0) {
    throw WireError("bad magic");
  }
  if (header[4] != kWireVersion) {
    throw WireError("unsupported protocol version " +
                    std::to_string(header[4]));
  }
  uint32_t len = 0;
  for (int i = 3; i >= 0; --i) {
    len = (len << 8) | header[6 + i];
  }
  if (len > kMaxPayload) {
    throw WireError("payload length out of range");
  }
  return {static_cast<FrameKind>(header[5]), len};
}

Frame decode_frame(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < kFrameHeaderSize) {
    throw WireError("truncated frame header");
  }
  auto [kind, len] = decode_frame_header(bytes.data());
  if (bytes.size() != kFrameHeaderSize + len) {
    throw WireError("payload length mismatch");
  }
  Frame frame;
  frame.kind = kind;
  frame.payload.assign(bytes.begin() + kFrameHeaderSize, bytes.end());
  return frame;
}

std::vector<uint8_t> encode_query(const Query& query) {
  std::vector<uint8_t> out;
  const size_t rows = query.rows.size();
  const size_t cols = rows == 0 ? 0 : query.rows[0].size();
  out.reserve(5 + 2 * rows * cols);
  out.push_back(static_cast<uint8_t>(query.model));
  put_u16(out, static_cast<uint16_t>(rows));
  put_u16(out, static_cast<uint16_t>(cols));
  for (const auto& row : query.rows) {
    for (const FieldElement& e : row) put_u16(out, e.value());
  }
  return out;
}

Query decode_query(const std::vector<uint8_t>& payload, FieldParams field) {
  Reader reader(payload);
  uint8_t model_byte = reader.u8();
  if (model_byte != 1 && model_byte != 2) {
    throw WireError("unknown model flag " + std::to_string(model_byte));
  }
  uint16_t rows = reader.u16();
  uint16_t cols = reader.u16();
  if (rows == 0 || cols == 0) {
    throw WireError("empty query");
  }
  Query query;
  query.model = static_cast<Model>(model_byte);
  query.rows.assign(rows, {});
  for (auto& row : query.rows) {
    row.reserve(cols);
    for (size_t j = 0; j < cols; ++j) {
      row.push_back(checked_element(reader.u16(), field));
    }
  }
  reader.expect_done();
  return query;
}

std::vector<uint8_t> encode_answer(const Answer& answer) {
  std::vector<uint8_t> out;
  const size_t rows = answer.values.size();
  const size_t symbols = rows == 0 ? 0 : answer.values[0].size();
  out.reserve(4 + 2 * rows * symbols);
  put_u16(out, static_cast<uint16_t>(rows));
  put_u16(out, static_cast<uint16_t>(symbols));
  for (const auto& value : answer.values) {
    for (const FieldElement& e : value) put_u16(out, e.value());
  }
  return out;
}

Answer decode_answer(const std::vector<uint8_t>& payload, FieldParams field) {
  Reader reader(payload);
  uint16_t rows = reader.u16();
  uint16_t symbols = reader.u16();
  Answer answer;
  answer.values.assign(rows, {});
  for (auto& value : answer.values) {
    value.reserve(symbols);
    for (size_t t = 0; t < symbols; ++t) {
      value.push_back(checked_element(reader.u16(), field));
    }
  }
  reader.expect_done();
  return answer;
}

std::vector<uint8_t> encode_params(const ProtocolParams& params) {
  std::vector<uint8_t> out;
  put_u16(out, params.field().q());
  put_u16(out, static_cast<uint16_t>(params.message_count()));
  put_u16(out, static_cast<uint16_t>(params.side_info_size()));
  put_u16(out, static_cast<uint16_t>(params.symbols_per_message()));
  out.push_back(static_cast<uint8_t>(params.model()));
  for (const FieldElement& w : params.code().omegas()) {
    put_u16(out, w.value());
  }
  return out;
}

ProtocolParams decode_params(const std::vector<uint8_t>& payload) {
  Reader reader(payload);
  uint16_t q = reader.u16();
  uint16_t k = reader.u16();
  uint16_t m_size = reader.u16();
  uint16_t symbols = reader.u16();
  uint8_t model_byte = reader.u8();
  if (model_byte != 1 && model_byte != 2) {
    throw WireError("unknown model flag " + std::to_string(model_byte));
  }
  FieldParams field(q);  // throws on composite q
  std::vector<FieldElement> omegas;
  omegas.reserve(k);
  for (size_t j = 0; j < k; ++j) {
    omegas.push_back(checked_element(reader.u16(), field));
  }
  reader.expect_done();
  return ProtocolParams(static_cast<Model>(model_byte), m_size, symbols,
                        CodeParams(field, std::move(omegas)));
}

std::vector<uint8_t> encode_error(WireErrorCode code,
                                  const std::string& message) {
  std::vector<uint8_t> out;
  out.push_back(static_cast<uint8_t>(code));
  out.insert(out.end(), message.begin(), message.end());
  return out;
}

std::pair<WireErrorCode, std::string> decode_error(
    const std::vector<uint8_t>& payload) {
  Reader reader(payload);
  WireErrorCode code = static_cast<WireErrorCode>(reader.u8());
  return {code, reader.rest()};
}

}  // namespace pcsi
