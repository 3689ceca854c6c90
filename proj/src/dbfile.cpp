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

#include "pcsi/dbfile.hpp"

#include <cstring>
#include <fstream>
#include <vector>

namespace pcsi {

namespace {

constexpr char kDbMagic[6] = {'P', 'C', 'S', 'I', 'D', 'B'};

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

uint16_t get_u16(const std::vector<uint8_t>& bytes, size_t pos) {
  return static_cast<uint16_t>(bytes[pos] | (bytes[pos + 1] << 8));
}

}  // namespace

void write_database_file(const std::string& path, const Database& db) {
  std::vector<uint8_t> bytes;
  bytes.reserve(kDatabaseHeaderSize +
                2 * db.message_count() * db.symbols_per_message());
  bytes.insert(bytes.end(), kDbMagic, kDbMagic + sizeof(kDbMagic));
  bytes.push_back(kDatabaseFileVersion);
  put_u16(bytes, db.field().q());
  put_u16(bytes, static_cast<uint16_t>(db.message_count()));
  put_u16(bytes, static_cast<uint16_t>(db.symbols_per_message()));
  for (const Message& msg : db.messages()) {
    for (const FieldElement& e : msg) put_u16(bytes, e.value());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("short write to '" + path + "'");
  }
}

LoadedDatabase read_database_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < kDatabaseHeaderSize) {
    throw WireError("database file too short");
  }
  if (std::memcmp(bytes.data(), kDbMagic, sizeof(kDbMagic)) != 0) {
    throw WireError("bad database magic");
  }
  if (bytes[6] != kDatabaseFileVersion) {
    throw WireError("unsupported database file version " +
                    std::to_string(bytes[6]));
  }
  uint16_t q = get_u16(bytes, 7);
  uint16_t message_count = get_u16(bytes, 9);
  uint16_t symbols = get_u16(bytes, 11);
  if (message_count == 0 || symbols == 0) {
    throw WireError("database file declares an empty database");
  }
  const size_t expected =
      kDatabaseHeaderSize + 2ull * message_count * symbols;
  if (bytes.size() != expected) {
    throw WireError("database file length " + std::to_string(bytes.size()) +
                    " != expected " + std::to_string(expected));
  }
  FieldParams field(q);  // rejects composite q
  std::vector<Message> messages;
  messages.reserve(message_count);
  size_t pos = kDatabaseHeaderSize;
  for (size_t i = 0; i < message_count; ++i) {
    Message msg;
    msg.reserve(symbols);
    for (size_t t = 0; t < symbols; ++t, pos += 2) {
      uint16_t word = get_u16(bytes, pos);
      if (word >= q) {
        throw WireError("element word " + std::to_string(word) +
                        " out of range for q=" + std::to_string(q));
      }
      msg.push_back(field.element(word));
    }
    messages.push_back(std::move(msg));
  }
  return LoadedDatabase{field, Database(field, std::move(messages))};
}

}  // namespace pcsi
