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

#include <string>

#include "pcsi/protocol.hpp"

namespace pcsi {

// Database file, 13 + 2*K*m bytes exactly:
//   magic "PCSIDB" | version 0x01 | q u16 LE | K u16 LE | m u16 LE |
//   K*m element words (u16 LE), message-major.

inline constexpr uint8_t kDatabaseFileVersion = 0x01;
inline constexpr size_t kDatabaseHeaderSize = 13;

struct LoadedDatabase {
  FieldParams field;
  Database db;
};

void write_database_file(const std::string& path, const Database& db);

/// Throws WireError on bad magic, bad version, length mismatch, composite
/// q, or an element word >= q.
LoadedDatabase read_database_file(const std::string& path);

}  // namespace pcsi
