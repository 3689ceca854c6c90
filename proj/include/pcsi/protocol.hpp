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
#include <optional>
#include <vector>

#include "pcsi/field.hpp"
#include "pcsi/grs.hpp"
#include "pcsi/rng.hpp"

namespace pcsi {

/// Whether the demand index lies outside (I) or inside (II) the
/// side-information support. The server knows this bit a priori.
enum class Model : uint8_t {
  kOne = 1,
  kTwo = 2,
};

/// One database message: m symbols of GF(q), the coordinate-vector view of
/// an element of F_{q^m}. Protocol arithmetic only ever scales messages by
/// base-field scalars, so no extension-field multiplication exists here.
using Message = std::vector<FieldElement>;

/// Full protocol configuration. Model I allows 0 <= M <= K-1, model II
/// needs 2 <= M <= K and q >= 3; q >= K always.
class ProtocolParams {
 public:
  ProtocolParams(Model model, size_t side_info_size,
                 size_t symbols_per_message, CodeParams code);

  Model model() const { return model_; }
  size_t message_count() const { return code_.message_count(); }  // K
  size_t side_info_size() const { return side_info_size_; }       // M
  size_t symbols_per_message() const { return symbols_per_message_; }
  const CodeParams& code() const { return code_; }
  FieldParams field() const { return code_.field(); }

  /// Rows per query/answer: K-M for model I, K-M+1 for model II.
  size_t answer_rows() const;

  bool operator==(const ProtocolParams& other) const {
    return model_ == other.model_ && side_info_size_ == other.side_info_size_ &&
           symbols_per_message_ == other.symbols_per_message_ &&
           code_ == other.code_;
  }

 private:
  Model model_;
  size_t side_info_size_;
  size_t symbols_per_message_;
  CodeParams code_;
};

/// The K stored messages, each m symbols over the same field.
class Database {
 public:
  Database(FieldParams field, std::vector<Message> messages);

  FieldParams field() const { return field_; }
  size_t message_count() const { return messages_.size(); }
  size_t symbols_per_message() const { return symbols_; }
  const Message& message(size_t index) const;
  const std::vector<Message>& messages() const { return messages_; }

 private:
  FieldParams field_;
  size_t symbols_;
  std::vector<Message> messages_;
};

/// What the user holds before the protocol runs: the support S (sorted),
/// the nonzero coefficients C aligned with S, the combined value
/// Y = sum c_i X_i, and the demand index W.
struct SideInformation {
  std::vector<size_t> indices;           // S
  std::vector<FieldElement> coeffs;      // C, parallel to indices
  Message combined;                      // Y
  size_t demand = 0;                     // W

  /// Coefficient attached to a support index; throws if absent.
  FieldElement coeff_for(size_t index) const;
};

/// The ordered row list the server receives, tagged with the public model
/// bit. Rows are already permuted; the server never sees the original
/// exponent order.
struct Query {
  Model model = Model::kOne;
  std::vector<std::vector<FieldElement>> rows;  // R x K
};

/// Client secrets kept between query and recovery.
struct ClientState {
  /// row_source[t] = exponent index of the generator row at wire slot t.
  std::vector<size_t> row_source;
  Polynomial annihilator;
  SideInformation side_info;
  /// Model II only: the drawn blinding coefficient.
  std::optional<FieldElement> blind;
  /// v_W * p(omega_W) for model I, blind - c_W for model II. Nonzero by
  /// construction; recovery divides by it.
  FieldElement recovery_coeff;
};

/// The R parity values, positionally aligned with the query rows.
struct Answer {
  std::vector<Message> values;  // R x m
};

/// Draws (W, S, C) under the model's joint PMF: S uniform over size-M
/// subsets, C uniform over (F_q^x)^M, W uniform over the complement of S
/// (model I) or over S (model II); Y is computed from the database.
SideInformation sample_instance(const ProtocolParams& params,
                                const Database& db, RandomSource& rng);

/// sum_{i in S} c_i X_i, coordinatewise over GF(q).
Message compute_side_info_value(const std::vector<size_t>& indices,
                                const std::vector<FieldElement>& coeffs,
                                const Database& db);

struct BuiltQuery {
  Query query;
  ClientState state;
};

/// Steps 1-2 of the protocol: annihilator polynomial, multipliers, the
/// R x K generator rows, and a uniformly random row permutation.
/// Reads only (S, C, W) from the side information, never Y.
BuiltQuery client_build_query(const SideInformation& side_info,
                              const ProtocolParams& params, RandomSource& rng);

/// Step 3: values[i] = sum_j rows[i][j] * X_j. The server treats rows as
/// opaque coefficient vectors; nothing here inspects GRS structure, and the
/// output is a deterministic function of (query bytes, database).
Answer server_answer(const Query& query, const Database& db);

/// Step 4: un-permutes the answer, forms sum_i p_i A_i (coefficient p_i on
/// the exponent-i row), subtracts the side information, and divides by the
/// retained recovery coefficient. Returns exactly X_W.
Message client_recover(const Answer& answer, const ClientState& state,
                       const ProtocolParams& params);

struct LocalRunResult {
  SideInformation side_info;
  Message recovered;
  size_t downloaded_symbols = 0;  // R * m
};

/// Samples an instance and runs all four steps in-process.
LocalRunResult run_local(const ProtocolParams& params, const Database& db,
                         RandomSource& rng);

}  // namespace pcsi
