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

#include "pcsi/protocol.hpp"

#include <algorithm>
#include <string>

namespace pcsi {

ProtocolParams::ProtocolParams(Model model, size_t side_info_size,
                               size_t symbols_per_message, CodeParams code)
    : model_(model),
      side_info_size_(side_info_size),
      symbols_per_message_(symbols_per_message),
      code_(std::move(code)) {
  const size_t k = code_.message_count();
  if (symbols_per_message_ == 0) {
    throw std::invalid_argument("messages need at least one symbol");
  }
  if (model_ == Model::kOne) {
    if (side_info_size_ > k - 1) {
      throw ModelViolationError("model I needs 0 <= M <= K-1");
    }
  } else {
    if (side_info_size_ < 2 || side_info_size_ > k) {
      throw ModelViolationError("model II needs 2 <= M <= K");
    }
    if (code_.field().q() < 3) {
      throw FieldTooSmallError("model II needs q >= 3");
    }
  }
}

size_t ProtocolParams::answer_rows() const {
  return message_count() - side_info_size_ + (model_ == Model::kTwo ? 1 : 0);
}

Database::Database(FieldParams field, std::vector<Message> messages)
    : field_(field), messages_(std::move(messages)) {
  if (messages_.empty()) {
    throw DimensionError("database needs at least one message");
  }
  symbols_ = messages_[0].size();
  for (const Message& msg : messages_) {
    if (msg.size() != symbols_) {
      throw DimensionError("all messages must have the same length");
    }
    for (const FieldElement& e : msg) {
      if (e.field() != field_) {
        throw FieldMismatchError("database symbol from a foreign field");
      }
    }
  }
}

const Message& Database::message(size_t index) const {
  if (index >= messages_.size()) {
    throw InvalidIndexError("message index " + std::to_string(index) +
                            " out of range");
  }
  return messages_[index];
}

FieldElement SideInformation::coeff_for(size_t index) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), index);
  if (it == indices.end() || *it != index) {
    throw InvalidIndexError("index not in the side-information support");
  }
  return coeffs[it - indices.begin()];
}

namespace {

void require_instance_matches_model(const SideInformation& si,
                                    const ProtocolParams& params) {
  const bool demand_inside = std::binary_search(
      si.indices.begin(), si.indices.end(), si.demand);
  if (si.indices.size() != params.side_info_size()) {
    throw DimensionError("side-information support has the wrong size");
  }
  if (params.model() == Model::kOne && demand_inside) {
    throw ModelViolationError("model I forbids the demand inside S");
  }
  if (params.model() == Model::kTwo && !demand_inside) {
    throw ModelViolationError("model II requires the demand inside S");
  }
}

}  // namespace

SideInformation sample_instance(const ProtocolParams& params,
                                const Database& db, RandomSource& rng) {
  const size_t k = params.message_count();
  const size_t m_size = params.side_info_size();

  // Uniform size-M subset: partial Fisher-Yates over the index pool.
  std::vector<size_t> pool(k);
  for (size_t j = 0; j < k; ++j) pool[j] = j;
  for (size_t i = 0; i < m_size; ++i) {
    size_t j = i + rng.uniform_below(static_cast<uint32_t>(k - i));
    std::swap(pool[i], pool[j]);
  }

  SideInformation si;
  si.indices.assign(pool.begin(), pool.begin() + m_size);
  std::sort(si.indices.begin(), si.indices.end());
  si.coeffs.reserve(m_size);
  for (size_t i = 0; i < m_size; ++i) {
    si.coeffs.push_back(rng.nonzero_element(params.field()));
  }

  if (params.model() == Model::kOne) {
    // W uniform over the complement of S.
    size_t pick = rng.uniform_below(static_cast<uint32_t>(k - m_size));
    si.demand = pool[m_size + pick];
  } else {
    si.demand = si.indices[rng.uniform_below(static_cast<uint32_t>(m_size))];
  }

  si.combined = compute_side_info_value(si.indices, si.coeffs, db);
  return si;
}

Message compute_side_info_value(const std::vector<size_t>& indices,
                                const std::vector<FieldElement>& coeffs,
                                const Database& db) {
  if (indices.size() != coeffs.size()) {
    throw DimensionError("support and coefficient lists differ in length");
  }
  Message total(db.symbols_per_message(), db.field().zero());
  for (size_t i = 0; i < indices.size(); ++i) {
    const Message& msg = db.message(indices[i]);
    for (size_t t = 0; t < total.size(); ++t) {
      total[t] += coeffs[i] * msg[t];
    }
  }
  return total;
}

BuiltQuery client_build_query(const SideInformation& side_info,
                              const ProtocolParams& params,
                              RandomSource& rng) {
  require_instance_matches_model(side_info, params);
  const CodeParams& code = params.code();
  const size_t rows = params.answer_rows();

  Polynomial annihilator(params.field());
  std::vector<FieldElement> multipliers;
  std::optional<FieldElement> blind;
  FieldElement recovery_coeff = params.field().zero();

  if (params.model() == Model::kOne) {
    std::vector<size_t> excluded(side_info.indices);
    excluded.push_back(side_info.demand);
    annihilator = build_annihilator(code, excluded);
    multipliers =
        derive_multipliers_model1(code, side_info.indices, side_info.coeffs,
                                  side_info.demand, annihilator, rng);
    recovery_coeff = multipliers[side_info.demand] *
                     annihilator.eval(code.omegas()[side_info.demand]);
  } else {
    annihilator = build_annihilator(code, side_info.indices);
    Model2Derivation derived =
        derive_multipliers_model2(code, side_info.indices, side_info.coeffs,
                                  side_info.demand, annihilator, rng);
    multipliers = std::move(derived.multipliers);
    blind = derived.blind;
    recovery_coeff = derived.blind - side_info.coeff_for(side_info.demand);
  }
  if (recovery_coeff.is_zero()) {
    throw InternalInvariantError("recovery coefficient is zero");
  }

  GeneratorMatrix generator =
      build_generator(code, std::move(multipliers), rows);

  // Uniform permutation of the wire slots (Fisher-Yates, high slot first).
  std::vector<size_t> row_source(rows);
  for (size_t i = 0; i < rows; ++i) row_source[i] = i;
  for (size_t i = rows; i-- > 1;) {
    size_t j = rng.uniform_below(static_cast<uint32_t>(i + 1));
    std::swap(row_source[i], row_source[j]);
  }

  Query query;
  query.model = params.model();
  query.rows.reserve(rows);
  for (size_t t = 0; t < rows; ++t) {
    query.rows.push_back(generator.rows()[row_source[t]]);
  }

  ClientState state{std::move(row_source), std::move(annihilator), side_info,
                    blind, recovery_coeff};
  return BuiltQuery{std::move(query), std::move(state)};
}

Answer server_answer(const Query& query, const Database& db) {
  const size_t k = db.message_count();
  const size_t m = db.symbols_per_message();
  if (query.rows.empty()) {
    throw DimensionError("query carries no rows");
  }
  Answer answer;
  answer.values.reserve(query.rows.size());
  for (const auto& row : query.rows) {
    if (row.size() != k) {
      throw DimensionError("query row length != database message count");
    }
    Message value(m, db.field().zero());
    for (size_t j = 0; j < k; ++j) {
      if (row[j].field() != db.field()) {
        throw FieldMismatchError("query element from a foreign field");
      }
      if (row[j].is_zero()) continue;
      const Message& msg = db.message(j);
      for (size_t t = 0; t < m; ++t) {
        value[t] += row[j] * msg[t];
      }
    }
    answer.values.push_back(std::move(value));
  }
  return answer;
}

Message client_recover(const Answer& answer, const ClientState& state,
                       const ProtocolParams& params) {
  const size_t rows = state.row_source.size();
  const size_t m = params.symbols_per_message();
  if (answer.values.size() != rows) {
    throw DimensionError("answer row count != query row count");
  }
  if (state.recovery_coeff.is_zero()) {
    throw InternalInvariantError("recovery coefficient is zero");
  }

  // combo = sum_i p_i A_i with A_i the exponent-i value; coordinate j of the
  // underlying combination is v_j * p(omega_j).
  Message combo(m, params.field().zero());
  for (size_t t = 0; t < rows; ++t) {
    const Message& value = answer.values[t];
    if (value.size() != m) {
      throw DimensionError("answer value has the wrong symbol count");
    }
    FieldElement weight = state.annihilator.coeff(state.row_source[t]);
    for (size_t sym = 0; sym < m; ++sym) {
      combo[sym] += weight * value[sym];
    }
  }

  if (state.side_info.combined.size() != m) {
    throw DimensionError("side-information value has the wrong symbol count");
  }
  FieldElement scale = state.recovery_coeff.inv();
  Message demand(m, params.field().zero());
  for (size_t sym = 0; sym < m; ++sym) {
    demand[sym] = (combo[sym] - state.side_info.combined[sym]) * scale;
  }
  return demand;
}

LocalRunResult run_local(const ProtocolParams& params, const Database& db,
                         RandomSource& rng) {
  if (db.message_count() != params.message_count() ||
      db.symbols_per_message() != params.symbols_per_message() ||
      db.field() != params.field()) {
    throw DimensionError("database does not match the protocol parameters");
  }
  SideInformation si = sample_instance(params, db, rng);
  BuiltQuery built = client_build_query(si, params, rng);
  Answer answer = server_answer(built.query, db);
  Message recovered = client_recover(answer, built.state, params);
  return LocalRunResult{std::move(si), std::move(recovered),
                        answer.values.size() * params.symbols_per_message()};
}

}  // namespace pcsi
