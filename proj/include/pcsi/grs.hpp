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
#include <map>
#include <vector>

#include "pcsi/field.hpp"
#include "pcsi/rng.hpp"

namespace pcsi {

/// Code-level configuration: the field and the K distinct evaluation points.
///
/// The canonical choice is omega_j = j (so the first point is 0); runs are
/// reproducible under it and privacy must not depend on it, which the
/// auditor checks. Custom points are accepted for testing. Message indices
/// are 0-based throughout.
class CodeParams {
 public:
  CodeParams(FieldParams field, std::vector<FieldElement> omegas);

  /// omega_j = j for j in [0, message_count).
  static CodeParams canonical(FieldParams field, size_t message_count);

  FieldParams field() const { return field_; }
  const std::vector<FieldElement>& omegas() const { return omegas_; }
  size_t message_count() const { return omegas_.size(); }

  bool operator==(const CodeParams& other) const {
    return field_ == other.field_ && omegas_ == other.omegas_;
  }

 private:
  FieldParams field_;
  std::vector<FieldElement> omegas_;
};

/// R x K matrix with entry (i, j) = v_j * omega_j^i. Row i of a generator
/// built by build_generator is the coordinatewise product of the multiplier
/// vector with the i-th powers of the evaluation points; every multiplier
/// is nonzero. Immutable after construction.
class GeneratorMatrix {
 public:
  GeneratorMatrix(FieldParams field, std::vector<FieldElement> multipliers,
                  std::vector<std::vector<FieldElement>> rows);

  /// Wraps raw rows with no structural validation. Diagnostic inputs (e.g.
  /// a matrix with a repeated evaluation point) enter the audits this way;
  /// the multiplier list is left empty.
  static GeneratorMatrix from_rows(FieldParams field,
                                   std::vector<std::vector<FieldElement>> rows);

  FieldParams field() const { return field_; }
  const std::vector<FieldElement>& multipliers() const { return multipliers_; }
  const std::vector<std::vector<FieldElement>>& rows() const { return rows_; }
  size_t num_rows() const { return rows_.size(); }
  size_t num_cols() const { return rows_.empty() ? 0 : rows_[0].size(); }

 private:
  FieldParams field_;
  std::vector<FieldElement> multipliers_;
  std::vector<std::vector<FieldElement>> rows_;
};

/// Monic polynomial vanishing exactly on the evaluation points whose index
/// is NOT in `excluded`: prod_{j not in excluded} (x - omega_j). Degree is
/// K - |excluded|; nonzero at omega_j for every j in excluded. Model I
/// passes excluded = S + {W}, model II passes excluded = S.
Polynomial build_annihilator(const CodeParams& params,
                             const std::vector<size_t>& excluded);

/// Multipliers for the model-I query: v_j = c_j / p(omega_j) on the side
/// information support, uniform over F_q^x elsewhere (including the demand
/// column). Free draws are consumed in increasing column order, one
/// uniform_below(q-1) each.
std::vector<FieldElement> derive_multipliers_model1(
    const CodeParams& params, const std::vector<size_t>& side_set,
    const std::vector<FieldElement>& coeffs, size_t demand,
    const Polynomial& annihilator, RandomSource& rng);

struct Model2Derivation {
  std::vector<FieldElement> multipliers;
  /// The blinding coefficient drawn uniformly from F_q^x minus {c_W}; the
  /// demand column gets v_W = blind / p(omega_W). The client keeps it for
  /// recovery.
  FieldElement blind;
};

/// Multipliers for the model-II query. Draw order: first the blinding
/// coefficient (uniform_below(q-2), mapped over F_q^x skipping c_W in
/// ascending order), then the free columns ascending, one
/// uniform_below(q-1) each.
Model2Derivation derive_multipliers_model2(
    const CodeParams& params, const std::vector<size_t>& side_set,
    const std::vector<FieldElement>& coeffs, size_t demand,
    const Polynomial& annihilator, RandomSource& rng);

/// The R x K generator with entry (i, j) = v_j * omega_j^i.
GeneratorMatrix build_generator(const CodeParams& params,
                                std::vector<FieldElement> multipliers,
                                size_t num_rows);

/// True iff every R x R column submatrix is nonsingular over GF(q).
bool is_mds(const GeneratorMatrix& g);

struct WeightCensus {
  size_t min_weight = 0;
  /// Support set (sorted column indices) -> number of codewords of weight
  /// min_weight carried on exactly that support.
  std::map<std::vector<size_t>, uint64_t> per_support;
  uint64_t total_min_weight_words = 0;
};

/// Enumerates all q^R codewords in the row space and counts the
/// minimum-nonzero-weight codewords per support. Guarded at q^R <= 10^7.
WeightCensus min_weight_support_census(const GeneratorMatrix& g);

}  // namespace pcsi
