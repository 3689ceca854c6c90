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

#include "pcsi/grs.hpp"

#include <algorithm>
#include <string>

namespace pcsi {

namespace {

constexpr uint64_t kEnumerationGuard = 10'000'000;

void require_indices_in_range(const std::vector<size_t>& indices, size_t k) {
  for (size_t j : indices) {
    if (j >= k) {
      throw InvalidIndexError("index " + std::to_string(j) +
                              " out of range for K=" + std::to_string(k));
    }
  }
}

bool contains(const std::vector<size_t>& sorted, size_t j) {
  return std::binary_search(sorted.begin(), sorted.end(), j);
}

// Gaussian elimination over GF(q); true iff the square matrix is
// nonsingular.
bool nonsingular(std::vector<std::vector<FieldElement>> m, FieldParams field) {
  const size_t n = m.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return false;
    std::swap(m[col], m[pivot]);
    FieldElement inv = m[col][col].inv();
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      FieldElement factor = m[r][col] * inv;
      for (size_t c = col; c < n; ++c) {
        m[r][c] = m[r][c] - factor * m[col][c];
      }
    }
  }
  (void)field;
  return true;
}

}  // namespace

CodeParams::CodeParams(FieldParams field, std::vector<FieldElement> omegas)
    : field_(field), omegas_(std::move(omegas)) {
  const size_t k = omegas_.size();
  if (k == 0) {
    throw std::invalid_argument("code needs at least one evaluation point");
  }
  if (field_.q() < k) {
    throw FieldTooSmallError("q=" + std::to_string(field_.q()) +
                             " < K=" + std::to_string(k) +
                             "; need K distinct evaluation points");
  }
  std::vector<bool> seen(field_.q(), false);
  for (const FieldElement& w : omegas_) {
    if (w.field() != field_) {
      throw FieldMismatchError("evaluation point from a foreign field");
    }
    if (seen[w.value()]) {
      throw std::invalid_argument("evaluation points must be distinct");
    }
    seen[w.value()] = true;
  }
}

CodeParams CodeParams::canonical(FieldParams field, size_t message_count) {
  std::vector<FieldElement> omegas;
  omegas.reserve(message_count);
  for (size_t j = 0; j < message_count; ++j) {
    omegas.push_back(field.element(j));
  }
  return CodeParams(field, std::move(omegas));
}

GeneratorMatrix::GeneratorMatrix(FieldParams field,
                                 std::vector<FieldElement> multipliers,
                                 std::vector<std::vector<FieldElement>> rows)
    : field_(field),
      multipliers_(std::move(multipliers)),
      rows_(std::move(rows)) {
  for (const auto& row : rows_) {
    if (row.size() != rows_[0].size()) {
      throw DimensionError("ragged generator matrix");
    }
  }
}

GeneratorMatrix GeneratorMatrix::from_rows(
    FieldParams field, std::vector<std::vector<FieldElement>> rows) {
  return GeneratorMatrix(field, {}, std::move(rows));
}

Polynomial build_annihilator(const CodeParams& params,
                             const std::vector<size_t>& excluded) {
  const size_t k = params.message_count();
  require_indices_in_range(excluded, k);
  std::vector<size_t> sorted(excluded);
  std::sort(sorted.begin(), sorted.end());
  std::vector<FieldElement> roots;
  roots.reserve(k - sorted.size());
  for (size_t j = 0; j < k; ++j) {
    if (!contains(sorted, j)) roots.push_back(params.omegas()[j]);
  }
  return poly_from_roots(params.field(), roots);
}

std::vector<FieldElement> derive_multipliers_model1(
    const CodeParams& params, const std::vector<size_t>& side_set,
    const std::vector<FieldElement>& coeffs, size_t demand,
    const Polynomial& annihilator, RandomSource& rng) {
  const size_t k = params.message_count();
  require_indices_in_range(side_set, k);
  if (demand >= k) {
    throw InvalidIndexError("demand index out of range");
  }
  if (contains(side_set, demand) ||
      !std::is_sorted(side_set.begin(), side_set.end())) {
    throw ModelViolationError(
        "model I needs the demand outside the sorted side-information set");
  }
  if (coeffs.size() != side_set.size()) {
    throw DimensionError("coefficient count != side-information size");
  }
  std::vector<FieldElement> multipliers;
  multipliers.reserve(k);
  size_t s_pos = 0;
  for (size_t j = 0; j < k; ++j) {
    if (s_pos < side_set.size() && side_set[s_pos] == j) {
      const FieldElement& c = coeffs[s_pos];
      if (c.is_zero()) {
        throw InvalidCoefficientError("side-information coefficient is zero");
      }
      multipliers.push_back(c * annihilator.eval(params.omegas()[j]).inv());
      ++s_pos;
    } else {
      multipliers.push_back(rng.nonzero_element(params.field()));
    }
  }
  return multipliers;
}

Model2Derivation derive_multipliers_model2(
    const CodeParams& params, const std::vector<size_t>& side_set,
    const std::vector<FieldElement>& coeffs, size_t demand,
    const Polynomial& annihilator, RandomSource& rng) {
  const size_t k = params.message_count();
  const uint16_t q = params.field().q();
  require_indices_in_range(side_set, k);
  if (!contains(side_set, demand) ||
      !std::is_sorted(side_set.begin(), side_set.end())) {
    throw ModelViolationError(
        "model II needs the demand inside the sorted side-information set");
  }
  if (coeffs.size() != side_set.size()) {
    throw DimensionError("coefficient count != side-information size");
  }
  if (q < 3) {
    throw FieldTooSmallError(
        "model II needs q >= 3: F_q^x minus {c_W} must be nonempty");
  }
  const size_t demand_pos =
      std::lower_bound(side_set.begin(), side_set.end(), demand) -
      side_set.begin();
  const FieldElement demand_coeff = coeffs[demand_pos];
  if (demand_coeff.is_zero()) {
    throw InvalidCoefficientError("side-information coefficient is zero");
  }

  // Uniform over F_q^x minus {c_W}: draw from q-2 slots, ascending order
  // skips the excluded value.
  uint16_t candidate = static_cast<uint16_t>(1 + rng.uniform_below(q - 2u));
  if (candidate >= demand_coeff.value()) ++candidate;
  const FieldElement blind = params.field().element(candidate);

  std::vector<FieldElement> multipliers;
  multipliers.reserve(k);
  size_t s_pos = 0;
  for (size_t j = 0; j < k; ++j) {
    if (s_pos < side_set.size() && side_set[s_pos] == j) {
      const FieldElement& c = coeffs[s_pos];
      if (c.is_zero()) {
        throw InvalidCoefficientError("side-information coefficient is zero");
      }
      FieldElement numerator = (j == demand) ? blind : c;
      multipliers.push_back(numerator *
                            annihilator.eval(params.omegas()[j]).inv());
      ++s_pos;
    } else {
      multipliers.push_back(rng.nonzero_element(params.field()));
    }
  }
  return Model2Derivation{std::move(multipliers), blind};
}

GeneratorMatrix build_generator(const CodeParams& params,
                                std::vector<FieldElement> multipliers,
                                size_t num_rows) {
  const size_t k = params.message_count();
  if (multipliers.size() != k) {
    throw DimensionError("need exactly K multipliers");
  }
  if (num_rows < 1 || num_rows > k) {
    throw DimensionError("row count must be in [1, K]");
  }
  for (const FieldElement& v : multipliers) {
    if (v.is_zero()) {
      throw InvalidMultiplierError("generator multipliers must be nonzero");
    }
    if (v.field() != params.field()) {
      throw FieldMismatchError("multiplier from a foreign field");
    }
  }
  std::vector<std::vector<FieldElement>> rows;
  rows.reserve(num_rows);
  std::vector<FieldElement> current(multipliers);  // v_j * omega_j^0
  for (size_t i = 0; i < num_rows; ++i) {
    rows.push_back(current);
    if (i + 1 < num_rows) {
      for (size_t j = 0; j < k; ++j) {
        current[j] = current[j] * params.omegas()[j];
      }
    }
  }
  return GeneratorMatrix(params.field(), std::move(multipliers),
                         std::move(rows));
}

bool is_mds(const GeneratorMatrix& g) {
  const size_t r = g.num_rows();
  const size_t k = g.num_cols();
  if (r == 0 || r > k) return false;
  // Walk every size-r column subset.
  std::vector<size_t> cols(r);
  for (size_t i = 0; i < r; ++i) cols[i] = i;
  while (true) {
    std::vector<std::vector<FieldElement>> sub(
        r, std::vector<FieldElement>(r, g.field().zero()));
    for (size_t i = 0; i < r; ++i) {
      for (size_t j = 0; j < r; ++j) sub[i][j] = g.rows()[i][cols[j]];
    }
    if (!nonsingular(std::move(sub), g.field())) return false;
    // Next combination in lexicographic order.
    size_t i = r;
    while (i-- > 0) {
      if (cols[i] != i + k - r) {
        ++cols[i];
        for (size_t j = i + 1; j < r; ++j) cols[j] = cols[j - 1] + 1;
        break;
      }
      if (i == 0) return true;
    }
  }
}

namespace {

void census_walk(const GeneratorMatrix& g, size_t row,
                 std::vector<FieldElement>& word, WeightCensus& census) {
  const uint16_t q = g.field().q();
  if (row == g.num_rows()) {
    size_t weight = 0;
    for (const FieldElement& e : word) {
      if (!e.is_zero()) ++weight;
    }
    if (weight == 0) return;
    if (census.per_support.empty() || weight < census.min_weight) {
      census.min_weight = weight;
      census.per_support.clear();
      census.total_min_weight_words = 0;
    }
    if (weight == census.min_weight) {
      std::vector<size_t> support;
      support.reserve(weight);
      for (size_t j = 0; j < word.size(); ++j) {
        if (!word[j].is_zero()) support.push_back(j);
      }
      ++census.per_support[support];
      ++census.total_min_weight_words;
    }
    return;
  }
  std::vector<FieldElement> saved(word);
  for (uint16_t lambda = 0; lambda < q; ++lambda) {
    if (lambda == 0) {
      census_walk(g, row + 1, word, census);
    } else {
      for (size_t j = 0; j < word.size(); ++j) {
        word[j] = saved[j] + g.field().element(lambda) * g.rows()[row][j];
      }
      census_walk(g, row + 1, word, census);
    }
  }
  word = saved;
}

}  // namespace

WeightCensus min_weight_support_census(const GeneratorMatrix& g) {
  const uint16_t q = g.field().q();
  uint64_t space = 1;
  for (size_t i = 0; i < g.num_rows(); ++i) {
    space *= q;
    if (space > kEnumerationGuard) {
      throw EnumerationTooLargeError(
          "codeword space q^R exceeds 10^7 at q=" + std::to_string(q) +
          ", R=" + std::to_string(g.num_rows()));
    }
  }
  WeightCensus census;
  std::vector<FieldElement> word(g.num_cols(), g.field().zero());
  census_walk(g, 0, word, census);
  return census;
}

}  // namespace pcsi
