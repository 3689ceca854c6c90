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

#include "pcsi/audit.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace pcsi {

namespace {

constexpr uint64_t kAtomGuard = 100'000'000;
constexpr uint64_t kRowSpaceGuard = 10'000'000;

uint64_t binomial(size_t n, size_t k) {
  if (k > n) return 0;
  uint64_t result = 1;
  for (size_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
  }
  return result;
}

// Multiplication that pins at UINT64_MAX instead of wrapping; guard
// comparisons stay meaningful for any atom-space size.
uint64_t saturating_mul(uint64_t a, uint64_t b) {
  __uint128_t product = static_cast<__uint128_t>(a) * b;
  return product > std::numeric_limits<uint64_t>::max()
             ? std::numeric_limits<uint64_t>::max()
             : static_cast<uint64_t>(product);
}

/// Calls fn(subset) for every sorted size-m subset of {0..k-1}.
void for_each_subset(size_t k, size_t m,
                     const std::function<void(const std::vector<size_t>&)>& fn) {
  std::vector<size_t> subset(m);
  for (size_t i = 0; i < m; ++i) subset[i] = i;
  if (m > k) return;
  while (true) {
    fn(subset);
    size_t i = m;
    bool advanced = false;
    while (i-- > 0) {
      if (subset[i] != i + k - m) {
        ++subset[i];
        for (size_t j = i + 1; j < m; ++j) subset[j] = subset[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced || m == 0) return;
  }
}

bool next_digits(std::vector<uint32_t>& digits,
                 const std::vector<uint32_t>& radixes) {
  for (size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < radixes[i]) return true;
    digits[i] = 0;
  }
  return false;
}

QueryKey flatten_query(const Query& query) {
  QueryKey key;
  for (const auto& row : query.rows) {
    for (const FieldElement& e : row) key.push_back(e.value());
  }
  return key;
}

}  // namespace

std::vector<uint32_t> protocol_atom_radixes(const ProtocolParams& params) {
  const uint32_t q = params.field().q();
  const size_t free_columns =
      params.message_count() - params.side_info_size();
  std::vector<uint32_t> radixes;
  if (params.model() == Model::kTwo) {
    radixes.push_back(q - 2u);  // blinding coefficient
  }
  radixes.insert(radixes.end(), free_columns, q - 1u);
  for (size_t i = params.answer_rows(); i-- > 1;) {
    radixes.push_back(static_cast<uint32_t>(i + 1));  // Fisher-Yates swaps
  }
  return radixes;
}

AuditReport enumerate_posterior(const ProtocolParams& params) {
  QueryBuilder real_path = [](const SideInformation& si,
                              const ProtocolParams& p, RandomSource& rng) {
    return client_build_query(si, p, rng).query;
  };
  return enumerate_posterior_with(params, protocol_atom_radixes(params),
                                  real_path);
}

AuditReport enumerate_posterior_with(const ProtocolParams& params,
                                     const std::vector<uint32_t>& atom_radixes,
                                     const QueryBuilder& builder) {
  const size_t k = params.message_count();
  const size_t m_size = params.side_info_size();
  const uint32_t q = params.field().q();
  const bool model_two = params.model() == Model::kTwo;

  uint64_t randomness_atoms = 1;
  for (uint32_t radix : atom_radixes) {
    randomness_atoms = saturating_mul(randomness_atoms, radix);
  }
  uint64_t coeff_space = 1;
  for (size_t i = 0; i < m_size; ++i) {
    coeff_space = saturating_mul(coeff_space, q - 1);
  }
  const uint64_t demand_space = model_two ? m_size : k - m_size;
  const uint64_t pair_count = binomial(k, m_size) * demand_space;
  const uint64_t total = saturating_mul(
      saturating_mul(pair_count, coeff_space), randomness_atoms);
  if (total > kAtomGuard || pair_count == 0) {
    throw EnumerationTooLargeError(
        "privacy enumeration needs " + std::to_string(total) +
        " atoms; the guard is " + std::to_string(kAtomGuard));
  }

  AuditReport report;
  report.model = params.model();
  report.q = static_cast<uint16_t>(q);
  report.message_count = k;
  report.side_info_size = m_size;
  report.atoms_per_pair = coeff_space * randomness_atoms;

  // Prior straight from the model PMFs: (K-M)^-1 C(K,M)^-1 or
  // M^-1 C(K,M)^-1 per valid pair.
  report.prior_per_pair =
      Rational(1, static_cast<int64_t>(demand_space)) *
      Rational(1, static_cast<int64_t>(binomial(k, m_size)));

  std::vector<uint32_t> coeff_radixes(m_size, q - 1u);

  for_each_subset(k, m_size, [&](const std::vector<size_t>& side_set) {
    std::vector<size_t> demands;
    if (model_two) {
      demands = side_set;
    } else {
      for (size_t j = 0; j < k; ++j) {
        if (!std::binary_search(side_set.begin(), side_set.end(), j)) {
          demands.push_back(j);
        }
      }
    }
    for (size_t demand : demands) {
      PairKey pair{demand, side_set};
      report.priors[pair] = report.prior_per_pair;

      std::vector<uint32_t> coeff_digits(m_size, 0);
      do {
        SideInformation si;
        si.indices = side_set;
        si.demand = demand;
        for (size_t i = 0; i < m_size; ++i) {
          si.coeffs.push_back(params.field().element(coeff_digits[i] + 1));
        }
        si.combined.assign(params.symbols_per_message(),
                           params.field().zero());

        std::vector<uint32_t> atom_digits(atom_radixes.size(), 0);
        do {
          ScriptedSource source(
              std::vector<uint32_t>(atom_digits.begin(), atom_digits.end()));
          Query query = builder(si, params, source);
          if (!source.exhausted()) {
            throw InternalInvariantError(
                "query builder left scripted draws unconsumed");
          }
          ++report.counts[flatten_query(query)][pair];
          ++report.total_atoms;
        } while (next_digits(atom_digits, atom_radixes));
      } while (next_digits(coeff_digits, coeff_radixes));
    }
  });

  // Conservation: every pair must have contributed exactly its whole
  // randomness space.
  std::map<PairKey, uint64_t> per_pair;
  for (const auto& [key, pairs] : report.counts) {
    for (const auto& [pair, count] : pairs) per_pair[pair] += count;
  }
  if (per_pair.size() != pair_count) {
    throw InternalInvariantError("audit lost track of a (W,S) pair");
  }
  for (const auto& [pair, count] : per_pair) {
    if (count != report.atoms_per_pair) {
      throw InternalInvariantError("audit atom conservation failed");
    }
  }

  // Worst |posterior - prior| over all realized queries and valid pairs.
  report.worst_deviation = Rational();
  for (const auto& [key, pairs] : report.counts) {
    uint64_t query_total = 0;
    for (const auto& [pair, count] : pairs) query_total += count;
    for (const auto& [pair, prior] : report.priors) {
      uint64_t count = 0;
      auto it = pairs.find(pair);
      if (it != pairs.end()) count = it->second;
      Rational posterior(static_cast<int64_t>(count),
                         static_cast<int64_t>(query_total));
      Rational deviation = (posterior - prior).abs();
      if (deviation > report.worst_deviation) {
        report.worst_deviation = deviation;
        report.worst_query = key;
        report.worst_pair = pair;
      }
    }
  }
  report.pass = report.worst_deviation.is_zero();
  return report;
}

PrivacyCheck check_ws_privacy(const AuditReport& report) {
  if (report.counts.empty() || report.total_atoms == 0) {
    throw std::invalid_argument("malformed audit report: no atoms counted");
  }
  PrivacyCheck check;
  check.pass = true;
  check.worst_deviation = Rational();
  const PairKey* offender = nullptr;
  const QueryKey* offending_query = nullptr;
  for (const auto& [key, pairs] : report.counts) {
    uint64_t query_total = 0;
    for (const auto& [pair, count] : pairs) query_total += count;
    for (const auto& [pair, prior] : report.priors) {
      uint64_t count = 0;
      auto it = pairs.find(pair);
      if (it != pairs.end()) count = it->second;
      Rational posterior(static_cast<int64_t>(count),
                         static_cast<int64_t>(query_total));
      Rational deviation = (posterior - prior).abs();
      if (deviation > check.worst_deviation) {
        check.worst_deviation = deviation;
        offender = &pair;
        offending_query = &key;
        check.pass = false;
      }
    }
  }

  std::ostringstream out;
  out << "(W,S)-privacy audit: model "
      << (report.model == Model::kOne ? "I" : "II") << ", q=" << report.q
      << ", K=" << report.message_count << ", M=" << report.side_info_size
      << "; " << report.total_atoms << " atoms over " << report.counts.size()
      << " distinct queries; prior " << report.prior_per_pair.to_string()
      << " per pair; worst deviation " << check.worst_deviation.to_string()
      << "; " << (check.pass ? "PASS" : "FAIL");
  if (!check.pass && offender != nullptr) {
    out << "\n  offending pair: W=" << offender->demand << " S={";
    for (size_t i = 0; i < offender->side_set.size(); ++i) {
      out << (i ? "," : "") << offender->side_set[i];
    }
    out << "} at query [";
    for (size_t i = 0; i < offending_query->size(); ++i) {
      out << (i ? " " : "") << (*offending_query)[i];
    }
    out << "]";
  }
  check.summary = out.str();
  return check;
}

namespace {

void lemma1_walk(const GeneratorMatrix& g, size_t row,
                 std::vector<FieldElement>& word, size_t target_weight,
                 std::map<PairKey, std::vector<FieldElement>>& witnesses,
                 int theta) {
  const uint16_t q = g.field().q();
  if (row == g.num_rows()) {
    std::vector<size_t> support;
    for (size_t j = 0; j < word.size(); ++j) {
      if (!word[j].is_zero()) support.push_back(j);
    }
    if (support.size() != target_weight) return;
    for (size_t demand : support) {
      PairKey pair;
      pair.demand = demand;
      if (theta == 0) {
        for (size_t j : support) {
          if (j != demand) pair.side_set.push_back(j);
        }
      } else {
        pair.side_set = support;
      }
      witnesses.emplace(pair, word);
    }
    return;
  }
  std::vector<FieldElement> saved(word);
  for (uint16_t lambda = 0; lambda < q; ++lambda) {
    if (lambda != 0) {
      for (size_t j = 0; j < word.size(); ++j) {
        word[j] = saved[j] + g.field().element(lambda) * g.rows()[row][j];
      }
    }
    lemma1_walk(g, row + 1, word, target_weight, witnesses, theta);
  }
  word = saved;
}

}  // namespace

Lemma1Result audit_lemma1(const GeneratorMatrix& g, int theta,
                          const ProtocolParams& params) {
  const uint16_t q = g.field().q();
  uint64_t space = 1;
  for (size_t i = 0; i < g.num_rows(); ++i) {
    space *= q;
    if (space > kRowSpaceGuard) {
      throw EnumerationTooLargeError("row space q^R exceeds 10^7");
    }
  }
  const size_t m_size = params.side_info_size();
  // The witness support is S* + {W*}: size M+1 when the demand is outside,
  // M when it is inside.
  const size_t target_weight = theta == 0 ? m_size + 1 : m_size;

  Lemma1Result result;
  std::vector<FieldElement> word(g.num_cols(), g.field().zero());
  lemma1_walk(g, 0, word, target_weight, result.witnesses, theta);

  result.pass = true;
  for_each_subset(g.num_cols(), m_size, [&](const std::vector<size_t>& side) {
    if (theta == 0) {
      for (size_t demand = 0; demand < g.num_cols(); ++demand) {
        if (std::binary_search(side.begin(), side.end(), demand)) continue;
        PairKey pair{demand, side};
        if (result.witnesses.find(pair) == result.witnesses.end()) {
          result.pass = false;
          result.missing.push_back(pair);
        }
      }
    } else {
      for (size_t demand : side) {
        PairKey pair{demand, side};
        if (result.witnesses.find(pair) == result.witnesses.end()) {
          result.pass = false;
          result.missing.push_back(pair);
        }
      }
    }
  });
  return result;
}

AnswerCensus answer_uniformity_census(const Query& query,
                                      const ProtocolParams& params) {
  const uint16_t q = params.field().q();
  const size_t k = params.message_count();
  const size_t rows = query.rows.size();
  if (rows == 0) {
    throw DimensionError("query carries no rows");
  }
  for (const auto& row : query.rows) {
    if (row.size() != k) {
      throw DimensionError("query row length != message count");
    }
    bool all_zero = true;
    for (const FieldElement& e : row) {
      if (!e.is_zero()) all_zero = false;
    }
    if (all_zero) {
      throw std::invalid_argument("all-zero query row is not censusable");
    }
  }
  uint64_t space = 1;
  for (size_t j = 0; j < k; ++j) {
    space *= q;
    if (space > kRowSpaceGuard) {
      throw EnumerationTooLargeError("database space q^K exceeds 10^7");
    }
  }

  AnswerCensus census;
  // DFS over the K symbol values with incremental partial answers.
  std::vector<FieldElement> partial(rows, params.field().zero());
  std::vector<uint16_t> tuple(rows, 0);
  std::function<void(size_t)> walk = [&](size_t column) {
    if (column == k) {
      for (size_t t = 0; t < rows; ++t) tuple[t] = partial[t].value();
      ++census.histogram[tuple];
      return;
    }
    std::vector<FieldElement> saved(partial);
    for (uint16_t x = 0; x < q; ++x) {
      if (x != 0) {
        for (size_t t = 0; t < rows; ++t) {
          partial[t] = saved[t] + query.rows[t][column] * params.field().element(x);
        }
      }
      walk(column + 1);
    }
    partial = saved;
  };
  walk(0);

  census.expected_count = 1;
  for (size_t i = 0; i < k - rows; ++i) census.expected_count *= q;
  census.uniform = true;
  for (const auto& [tuple_key, count] : census.histogram) {
    if (count != census.expected_count) census.uniform = false;
  }
  return census;
}

Rational measure_rate(const ProtocolParams& params, const Database& db,
                      size_t trials, RandomSource& rng) {
  if (trials == 0) {
    throw std::invalid_argument("measure_rate needs at least one trial");
  }
  uint64_t downloaded = 0;
  for (size_t i = 0; i < trials; ++i) {
    downloaded += run_local(params, db, rng).downloaded_symbols;
  }
  return Rational(
      static_cast<int64_t>(params.symbols_per_message() * trials),
      static_cast<int64_t>(downloaded));
}

}  // namespace pcsi
