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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "pcsi/grs.hpp"

using namespace pcsi;

namespace {

std::vector<FieldElement> elems(FieldParams f,
                                std::initializer_list<int> values) {
  std::vector<FieldElement> out;
  for (int v : values) out.push_back(f.element(static_cast<uint64_t>(v)));
  return out;
}

}  // namespace

TEST_CASE("code params validation") {
  FieldParams f5(5);
  CodeParams canonical = CodeParams::canonical(f5, 3);
  CHECK(canonical.omegas() == elems(f5, {0, 1, 2}));
  CHECK(canonical.message_count() == 3);

  CHECK_THROWS_AS(CodeParams::canonical(FieldParams(3), 5),
                  FieldTooSmallError);
  CHECK_THROWS_AS(CodeParams(f5, elems(f5, {0, 1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(CodeParams(f5, {}), std::invalid_argument);
}

TEST_CASE("annihilator vanishes exactly off the excluded set") {
  FieldParams f5(5);
  CodeParams params = CodeParams::canonical(f5, 3);

  // Frozen from the poly_from_roots oracle: root {2} -> x + 3.
  Polynomial p = build_annihilator(params, {0, 1});
  CHECK(p.coeffs() == elems(f5, {3, 1}));

  // Excluding everything leaves the empty product.
  Polynomial one = build_annihilator(params, {0, 1, 2});
  CHECK(one.coeffs() == elems(f5, {1}));

  // Roots {1, 2} -> x^2 + 2x + 2, frozen from the oracle.
  Polynomial pair = build_annihilator(params, {0});
  CHECK(pair.coeffs() == elems(f5, {2, 2, 1}));

  CHECK_THROWS_AS(build_annihilator(params, {3}), InvalidIndexError);

  // Zero exactly on the non-excluded evaluation points.
  for (uint32_t q : {7u, 11u}) {
    CodeParams cp = CodeParams::canonical(FieldParams(q), 6);
    for (const auto& excluded : oracle::all_subsets(6, 2)) {
      Polynomial ann = build_annihilator(cp, excluded);
      CHECK(ann.degree() == 4);
      for (size_t j = 0; j < 6; ++j) {
        bool is_excluded = std::binary_search(excluded.begin(), excluded.end(), j);
        CHECK(ann.eval(cp.omegas()[j]).is_zero() == !is_excluded);
      }
    }
  }
}

TEST_CASE("generator matrix worked examples") {
  FieldParams f5(5);
  CodeParams params = CodeParams::canonical(f5, 3);

  GeneratorMatrix g = build_generator(params, elems(f5, {1, 3, 1}), 2);
  CHECK(g.rows()[0] == elems(f5, {1, 3, 1}));
  CHECK(g.rows()[1] == elems(f5, {0, 3, 2}));

  GeneratorMatrix single = build_generator(params, elems(f5, {2, 3, 4}), 1);
  CHECK(single.rows()[0] == elems(f5, {2, 3, 4}));

  GeneratorMatrix g2 = build_generator(params, elems(f5, {4, 4, 1}), 2);
  CHECK(g2.rows()[0] == elems(f5, {4, 4, 1}));
  CHECK(g2.rows()[1] == elems(f5, {0, 4, 2}));

  CHECK_THROWS_AS(build_generator(params, elems(f5, {1, 0, 1}), 2),
                  InvalidMultiplierError);
  CHECK_THROWS_AS(build_generator(params, elems(f5, {1, 1}), 2),
                  DimensionError);
  CHECK_THROWS_AS(build_generator(params, elems(f5, {1, 1, 1}), 4),
                  DimensionError);
}

TEST_CASE("model-I multipliers: constrained columns are deterministic") {
  FieldParams f5(5);
  CodeParams params = CodeParams::canonical(f5, 3);
  // 0-based translation of the worked trace: S = {1}, c = 2, W = 0.
  Polynomial p = build_annihilator(params, {0, 1});

  for (uint64_t seed : {1ull, 2ull, 3ull, 99ull}) {
    Mt19937Source rng(seed);
    auto v = derive_multipliers_model1(params, {1}, elems(f5, {2}), 0, p, rng);
    REQUIRE(v.size() == 3);
    // v_1 = 2 * inv(p(omega_1)) = 2 * inv(4) = 3, frozen by hand from the
    // construction.
    CHECK(v[1] == f5.element(3));
    CHECK(!v[0].is_zero());
    CHECK(!v[2].is_zero());
  }

  // Empty side information: every multiplier free and nonzero.
  Mt19937Source rng(5);
  Polynomial p0 = build_annihilator(params, {2});
  auto v = derive_multipliers_model1(params, {}, {}, 2, p0, rng);
  for (const auto& e : v) CHECK(!e.is_zero());

  CHECK_THROWS_AS(derive_multipliers_model1(params, {1}, elems(f5, {2}), 1,
                                            p, rng),
                  ModelViolationError);
  CHECK_THROWS_AS(derive_multipliers_model1(params, {1}, elems(f5, {0}), 0,
                                            p, rng),
                  InvalidCoefficientError);
}

TEST_CASE("model-II multipliers and the blinding draw") {
  FieldParams f5(5);
  CodeParams params = CodeParams::canonical(f5, 3);
  // Worked trace, 0-based: S = {0, 1}, C = (1, 1), W = 0, p = x + 3.
  Polynomial p = build_annihilator(params, {0, 1});
  CHECK(p.coeffs() == elems(f5, {3, 1}));

  // Scripted draws: blind digit 0 -> candidate 1, bumped past c_W = 1 to 2;
  // free column 2 gets digit 0 -> value 1.
  ScriptedSource source({0, 0});
  Model2Derivation derived =
      derive_multipliers_model2(params, {0, 1}, elems(f5, {1, 1}), 0, p,
                                source);
  CHECK(derived.blind == f5.element(2));
  // v_W = 2 * inv(p(0)) = 2 * inv(3) = 2 * 2 = 4; v_1 = inv(p(1)) = 4.
  CHECK(derived.multipliers == elems(f5, {4, 4, 1}));

  // The blind never collides with c_W: exhaustive over the digit space.
  for (uint32_t digit = 0; digit < 3; ++digit) {
    ScriptedSource s({digit, 0});
    auto d = derive_multipliers_model2(params, {0, 1}, elems(f5, {1, 1}), 0,
                                       p, s);
    CHECK(d.blind != f5.element(1));
  }
  // q = 3 leaves a single choice for the blind.
  {
    FieldParams f3(3);
    CodeParams cp3 = CodeParams::canonical(f3, 3);
    Polynomial ann = build_annihilator(cp3, {0, 1});
    ScriptedSource s({0, 0});
    auto d = derive_multipliers_model2(cp3, {0, 1}, elems(f3, {1, 1}), 0, ann,
                                       s);
    CHECK(d.blind == f3.element(2));
  }

  // M = K: no free columns at all.
  {
    Polynomial whole = build_annihilator(params, {0, 1, 2});
    ScriptedSource s({0});
    auto d = derive_multipliers_model2(params, {0, 1, 2},
                                       elems(f5, {1, 2, 3}), 1, whole, s);
    CHECK(d.multipliers.size() == 3);
    for (const auto& e : d.multipliers) CHECK(!e.is_zero());
  }

  Mt19937Source rng(1);
  CHECK_THROWS_AS(derive_multipliers_model2(params, {0, 1},
                                            elems(f5, {1, 1}), 2, p, rng),
                  ModelViolationError);
  FieldParams f2(2);
  CodeParams cp2 = CodeParams::canonical(f2, 2);
  Polynomial ann2 = build_annihilator(cp2, {0, 1});
  CHECK_THROWS_AS(derive_multipliers_model2(cp2, {0, 1}, elems(f2, {1, 1}),
                                            0, ann2, rng),
                  FieldTooSmallError);
}

TEST_CASE("the specialized codeword sits in the row space as constructed") {
  // sum_i p_i g_i has coordinate j equal to v_j p(omega_j): the side
  // coefficient on S, nonzero at the demand, zero everywhere else.
  Mt19937Source rng(83);
  FieldParams f7(7);
  CodeParams params = CodeParams::canonical(f7, 5);

  for (int trial = 0; trial < 25; ++trial) {
    std::vector<size_t> side{1, 3};
    std::vector<FieldElement> coeffs{f7.element(2), f7.element(5)};
    size_t demand = 4;
    Polynomial p = build_annihilator(params, {1, 3, 4});
    auto v = derive_multipliers_model1(params, side, coeffs, demand, p, rng);
    GeneratorMatrix g = build_generator(params, v, 3);  // R = K - M

    std::vector<FieldElement> combo(5, f7.zero());
    for (size_t i = 0; i < g.num_rows(); ++i) {
      for (size_t j = 0; j < 5; ++j) {
        combo[j] += p.coeff(i) * g.rows()[i][j];
      }
    }
    CHECK(combo[1] == f7.element(2));
    CHECK(combo[3] == f7.element(5));
    CHECK(!combo[4].is_zero());
    CHECK(combo[0].is_zero());
    CHECK(combo[2].is_zero());
  }

  // Model II: the demand coordinate carries the blind instead of c_W.
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<size_t> side{0, 2, 3};
    std::vector<FieldElement> coeffs{f7.element(1), f7.element(4),
                                     f7.element(6)};
    size_t demand = 2;
    Polynomial p = build_annihilator(params, side);
    auto derived =
        derive_multipliers_model2(params, side, coeffs, demand, p, rng);
    GeneratorMatrix g = build_generator(params, derived.multipliers, 3);

    std::vector<FieldElement> combo(5, f7.zero());
    for (size_t i = 0; i < g.num_rows(); ++i) {
      for (size_t j = 0; j < 5; ++j) {
        combo[j] += p.coeff(i) * g.rows()[i][j];
      }
    }
    CHECK(combo[0] == f7.element(1));
    CHECK(combo[2] == derived.blind);
    CHECK(combo[3] == f7.element(6));
    CHECK(combo[1].is_zero());
    CHECK(combo[4].is_zero());
  }
}

TEST_CASE("is_mds accepts GRS builds and rejects repeated points") {
  FieldParams f5(5);
  CodeParams params = CodeParams::canonical(f5, 3);
  Mt19937Source rng(11);

  for (size_t rows = 1; rows <= 3; ++rows) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<FieldElement> v;
      for (int j = 0; j < 3; ++j) v.push_back(rng.nonzero_element(f5));
      CHECK(is_mds(build_generator(params, v, rows)));
    }
  }

  // Repeated evaluation point: columns 0 and 1 proportional.
  std::vector<std::vector<FieldElement>> rows = {
      elems(f5, {1, 1, 1}),
      elems(f5, {2, 2, 3}),
  };
  CHECK(!is_mds(GeneratorMatrix::from_rows(f5, rows)));

  // Square case agrees with the determinant oracle.
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<FieldElement>> m;
    for (int r = 0; r < 3; ++r) {
      std::vector<FieldElement> row;
      for (int c = 0; c < 3; ++c) row.push_back(f5.element(rng.uniform_below(5)));
      m.push_back(row);
    }
    GeneratorMatrix raw = GeneratorMatrix::from_rows(f5, m);
    CHECK(is_mds(raw) == !oracle::laplace_det(f5, m).is_zero());
  }
}

TEST_CASE("exhaustive MDS check at small K") {
  // Every generator buildable from distinct omegas and nonzero multipliers
  // is MDS; exhaustive for K <= 4 over GF(5), R = 2.
  FieldParams f5(5);
  CodeParams params = CodeParams::canonical(f5, 4);
  std::vector<FieldElement> v(4, f5.one());
  for (uint16_t a = 1; a < 5; ++a) {
    for (uint16_t b = 1; b < 5; ++b) {
      for (uint16_t c = 1; c < 5; ++c) {
        for (uint16_t d = 1; d < 5; ++d) {
          v[0] = f5.element(a);
          v[1] = f5.element(b);
          v[2] = f5.element(c);
          v[3] = f5.element(d);
          CHECK(is_mds(build_generator(params, v, 2)));
        }
      }
    }
  }
}

TEST_CASE("minimum-weight census on a model-I style matrix") {
  FieldParams f5(5);
  CodeParams params = CodeParams::canonical(f5, 3);
  GeneratorMatrix g = build_generator(params, elems(f5, {1, 3, 1}), 2);

  WeightCensus census = min_weight_support_census(g);
  // MDS weight distribution: d = K - R + 1 = 2 = M + 1, and each of the
  // C(3,2) supports carries exactly q - 1 = 4 minimum-weight words.
  CHECK(census.min_weight == 2);
  CHECK(census.per_support.size() == 3);
  for (const auto& [support, count] : census.per_support) {
    CHECK(count == 4);
  }
  CHECK(census.total_min_weight_words ==
        oracle::binomial(3, 2) * 4);
}

TEST_CASE("census of the full row space") {
  FieldParams f5(5);
  CodeParams params = CodeParams::canonical(f5, 3);
  GeneratorMatrix g = build_generator(params, elems(f5, {1, 1, 1}), 3);
  WeightCensus census = min_weight_support_census(g);
  CHECK(census.min_weight == 1);
  CHECK(census.per_support.size() == 3);  // one singleton support each
  for (const auto& [support, count] : census.per_support) {
    CHECK(support.size() == 1);
    CHECK(count == 4);  // q - 1 scalings
  }
}

TEST_CASE("census counts are equal across supports for MDS inputs") {
  Mt19937Source rng(23);
  for (uint32_t q : {5u, 7u}) {
    FieldParams field(q);
    CodeParams params = CodeParams::canonical(field, 4);
    for (size_t rows = 2; rows <= 3; ++rows) {
      std::vector<FieldElement> v;
      for (int j = 0; j < 4; ++j) v.push_back(rng.nonzero_element(field));
      WeightCensus census =
          min_weight_support_census(build_generator(params, v, rows));
      CHECK(census.min_weight == 4 - rows + 1);
      CHECK(census.per_support.size() ==
            oracle::binomial(4, census.min_weight));
      uint64_t expected = census.per_support.begin()->second;
      for (const auto& [support, count] : census.per_support) {
        CHECK(count == expected);
      }
    }
  }
}

TEST_CASE("census guard rejects oversized enumerations") {
  FieldParams field(251);
  CodeParams params = CodeParams::canonical(field, 5);
  std::vector<FieldElement> v(5, field.one());
  GeneratorMatrix g = build_generator(params, v, 5);
  CHECK_THROWS_AS(min_weight_support_census(g), EnumerationTooLargeError);
}
