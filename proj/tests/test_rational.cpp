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

#include "pcsi/rational.hpp"

using pcsi::Rational;

TEST_CASE("normalization") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational());
  CHECK(Rational(0, -7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational());
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 6) / Rational(1, 3) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 2) / Rational(), std::domain_error);
  CHECK((Rational(1, 6) - Rational(1, 2)).abs() == Rational(1, 3));
}

TEST_CASE("ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 1000000));
  CHECK(Rational(7, 8) > Rational(6, 7));
  CHECK(Rational(1, 2) <= Rational(2, 4));
}

TEST_CASE("large intermediates stay exact") {
  // (a/b) - (a/b) with coprime ~1e9 parts exercises the 128-bit paths.
  Rational a(1000000007, 998244353);
  CHECK((a - a).is_zero());
  CHECK(a * Rational(998244353, 1000000007) == Rational(1, 1));
}

TEST_CASE("string form") {
  CHECK(Rational().to_string() == "0/1");
  CHECK(Rational(1, 2).to_string() == "1/2");
  CHECK(Rational(-3, 9).to_string() == "-1/3");
}
