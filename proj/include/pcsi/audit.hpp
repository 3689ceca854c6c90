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
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pcsi/grs.hpp"
#include "pcsi/protocol.hpp"
#include "pcsi/rational.hpp"

namespace pcsi {

/// A hypothesis the server could hold about the user: demand index W plus
/// side-information support S.
struct PairKey {
  size_t demand = 0;
  std::vector<size_t> side_set;

  bool operator<(const PairKey& other) const {
    if (demand != other.demand) return demand < other.demand;
    return side_set < other.side_set;
  }
  bool operator==(const PairKey& other) const {
    return demand == other.demand && side_set == other.side_set;
  }
};

/// Canonical form of a query: the ordered row list as received, flattened
/// row-major to residues. Two atoms collide iff their queries are
/// byte-identical; no lossy canonicalization is applied because the server
/// sees the full ordered list.
using QueryKey = std::vector<uint16_t>;

/// Exact joint counts of (query, W, S) over every randomness atom. All
/// weights are integers over one common denominator, so posteriors are
/// exact rationals and a pass means equality, not approximation.
struct AuditReport {
  Model model = Model::kOne;
  uint16_t q = 0;
  size_t message_count = 0;
  size_t side_info_size = 0;

  uint64_t total_atoms = 0;
  /// Every (W, S) pair contributes exactly this many atoms; conservation is
  /// checked during enumeration.
  uint64_t atoms_per_pair = 0;

  std::map<PairKey, Rational> priors;
  Rational prior_per_pair;

  std::map<QueryKey, std::map<PairKey, uint64_t>> counts;

  Rational worst_deviation;
  bool pass = false;
  QueryKey worst_query;
  PairKey worst_pair;
};

/// Builds the query for one scripted randomness atom. The real protocol
/// path wraps client_build_query; tests may supply broken variants as
/// negative controls.
using QueryBuilder = std::function<Query(
    const SideInformation&, const ProtocolParams&, RandomSource&)>;

/// The mixed-radix shape of one protocol randomness atom, mirroring the
/// draw order of client_build_query: free multipliers in ascending column
/// order (model II: the blinding draw first), then the Fisher-Yates swaps.
std::vector<uint32_t> protocol_atom_radixes(const ProtocolParams& params);

/// Exhaustive (W,S)-privacy audit of the real protocol: every valid
/// (S, C, W) and every randomness atom is enumerated (never sampled), the
/// exact query of each atom is accumulated, and the worst absolute
/// posterior-vs-prior deviation is computed in exact rationals.
/// Guarded at 10^8 atoms.
AuditReport enumerate_posterior(const ProtocolParams& params);

/// Enumeration core behind enumerate_posterior, parameterized on the atom
/// shape and query builder so negative controls can be audited by the same
/// machinery.
AuditReport enumerate_posterior_with(const ProtocolParams& params,
                                     const std::vector<uint32_t>& atom_radixes,
                                     const QueryBuilder& builder);

struct PrivacyCheck {
  bool pass = false;
  Rational worst_deviation;
  std::string summary;
};

/// Re-derives the verdict from a report's counts: pass iff every query with
/// positive weight has posterior exactly equal to the prior for every valid
/// pair. Throws std::invalid_argument on a report with no atoms.
PrivacyCheck check_ws_privacy(const AuditReport& report);

struct Lemma1Result {
  bool pass = false;
  /// Witness codeword per (W*, S*): nonzero at W*, nonzero on all of S*,
  /// zero elsewhere.
  std::map<PairKey, std::vector<FieldElement>> witnesses;
  std::vector<PairKey> missing;
};

/// Necessary retrieval condition: for every (W*, S*) with the given
/// indicator there must be a row-space codeword usable as c_W* X_W* plus a
/// valid all-nonzero coefficient sequence on S*. Enumerates the q^R row
/// space once (guard 10^7).
Lemma1Result audit_lemma1(const GeneratorMatrix& g, int theta,
                          const ProtocolParams& params);

struct AnswerCensus {
  /// Answer tuple (m = 1, flattened residues) -> number of databases
  /// producing it.
  std::map<std::vector<uint16_t>, uint64_t> histogram;
  uint64_t expected_count = 0;  // q^(K-R)
  bool uniform = false;
};

/// Enumerates all q^K single-symbol databases and the answer each one
/// yields under the fixed query. Uniform iff every realized tuple occurs
/// exactly q^(K-R) times. Guard: q^K <= 10^7. Rejects all-zero query rows.
AnswerCensus answer_uniformity_census(const Query& query,
                                      const ProtocolParams& params);

/// rate = m / mean(downloaded symbols) over the given number of in-process
/// runs, as an exact fraction. The protocols download a fixed count per
/// run, so one trial already gives the exact rate.
Rational measure_rate(const ProtocolParams& params, const Database& db,
                      size_t trials, RandomSource& rng);

}  // namespace pcsi
