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

// Command-line driver: database generation, local and remote retrieval,
// privacy/structure audits, and a retrieval server. All randomness comes
// from --seed, fractions print exactly, and no timestamps reach stdout, so
// equal flags give byte-identical output.

#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pcsi/audit.hpp"
#include "pcsi/dbfile.hpp"
#include "pcsi/net.hpp"
#include "pcsi/wire.hpp"

namespace {

using namespace pcsi;

volatile std::sig_atomic_t g_interrupted = 0;

void on_interrupt(int) { g_interrupted = 1; }

std::vector<size_t> parse_index_list(const std::string& csv) {
  std::vector<size_t> out;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoul(item));
  }
  return out;
}

std::string join_indices(const std::vector<size_t>& v) {
  std::ostringstream out;
  for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

Model parse_model(int flag) {
  return flag == 2 ? Model::kTwo : Model::kOne;
}

const char* model_name(Model model) {
  return model == Model::kOne ? "I" : "II";
}

// Side information conditioned on the demand: under model I, S is uniform
// over size-M subsets avoiding W; under model II, uniform over those
// containing W. Coefficients are uniform over F_q^x.
SideInformation sample_conditioned(const ProtocolParams& params,
                                   const Database& db, size_t demand,
                                   RandomSource& rng) {
  const size_t k = params.message_count();
  const size_t m_size = params.side_info_size();
  std::vector<size_t> pool;
  for (size_t j = 0; j < k; ++j) {
    if (j != demand) pool.push_back(j);
  }
  const size_t draw_count =
      params.model() == Model::kOne ? m_size : m_size - 1;
  for (size_t i = 0; i < draw_count; ++i) {
    size_t j = i + rng.uniform_below(static_cast<uint32_t>(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  SideInformation si;
  si.indices.assign(pool.begin(), pool.begin() + draw_count);
  if (params.model() == Model::kTwo) si.indices.push_back(demand);
  std::sort(si.indices.begin(), si.indices.end());
  for (size_t i = 0; i < m_size; ++i) {
    si.coeffs.push_back(rng.nonzero_element(params.field()));
  }
  si.demand = demand;
  si.combined = compute_side_info_value(si.indices, si.coeffs, db);
  return si;
}

// Builds a protocol generator matrix (pre-permutation) for a sampled
// instance; this is what the MDS/census/lemma1 audits inspect.
GeneratorMatrix build_protocol_matrix(const ProtocolParams& params,
                                      const Database& db, RandomSource& rng) {
  SideInformation si = sample_instance(params, db, rng);
  Polynomial annihilator(params.field());
  std::vector<FieldElement> multipliers;
  if (params.model() == Model::kOne) {
    std::vector<size_t> excluded(si.indices);
    excluded.push_back(si.demand);
    annihilator = build_annihilator(params.code(), excluded);
    multipliers = derive_multipliers_model1(params.code(), si.indices,
                                            si.coeffs, si.demand, annihilator,
                                            rng);
  } else {
    annihilator = build_annihilator(params.code(), si.indices);
    multipliers = derive_multipliers_model2(params.code(), si.indices,
                                            si.coeffs, si.demand, annihilator,
                                            rng)
                      .multipliers;
  }
  return build_generator(params.code(), std::move(multipliers),
                         params.answer_rows());
}

Database uniform_database(FieldParams field, size_t message_count,
                          size_t symbols, RandomSource& rng) {
  std::vector<Message> messages(message_count);
  for (Message& msg : messages) {
    msg.reserve(symbols);
    for (size_t t = 0; t < symbols; ++t) {
      msg.push_back(field.element(rng.uniform_below(field.q())));
    }
  }
  return Database(field, std::move(messages));
}

int cmd_db_gen(uint32_t q, size_t message_count, size_t symbols,
               uint64_t seed, const std::string& out_path) {
  FieldParams field(q);
  if (field.q() < message_count) {
    throw std::invalid_argument("q must be >= K");
  }
  Mt19937Source rng(seed);
  Database db = uniform_database(field, message_count, symbols, rng);
  write_database_file(out_path, db);
  std::cout << "wrote " << out_path << ": q=" << field.q()
            << " K=" << message_count << " m=" << symbols << " ("
            << kDatabaseHeaderSize + 2 * message_count * symbols
            << " bytes)\n";
  return 0;
}

int cmd_retrieve(const std::string& db_path, int model_flag, size_t m_size,
                 size_t demand, const std::string& s_csv,
                 const std::string& c_csv, const std::string& remote,
                 uint64_t seed) {
  LoadedDatabase loaded = read_database_file(db_path);
  const Database& db = loaded.db;
  ProtocolParams params(
      parse_model(model_flag), m_size, db.symbols_per_message(),
      CodeParams::canonical(loaded.field, db.message_count()));
  if (demand >= db.message_count()) {
    throw InvalidIndexError("--W out of range");
  }
  Mt19937Source rng(seed);

  SideInformation si;
  if (!s_csv.empty()) {
    si.indices = parse_index_list(s_csv);
    std::sort(si.indices.begin(), si.indices.end());
    if (si.indices.size() != m_size) {
      throw std::invalid_argument("--S must list exactly M indices");
    }
    if (c_csv.empty()) {
      throw std::invalid_argument("--C is required when --S is given");
    }
    for (size_t v : parse_index_list(c_csv)) {
      if (v == 0 || v >= loaded.field.q()) {
        throw InvalidCoefficientError(
            "--C entries must be nonzero residues below q");
      }
      si.coeffs.push_back(loaded.field.element(v));
    }
    if (si.coeffs.size() != m_size) {
      throw std::invalid_argument("--C must list exactly M coefficients");
    }
    si.demand = demand;
    si.combined = compute_side_info_value(si.indices, si.coeffs, db);
  } else {
    si = sample_conditioned(params, db, demand, rng);
  }

  Message recovered;
  size_t downloaded = 0;
  if (!remote.empty()) {
    RemoteRetrieveResult result =
        remote_retrieve(parse_endpoint(remote), si, params, rng);
    recovered = std::move(result.recovered);
    downloaded = params.answer_rows() * params.symbols_per_message();
  } else {
    BuiltQuery built = client_build_query(si, params, rng);
    Answer answer = server_answer(built.query, db);
    recovered = client_recover(answer, built.state, params);
    downloaded = answer.values.size() * params.symbols_per_message();
  }

  Rational rate(static_cast<int64_t>(params.symbols_per_message()),
                static_cast<int64_t>(downloaded));
  std::cout << "model " << model_name(params.model()) << "\n";
  std::cout << "W " << si.demand << "\n";
  std::cout << "S " << join_indices(si.indices) << "\n";
  std::ostringstream coeffs;
  for (size_t i = 0; i < si.coeffs.size(); ++i) {
    coeffs << (i ? "," : "") << si.coeffs[i].value();
  }
  std::cout << "C " << coeffs.str() << "\n";
  std::ostringstream symbols;
  for (size_t t = 0; t < recovered.size(); ++t) {
    symbols << (t ? " " : "") << recovered[t].value();
  }
  std::cout << "recovered " << symbols.str() << "\n";
  std::cout << "rows " << params.answer_rows() << "\n";
  std::cout << "downloaded_symbols " << downloaded << "\n";
  std::cout << "rate " << rate.to_string() << "\n";
  return 0;
}

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& kv) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open report file '" + path + "'");
  }
  for (const auto& [key, value] : kv) {
    out << key << " " << value << "\n";
  }
}

int cmd_audit(const std::string& mode, uint32_t q, size_t message_count,
              size_t m_size, int model_flag, size_t symbols, uint64_t seed,
              size_t trials, const std::string& report_path) {
  FieldParams field(q);
  ProtocolParams params(parse_model(model_flag), m_size, symbols,
                        CodeParams::canonical(field, message_count));
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("mode", mode);
  kv.emplace_back("model", model_name(params.model()));
  kv.emplace_back("q", std::to_string(field.q()));
  kv.emplace_back("K", std::to_string(message_count));
  kv.emplace_back("M", std::to_string(m_size));
  bool pass = false;

  if (mode == "privacy") {
    AuditReport report = enumerate_posterior(params);
    PrivacyCheck check = check_ws_privacy(report);
    pass = check.pass;
    std::cout << check.summary << "\n";
    kv.emplace_back("atoms", std::to_string(report.total_atoms));
    kv.emplace_back("queries", std::to_string(report.counts.size()));
    kv.emplace_back("prior", report.prior_per_pair.to_string());
    kv.emplace_back("worst_deviation", check.worst_deviation.to_string());
  } else if (mode == "mds") {
    Mt19937Source rng(seed);
    Database db = uniform_database(field, message_count, symbols, rng);
    size_t passed = 0;
    for (size_t i = 0; i < trials; ++i) {
      if (is_mds(build_protocol_matrix(params, db, rng))) ++passed;
    }
    pass = passed == trials;
    std::cout << "mds " << (pass ? "PASS" : "FAIL") << " " << passed << "/"
              << trials << "\n";
    kv.emplace_back("trials", std::to_string(trials));
    kv.emplace_back("passed", std::to_string(passed));
  } else if (mode == "census") {
    Mt19937Source rng(seed);
    Database db = uniform_database(field, message_count, symbols, rng);
    WeightCensus census =
        min_weight_support_census(build_protocol_matrix(params, db, rng));
    uint64_t per_support = 0;
    bool equal_counts = true;
    for (const auto& [support, count] : census.per_support) {
      if (per_support == 0) per_support = count;
      if (count != per_support) equal_counts = false;
    }
    pass = equal_counts;
    if (equal_counts) {
      std::cout << "min weight " << census.min_weight << "; " << per_support
                << " codewords per each of " << census.per_support.size()
                << " supports\n";
    } else {
      std::cout << "min weight " << census.min_weight
                << "; counts NOT equal across "
                << census.per_support.size() << " supports\n";
    }
    kv.emplace_back("min_weight", std::to_string(census.min_weight));
    kv.emplace_back("supports", std::to_string(census.per_support.size()));
    kv.emplace_back("per_support", std::to_string(per_support));
  } else if (mode == "lemma1") {
    Mt19937Source rng(seed);
    Database db = uniform_database(field, message_count, symbols, rng);
    const int theta = params.model() == Model::kTwo ? 1 : 0;
    size_t passed = 0;
    for (size_t i = 0; i < trials; ++i) {
      Lemma1Result result =
          audit_lemma1(build_protocol_matrix(params, db, rng), theta, params);
      if (result.pass) ++passed;
    }
    pass = passed == trials;
    std::cout << "lemma1 " << (pass ? "PASS" : "FAIL") << " " << passed << "/"
              << trials << "\n";
    kv.emplace_back("trials", std::to_string(trials));
    kv.emplace_back("passed", std::to_string(passed));
  } else if (mode == "uniformity") {
    Mt19937Source rng(seed);
    Database db = uniform_database(field, message_count, symbols, rng);
    SideInformation si = sample_instance(params, db, rng);
    BuiltQuery built = client_build_query(si, params, rng);
    AnswerCensus census = answer_uniformity_census(built.query, params);
    pass = census.uniform;
    std::cout << "uniformity " << (pass ? "PASS" : "FAIL") << ": "
              << census.histogram.size() << " answer tuples, expected count "
              << census.expected_count << "\n";
    kv.emplace_back("tuples", std::to_string(census.histogram.size()));
    kv.emplace_back("expected_count", std::to_string(census.expected_count));
  } else {
    throw std::invalid_argument("unknown audit mode '" + mode + "'");
  }

  kv.emplace_back("verdict", pass ? "pass" : "fail");
  write_report(report_path, kv);
  return pass ? 0 : 1;
}

int cmd_serve(const std::string& db_path, const std::string& listen,
              int model_flag, size_t m_size) {
  LoadedDatabase loaded = read_database_file(db_path);
  ProtocolParams params(
      parse_model(model_flag), m_size, loaded.db.symbols_per_message(),
      CodeParams::canonical(loaded.field, loaded.db.message_count()));
  Endpoint endpoint = parse_endpoint(listen);
  Server server(loaded.db, params);
  server.start(endpoint.host, endpoint.port);
  std::signal(SIGINT, on_interrupt);
  std::signal(SIGTERM, on_interrupt);
  std::cout << "serving q=" << params.field().q() << " K="
            << params.message_count() << " m=" << params.symbols_per_message()
            << " model " << model_name(params.model()) << " M=" << m_size
            << " on " << endpoint.host << ":" << server.port() << std::endl;
  // The handler only flips the flag; all teardown happens here in normal
  // context.
  while (!g_interrupted) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  server.stop();
  std::cout << "stopped\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-server PIR with private coded side information"};
  app.require_subcommand(1);

  uint32_t q = 5;
  size_t message_count = 3;
  size_t m_size = 1;
  size_t symbols = 1;
  uint64_t seed = 1;
  size_t trials = 100;
  size_t demand = 0;
  int model_flag = 1;
  std::string out_path, db_path, s_csv, c_csv, remote, report_path, mode;
  const char* env_listen = std::getenv("PCSI_LISTEN");
  std::string listen = env_listen ? env_listen : "127.0.0.1:7419";

  CLI::App* gen = app.add_subcommand("db-gen", "generate a random database");
  gen->add_option("--q", q, "field modulus (prime)")->required();
  gen->add_option("--K", message_count, "message count")->required();
  gen->add_option("--m", symbols, "symbols per message")->required();
  gen->add_option("--seed", seed, "rng seed");
  gen->add_option("--out", out_path, "output path")->required();

  CLI::App* ret = app.add_subcommand("retrieve", "run one retrieval");
  ret->add_option("--db", db_path, "database file")->required();
  ret->add_option("--model", model_flag, "1 or 2")
      ->required()
      ->check(CLI::Range(1, 2));
  ret->add_option("--M", m_size, "side information size")->required();
  ret->add_option("--W", demand, "demand index (0-based)")->required();
  ret->add_option("--S", s_csv, "side info indices, comma separated");
  ret->add_option("--C", c_csv, "side info coefficients, comma separated");
  ret->add_option("--remote", remote, "host:port of a pcsi server");
  ret->add_option("--seed", seed, "rng seed");

  CLI::App* audit = app.add_subcommand("audit", "run an exhaustive audit");
  audit
      ->add_option("--mode", mode,
                   "privacy | lemma1 | mds | census | uniformity")
      ->required()
      ->check(CLI::IsMember(
          {"privacy", "lemma1", "mds", "census", "uniformity"}));
  audit->add_option("--q", q, "field modulus (prime)")->required();
  audit->add_option("--K", message_count, "message count")->required();
  audit->add_option("--M", m_size, "side information size")->required();
  audit->add_option("--model", model_flag, "1 or 2")
      ->required()
      ->check(CLI::Range(1, 2));
  audit->add_option("--m", symbols, "symbols per message");
  audit->add_option("--seed", seed, "rng seed");
  audit->add_option("--trials", trials, "builds for mds/lemma1 modes");
  audit->add_option("--report", report_path, "write a key-value report");

  CLI::App* serve = app.add_subcommand("serve", "host a database");
  serve->add_option("--db", db_path, "database file")->required();
  serve->add_option("--listen", listen,
                    "host:port (default from PCSI_LISTEN)");
  serve->add_option("--model", model_flag, "1 or 2")
      ->required()
      ->check(CLI::Range(1, 2));
  serve->add_option("--M", m_size, "side information size")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_db_gen(q, message_count, symbols, seed, out_path);
    }
    if (ret->parsed()) {
      return cmd_retrieve(db_path, model_flag, m_size, demand, s_csv, c_csv,
                          remote, seed);
    }
    if (audit->parsed()) {
      return cmd_audit(mode, q, message_count, m_size, model_flag, symbols,
                       seed, trials, report_path);
    }
    if (serve->parsed()) {
      return cmd_serve(db_path, listen, model_flag, m_size);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
