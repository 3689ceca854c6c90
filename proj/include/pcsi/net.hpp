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

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "pcsi/protocol.hpp"
#include "pcsi/rng.hpp"

namespace pcsi {

struct Endpoint {
  std::string host;
  uint16_t port = 0;
};

/// Parses "host:port".
Endpoint parse_endpoint(const std::string& spec);

/// TCP server hosting one immutable database. Per connection it expects
/// HELLO, advertises PARAMS, then answers each QUERY frame; malformed
/// frames get an ERROR frame and the connection stays open. The answer is
/// a deterministic function of the query bytes and the database; nothing
/// else is inspected or logged.
class Server {
 public:
  Server(Database db, ProtocolParams params);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts the accept loop; returns once listening. Port 0
  /// picks an ephemeral port (see port()).
  void start(const std::string& host, uint16_t port);

  uint16_t port() const { return port_; }
  const ProtocolParams& params() const { return params_; }

  /// Number of QUERY frames answered so far (all connections).
  uint64_t queries_answered() const { return queries_answered_.load(); }

  /// Blocks until stop() is called.
  void wait();

  void stop();

 private:
  void accept_loop();
  void handle_connection(int fd);

  Database db_;
  ProtocolParams params_;
  int listen_fd_ = -1;
  uint16_t port_ = 0;
  std::thread accept_thread_;
  std::vector<std::thread> workers_;
  std::vector<int> open_fds_;
  std::mutex mutex_;
  std::mutex stop_mutex_;
  std::condition_variable stopped_cv_;
  std::atomic<bool> stopping_{false};
  std::atomic<uint64_t> queries_answered_{0};
};

struct RemoteRetrieveResult {
  Message recovered;
  uint64_t bytes_sent = 0;
  uint64_t bytes_received = 0;
  /// Payload length of the ANSWER frame: 4 + 2*R*m bytes.
  uint32_t answer_payload_bytes = 0;
};

/// Client role over a socket: HELLO, verify the advertised PARAMS equal the
/// local ones exactly (aborting before any QUERY leaves the machine on a
/// mismatch), send one query, decode the answer, recover locally. With the
/// same rng stream and database this returns exactly what run_local does.
RemoteRetrieveResult remote_retrieve(const Endpoint& endpoint,
                                     const SideInformation& side_info,
                                     const ProtocolParams& params,
                                     RandomSource& rng);

}  // namespace pcsi
