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

#include "pcsi/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "pcsi/wire.hpp"

namespace pcsi {

namespace {

void close_quietly(int fd) {
  if (fd >= 0) ::close(fd);
}

// Returns false on orderly peer close before any byte; throws on hard
// errors or mid-buffer close.
bool read_exact(int fd, uint8_t* buffer, size_t count) {
  size_t done = 0;
  while (done < count) {
    ssize_t n = ::recv(fd, buffer + done, count - done, 0);
    if (n == 0) {
      if (done == 0) return false;
      throw TransportError("connection closed mid-frame");
    }
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("recv: ") + std::strerror(errno));
    }
    done += static_cast<size_t>(n);
  }
  return true;
}

void write_all(int fd, const std::vector<uint8_t>& bytes) {
  size_t done = 0;
  while (done < bytes.size()) {
    ssize_t n = ::send(fd, bytes.data() + done, bytes.size() - done,
                       MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("send: ") + std::strerror(errno));
    }
    done += static_cast<size_t>(n);
  }
}

// Reads one frame; returns false on orderly close at a frame boundary.
bool read_frame(int fd, Frame& frame) {
  uint8_t header[kFrameHeaderSize];
  if (!read_exact(fd, header, sizeof(header))) return false;
  auto [kind, len] = decode_frame_header(header);
  frame.kind = kind;
  frame.payload.resize(len);
  if (len > 0 && !read_exact(fd, frame.payload.data(), len)) {
    throw TransportError("connection closed mid-frame");
  }
  return true;
}

sockaddr_in resolve(const std::string& host, uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (host.empty() || host == "0.0.0.0") {
    addr.sin_addr.s_addr = INADDR_ANY;
    return addr;
  }
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) == 1) {
    return addr;
  }
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  int rc = ::getaddrinfo(host.c_str(), nullptr, &hints, &result);
  if (rc != 0 || result == nullptr) {
    throw TransportError("cannot resolve host '" + host + "'");
  }
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(result->ai_addr)->sin_addr;
  ::freeaddrinfo(result);
  return addr;
}

}  // namespace

Endpoint parse_endpoint(const std::string& spec) {
  size_t colon = spec.rfind(':');
  if (colon == std::string::npos || colon + 1 == spec.size()) {
    throw std::invalid_argument("endpoint must be host:port, got '" + spec +
                                "'");
  }
  Endpoint ep;
  ep.host = spec.substr(0, colon);
  unsigned long port = std::stoul(spec.substr(colon + 1));
  if (port > 65535) {
    throw std::invalid_argument("port out of range in '" + spec + "'");
  }
  ep.port = static_cast<uint16_t>(port);
  return ep;
}

Server::Server(Database db, ProtocolParams params)
    : db_(std::move(db)), params_(std::move(params)) {
  if (db_.message_count() != params_.message_count() ||
      db_.symbols_per_message() != params_.symbols_per_message() ||
      db_.field() != params_.field()) {
    throw DimensionError("database does not match the protocol parameters");
  }
}

Server::~Server() { stop(); }

void Server::start(const std::string& host, uint16_t port) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) {
    throw TransportError(std::string("socket: ") + std::strerror(errno));
  }
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = resolve(host, port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) <
      0) {
    int saved = errno;
    close_quietly(listen_fd_);
    listen_fd_ = -1;
    throw TransportError(std::string("bind: ") + std::strerror(saved));
  }
  if (::listen(listen_fd_, 16) < 0) {
    int saved = errno;
    close_quietly(listen_fd_);
    listen_fd_ = -1;
    throw TransportError(std::string("listen: ") + std::strerror(saved));
  }
  sockaddr_in bound{};
  socklen_t bound_len = sizeof(bound);
  if (::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound),
                    &bound_len) == 0) {
    port_ = ntohs(bound.sin_port);
  }
  stopping_.store(false);
  accept_thread_ = std::thread([this] { accept_loop(); });
}

void Server::accept_loop() {
  while (!stopping_.load()) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;  // listener closed during stop()
    }
    std::lock_guard<std::mutex> lock(mutex_);
    if (stopping_.load()) {
      close_quietly(fd);
      break;
    }
    open_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { handle_connection(fd); });
  }
}

void Server::handle_connection(int fd) {
  bool greeted = false;
  try {
    Frame frame;
    while (true) {
      try {
        if (!read_frame(fd, frame)) break;
      } catch (const WireError& e) {
        write_all(fd, encode_frame(FrameKind::kError,
                                   encode_error(WireErrorCode::kMalformed,
                                                e.what())));
        continue;
      }
      switch (frame.kind) {
        case FrameKind::kHello: {
          greeted = true;
          write_all(fd,
                    encode_frame(FrameKind::kParams, encode_params(params_)));
          break;
        }
        case FrameKind::kQuery: {
          if (!greeted) {
            write_all(fd, encode_frame(
                              FrameKind::kError,
                              encode_error(WireErrorCode::kUnexpectedKind,
                                           "QUERY before HELLO")));
            break;
          }
          try {
            Query query = decode_query(frame.payload, params_.field());
            if (query.rows[0].size() != db_.message_count()) {
              throw DimensionError("dimension: query row length " +
                                   std::to_string(query.rows[0].size()) +
                                   " != K=" +
                                   std::to_string(db_.message_count()));
            }
            Answer answer = server_answer(query, db_);
            // Count before the reply bytes leave, so a client that has the
            // answer always observes the incremented counter.
            queries_answered_.fetch_add(1);
            write_all(fd, encode_frame(FrameKind::kAnswer,
                                       encode_answer(answer)));
          } catch (const WireError& e) {
            write_all(fd,
                      encode_frame(FrameKind::kError,
                                   encode_error(
                                       WireErrorCode::kElementOutOfRange,
                                       e.what())));
          } catch (const DimensionError& e) {
            write_all(fd, encode_frame(FrameKind::kError,
                                       encode_error(WireErrorCode::kDimension,
                                                    e.what())));
          }
          break;
        }
        default: {
          write_all(fd, encode_frame(
                            FrameKind::kError,
                            encode_error(WireErrorCode::kUnexpectedKind,
                                         "unexpected frame kind")));
          break;
        }
      }
    }
  } catch (const TransportError&) {
    // Peer vanished; nothing to clean up beyond the socket.
  }
  close_quietly(fd);
  std::lock_guard<std::mutex> lock(mutex_);
  open_fds_.erase(std::remove(open_fds_.begin(), open_fds_.end(), fd),
                  open_fds_.end());
}

void Server::wait() {
  std::unique_lock<std::mutex> lock(mutex_);
  stopped_cv_.wait(lock, [this] { return stopping_.load(); });
}

void Server::stop() {
  std::lock_guard<std::mutex> stop_lock(stop_mutex_);
  if (!stopping_.exchange(true)) {
    if (listen_fd_ >= 0) {
      ::shutdown(listen_fd_, SHUT_RDWR);
      close_quietly(listen_fd_);
      listen_fd_ = -1;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
  }
  if (accept_thread_.joinable()) accept_thread_.join();
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    workers.swap(workers_);
  }
  for (std::thread& w : workers) {
    if (w.joinable()) w.join();
  }
  {
    // Pairs with the predicate check in wait(); avoids a lost wakeup.
    std::lock_guard<std::mutex> lock(mutex_);
  }
  stopped_cv_.notify_all();
}

RemoteRetrieveResult remote_retrieve(const Endpoint& endpoint,
                                     const SideInformation& side_info,
                                     const ProtocolParams& params,
                                     RandomSource& rng) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) {
    throw TransportError(std::string("socket: ") + std::strerror(errno));
  }
  struct FdGuard {
    int fd;
    ~FdGuard() { close_quietly(fd); }
  } guard{fd};

  sockaddr_in addr = resolve(endpoint.host, endpoint.port);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    throw TransportError(std::string("connect: ") + std::strerror(errno));
  }

  RemoteRetrieveResult result;
  auto send_frame = [&](FrameKind kind, const std::vector<uint8_t>& payload) {
    std::vector<uint8_t> bytes = encode_frame(kind, payload);
    write_all(fd, bytes);
    result.bytes_sent += bytes.size();
  };
  auto receive_frame = [&]() {
    Frame frame;
    if (!read_frame(fd, frame)) {
      throw TransportError("server closed the connection");
    }
    result.bytes_received += kFrameHeaderSize + frame.payload.size();
    if (frame.kind == FrameKind::kError) {
      auto [code, message] = decode_error(frame.payload);
      throw WireError("server error " +
                      std::to_string(static_cast<int>(code)) + ": " + message);
    }
    return frame;
  };

  send_frame(FrameKind::kHello, {});
  Frame params_frame = receive_frame();
  if (params_frame.kind != FrameKind::kParams) {
    throw WireError("expected PARAMS after HELLO");
  }
  ProtocolParams advertised = decode_params(params_frame.payload);
  if (!(advertised == params)) {
    // Abort before any query leaves the machine; sending one against
    // foreign parameters could leak model assumptions.
    throw ParamsMismatchError("server parameters differ from local ones");
  }

  BuiltQuery built = client_build_query(side_info, params, rng);
  send_frame(FrameKind::kQuery, encode_query(built.query));
  Frame answer_frame = receive_frame();
  if (answer_frame.kind != FrameKind::kAnswer) {
    throw WireError("expected ANSWER to QUERY");
  }
  result.answer_payload_bytes =
      static_cast<uint32_t>(answer_frame.payload.size());
  Answer answer = decode_answer(answer_frame.payload, params.field());
  result.recovered = client_recover(answer, built.state, params);
  return result;
}

}  // namespace pcsi
