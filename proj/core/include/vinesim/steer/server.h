// Copyright 2026 The vinesim Authors
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

// HTTP and WebSocket front end for steering sessions.
//
//   GET    /healthz
//   GET    /scenarios
//   POST   /sessions                 {"scenario": "gap" | {...}}
//   GET    /sessions/{id}
//   DELETE /sessions/{id}
//   POST   /sessions/{id}/commands   command message, one-shot transport
//   POST   /sessions/{id}/plan       {"target": [x_mm, y_mm], ...}
//   GET    /sessions/{id}/events     event log CSV
//   WS     /sessions/{id}/ws         command messages in, state messages out
//   GET    /...                      static UI assets

#ifndef VINESIM_STEER_SERVER_H_
#define VINESIM_STEER_SERVER_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "absl/status/status.h"
#include "vinesim/steer/session.h"

namespace vinesim::steer {

inline constexpr uint16_t kDefaultPort = 8080;

// VINESIM_PORT if set and valid, else `fallback`.
uint16_t PortFromEnv(uint16_t fallback = kDefaultPort);

struct ServerOptions {
  std::string address = "0.0.0.0";
  uint16_t port = kDefaultPort;  // 0 picks an ephemeral port
  std::string ui_dir;            // static assets; empty serves a stub page
  SessionLimits limits;
  int threads = 1;
  std::chrono::seconds sweep_interval{30};
  bool stop_on_signals = false;  // SIGINT / SIGTERM
};

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Transport-free routing of plain HTTP requests, shared by the server and
// tests.
HttpReply HandleHttp(SessionManager& sessions, const std::string& ui_dir,
                     const std::string& method, const std::string& target,
                     const std::string& body);

class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts serving on background threads.
  absl::Status Start();
  uint16_t port() const;
  // Blocks until Stop() or a handled signal.
  void Wait();
  void Stop();

  SessionManager& sessions();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vinesim::steer

#endif  // VINESIM_STEER_SERVER_H_
