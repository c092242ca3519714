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

// Steering sessions, independent of any transport.
//
// A session owns one simulation and applies commands strictly in sequence:
// a command message carries `seq`, which must equal the last applied seq
// plus one. Every applied command produces one state message, fanned out to
// all subscribers in order.
//
// Wire schema (JSON, boundary units):
//   command: {"session": id, "seq": n, "cmd": {"type": "SetPressure", "kpa": 20}}
//            cmd types: SetPressure{kpa}, SetJam{segment, side, action},
//            Grow{mm}, Retract{mm}, Reset, LoadScenario{name}
//   state:   {"type": "state", "session", "seq", "tick", "backbone": [[x, y]],
//             "pressure_kpa", "segments": [{"left", "right", "strain",
//             "R_mm", "theta_deg"}], "tip_force_n", "events": [...],
//             "everted_length_mm", "tip", "masses"}
//   reject:  {"type": "rejected", "session", "seq", "expected_seq", "reason"}

#ifndef VINESIM_STEER_SESSION_H_
#define VINESIM_STEER_SESSION_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "vinesim/growsim.h"
#include "vinesim/scenario.h"

namespace vinesim::steer {

using SessionId = std::string;
using Clock = std::chrono::steady_clock;

namespace wire {
struct Reset {};
struct LoadScenario {
  std::string name;
};
}  // namespace wire

using WireCommand = std::variant<Command, wire::Reset, wire::LoadScenario>;

absl::StatusOr<WireCommand> ParseWireCommand(const nlohmann::json& cmd);

// Scenario geometry in boundary units, sent once at session creation.
nlohmann::json ScenarioJson(const Scenario& scenario);

// Receives serialized messages. Calls are made in order, one at a time, while
// the session lock is held, so implementations must not block or call back
// into the session.
class Subscriber {
 public:
  virtual ~Subscriber() = default;
  virtual void OnMessage(const std::string& message) = 0;
  // The session ended (expired or deleted).
  virtual void OnClose() = 0;
};

class Session {
 public:
  Session(SessionId id, Scenario scenario, SimContext ctx, SimState initial);

  const SessionId& id() const { return id_; }

  struct Outcome {
    bool applied = false;
    nlohmann::json message;  // state when applied, rejection otherwise
  };

  // Applies a command message after the seq check. Rejections never change
  // state; repeating a rejected message yields the same rejection.
  Outcome Apply(const nlohmann::json& command_message);
  Outcome Apply(int64_t seq, const WireCommand& command);

  nlohmann::json Snapshot() const;
  nlohmann::json ScenarioInfo() const;
  // Cumulative `tick,event,detail` log, across resets.
  std::string EventLog() const;
  int64_t last_seq() const;
  SimState state() const;
  SimContext context() const;

  // Delivers the current snapshot first, then every later message.
  int Subscribe(std::shared_ptr<Subscriber> subscriber);
  void Unsubscribe(int token);
  // Ends the session: subscribers get OnClose and are dropped.
  void Close();

  Clock::time_point last_active() const;
  void Touch(Clock::time_point now);

 private:
  nlohmann::json SnapshotLocked(const std::vector<Event>& events) const;
  nlohmann::json Reject(int64_t seq, const std::string& reason) const;
  void Broadcast(const nlohmann::json& message);

  const SessionId id_;
  mutable std::mutex mu_;
  Scenario scenario_;
  SimContext ctx_;
  SimState state_;
  std::vector<Event> log_;
  std::vector<Event> last_events_;  // produced by the last applied command
  int64_t last_seq_ = 0;
  Clock::time_point last_active_;
  std::map<int, std::shared_ptr<Subscriber>> subscribers_;
  int next_token_ = 1;
  bool closed_ = false;
};

struct SessionLimits {
  int max_sessions = 64;
  std::chrono::seconds idle_timeout{30 * 60};
};

struct CreateError {
  int http_status = 400;
  std::string message;
  std::string path;  // schema path for malformed scenarios
};

class SessionManager {
 public:
  using ClockFn = std::function<Clock::time_point()>;

  explicit SessionManager(SessionLimits limits = {}, ClockFn clock = nullptr);

  // `scenario` is a bundled name (string) or an inline scenario (object).
  std::variant<std::shared_ptr<Session>, CreateError> Create(
      const nlohmann::json& scenario);

  std::shared_ptr<Session> Find(const SessionId& id);
  // True for sessions that existed but expired or were deleted.
  bool IsGone(const SessionId& id) const;
  bool Remove(const SessionId& id);
  // Closes sessions idle past the timeout; returns how many.
  int ExpireIdle();

  int size() const;
  const SessionLimits& limits() const { return limits_; }
  Clock::time_point Now() const { return clock_(); }

 private:
  SessionId NewId();

  SessionLimits limits_;
  ClockFn clock_;
  mutable std::mutex mu_;
  std::map<SessionId, std::shared_ptr<Session>> sessions_;
  std::set<SessionId> gone_;
};

}  // namespace vinesim::steer

#endif  // VINESIM_STEER_SESSION_H_
