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

#include "vinesim/steer/session.h"

#include <cmath>
#include <random>

#include "absl/strings/str_cat.h"
#include "vinesim/kinematics.h"
#include "vinesim/units.h"

namespace vinesim::steer {
namespace {

using nlohmann::json;

json PointMm(Vec2 p) { return json::array({units::MToMm(p.x), units::MToMm(p.y)}); }

json EventJson(const Event& e) {
  return {{"tick", e.tick}, {"kind", e.kind}, {"detail", e.detail}};
}

std::string JamName(JamState s) {
  return s == JamState::kJammed ? "jammed" : "released";
}

}  // namespace

absl::StatusOr<WireCommand> ParseWireCommand(const json& cmd) {
  if (cmd.is_object()) {
    auto type = cmd.find("type");
    if (type != cmd.end() && type->is_string()) {
      if (*type == "Reset") {
        if (cmd.size() != 1) {
          return absl::InvalidArgumentError("at /cmd: Reset takes no fields");
        }
        return wire::Reset{};
      }
      if (*type == "LoadScenario") {
        auto name = cmd.find("name");
        if (name == cmd.end() || !name->is_string() || cmd.size() != 2) {
          return absl::InvalidArgumentError(
              "at /cmd/name: LoadScenario needs a scenario name");
        }
        return wire::LoadScenario{name->get<std::string>()};
      }
    }
  }
  absl::StatusOr<Command> c = ParseCommand(cmd, "/cmd");
  if (!c.ok()) return c.status();
  return WireCommand(*c);
}

json ScenarioJson(const Scenario& sc) {
  json segments = json::array();
  for (const SegmentSpec& seg : sc.robot.segments) {
    json sides = json::array();
    if (seg.jam_sides.left) sides.push_back("left");
    if (seg.jam_sides.right) sides.push_back("right");
    segments.push_back(
        {{"length_mm", units::MToMm(seg.rest_length)}, {"jam_sides", sides}});
  }
  json obstacles = json::array();
  for (const ConvexObstacle& o : sc.env.obstacles) {
    json poly = json::array();
    for (Vec2 v : o.vertices) poly.push_back(PointMm(v));
    obstacles.push_back(poly);
  }
  json gaps = json::array();
  for (const Gap& g : sc.env.gaps) {
    gaps.push_back({{"p1", PointMm(g.p1)},
                    {"p2", PointMm(g.p2)},
                    {"width_mm", units::MToMm(g.width)}});
  }
  json masses = json::array();
  for (const PushableMass& m : sc.env.masses) {
    masses.push_back({{"position", PointMm(m.position)},
                      {"mass_g", units::KgToG(m.mass)},
                      {"friction_coeff", m.friction_coeff},
                      {"radius_mm", units::MToMm(m.radius)}});
  }
  json targets = json::array();
  for (Vec2 t : sc.env.targets) targets.push_back(PointMm(t));
  json env = {{"obstacles", obstacles},
              {"gaps", gaps},
              {"masses", masses},
              {"targets", targets}};
  if (sc.bounds) {
    env["bounds"] = json::array();
    for (double b : *sc.bounds) env["bounds"].push_back(units::MToMm(b));
  }
  const Pose2& base = sc.config.base_pose;
  return {{"name", sc.name},
          {"robot",
           {{"radius_mm", units::MToMm(sc.robot.radius)}, {"segments", segments}}},
          {"environment", env},
          {"base_pose",
           {{"x_mm", units::MToMm(base.x)},
            {"y_mm", units::MToMm(base.y)},
            {"heading_deg", units::RadToDeg(base.heading)}}},
          {"target_tolerance_mm", units::MToMm(sc.config.target_tolerance)}};
}

Session::Session(SessionId id, Scenario scenario, SimContext ctx,
                 SimState initial)
    : id_(std::move(id)),
      scenario_(std::move(scenario)),
      ctx_(std::move(ctx)),
      state_(std::move(initial)),
      log_(state_.events) {}

json Session::SnapshotLocked(const std::vector<Event>& events) const {
  json backbone = json::array();
  for (Vec2 p : BackbonePolyline(state_.chain, ctx_.config.polyline_deviation)) {
    backbone.push_back(PointMm(p));
  }
  json segments = json::array();
  for (size_t i = 0; i < state_.robot.segments.size(); ++i) {
    const SegmentState& st = state_.robot.segments[i];
    const Arc& arc = state_.segment_arcs[i];
    const bool bent = arc.kind == ArcKind::kBent && arc.angle > 0.0;
    segments.push_back(
        {{"left", JamName(st.left)},
         {"right", JamName(st.right)},
         {"strain", st.strain},
         {"bend_side", SideName(st.bend_side)},
         {"R_mm", bent ? json(units::MToMm(arc.inner_radius)) : json(nullptr)},
         {"theta_deg", bent ? units::RadToDeg(arc.angle) : 0.0}});
  }
  json evs = json::array();
  for (const Event& e : events) evs.push_back(EventJson(e));
  json masses = json::array();
  for (Vec2 m : state_.mass_positions) masses.push_back(PointMm(m));
  const Pose2 tip = TipPose(state_.chain);
  return {{"type", "state"},
          {"session", id_},
          {"seq", last_seq_},
          {"tick", state_.tick},
          {"backbone", backbone},
          {"pressure_kpa", units::PaToKPa(state_.robot.body_pressure)},
          {"segments", segments},
          {"tip_force_n", AxialTipForce(ctx_.spec, state_.robot.body_pressure)},
          {"events", evs},
          {"everted_length_mm", units::MToMm(state_.robot.everted_length)},
          {"tip",
           {{"x_mm", units::MToMm(tip.x)},
            {"y_mm", units::MToMm(tip.y)},
            {"heading_deg", units::RadToDeg(tip.heading)}}},
          {"masses", masses},
          {"targets_reached", state_.targets_reached}};
}

json Session::Reject(int64_t seq, const std::string& reason) const {
  return {{"type", "rejected"},
          {"session", id_},
          {"seq", seq},
          {"expected_seq", last_seq_ + 1},
          {"reason", reason}};
}

void Session::Broadcast(const json& message) {
  const std::string text = message.dump();
  for (auto& [token, sub] : subscribers_) sub->OnMessage(text);
}

Session::Outcome Session::Apply(const json& msg) {
  int64_t seq = 0;
  std::string problem;
  if (!msg.is_object()) {
    problem = "command message must be an object";
  } else if (auto s = msg.find("session"); s != msg.end() && *s != id_) {
    problem = "message addressed to another session";
  } else if (auto q = msg.find("seq"); q == msg.end() || !q->is_number_integer()) {
    problem = "at /seq: integer required";
  } else {
    seq = q->get<int64_t>();
    auto c = msg.find("cmd");
    if (c == msg.end()) {
      problem = "at /cmd: required";
    } else {
      absl::StatusOr<WireCommand> cmd = ParseWireCommand(*c);
      if (!cmd.ok()) {
        problem = std::string(cmd.status().message());
      } else {
        return Apply(seq, *cmd);
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return {false, Reject(seq, problem)};
}

Session::Outcome Session::Apply(int64_t seq, const WireCommand& command) {
  std::lock_guard<std::mutex> lock(mu_);
  if (closed_) return {false, Reject(seq, "session closed")};
  if (seq != last_seq_ + 1) {
    return {false, Reject(seq, seq <= last_seq_ ? "duplicate or stale seq"
                                                : "seq skips ahead")};
  }
  std::vector<Event> produced;
  if (const auto* c = std::get_if<Command>(&command)) {
    const size_t before = state_.events.size();
    absl::StatusOr<SimState> next = Step(ctx_, state_, *c);
    if (!next.ok()) return {false, Reject(seq, std::string(next.status().message()))};
    state_ = *std::move(next);
    produced.assign(state_.events.begin() + static_cast<std::ptrdiff_t>(before),
                    state_.events.end());
  } else {
    const int64_t tick = state_.tick;
    SimContext ctx = ctx_;
    Scenario scenario = scenario_;
    if (const auto* load = std::get_if<wire::LoadScenario>(&command)) {
      absl::StatusOr<Scenario> loaded = LoadBundledScenario(load->name);
      if (!loaded.ok()) return {false, Reject(seq, std::string(loaded.status().message()))};
      absl::StatusOr<SimContext> made =
          MakeSimContext(loaded->robot, loaded->env, loaded->config);
      if (!made.ok()) return {false, Reject(seq, std::string(made.status().message()))};
      scenario = *std::move(loaded);
      ctx = *std::move(made);
    }
    absl::StatusOr<SimState> fresh = InitialState(ctx);
    if (!fresh.ok()) return {false, Reject(seq, std::string(fresh.status().message()))};
    scenario_ = std::move(scenario);
    ctx_ = std::move(ctx);
    state_ = *std::move(fresh);
    state_.tick = tick + 1;
  }
  last_seq_ = seq;
  log_.insert(log_.end(), produced.begin(), produced.end());
  last_events_ = std::move(produced);
  json message = SnapshotLocked(last_events_);
  if (std::holds_alternative<wire::LoadScenario>(command)) {
    message["scenario"] = ScenarioJson(scenario_);
  }
  Broadcast(message);
  return {true, std::move(message)};
}

json Session::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return SnapshotLocked(last_events_);
}

json Session::ScenarioInfo() const {
  std::lock_guard<std::mutex> lock(mu_);
  return ScenarioJson(scenario_);
}

std::string Session::EventLog() const {
  std::lock_guard<std::mutex> lock(mu_);
  return FormatEventLog(log_);
}

int64_t Session::last_seq() const {
  std::lock_guard<std::mutex> lock(mu_);
  return last_seq_;
}

SimState Session::state() const {
  std::lock_guard<std::mutex> lock(mu_);
  return state_;
}

SimContext Session::context() const {
  std::lock_guard<std::mutex> lock(mu_);
  return ctx_;
}

int Session::Subscribe(std::shared_ptr<Subscriber> subscriber) {
  std::lock_guard<std::mutex> lock(mu_);
  if (closed_) {
    subscriber->OnClose();
    return 0;
  }
  subscriber->OnMessage(SnapshotLocked(last_events_).dump());
  const int token = next_token_++;
  subscribers_.emplace(token, std::move(subscriber));
  return token;
}

void Session::Unsubscribe(int token) {
  std::lock_guard<std::mutex> lock(mu_);
  subscribers_.erase(token);
}

void Session::Close() {
  std::lock_guard<std::mutex> lock(mu_);
  if (closed_) return;
  closed_ = true;
  for (auto& [token, sub] : subscribers_) sub->OnClose();
  subscribers_.clear();
}

Clock::time_point Session::last_active() const {
  std::lock_guard<std::mutex> lock(mu_);
  return last_active_;
}

void Session::Touch(Clock::time_point now) {
  std::lock_guard<std::mutex> lock(mu_);
  last_active_ = now;
}

SessionManager::SessionManager(SessionLimits limits, ClockFn clock)
    : limits_(limits), clock_(clock ? std::move(clock) : [] { return Clock::now(); }) {}

SessionId SessionManager::NewId() {
  std::random_device rd;
  std::string id;
  for (int i = 0; i < 4; ++i) {
    absl::StrAppend(&id, absl::Hex(rd(), absl::kZeroPad8));
  }
  return id;
}

std::variant<std::shared_ptr<Session>, CreateError> SessionManager::Create(
    const json& scenario) {
  absl::StatusOr<Scenario> sc;
  if (scenario.is_string()) {
    sc = LoadBundledScenario(scenario.get<std::string>());
    if (!sc.ok()) return CreateError{404, std::string(sc.status().message()), ""};
  } else if (scenario.is_object()) {
    sc = ParseScenario(scenario);
    if (!sc.ok()) {
      return CreateError{422, std::string(sc.status().message()),
                         SchemaErrorPath(sc.status())};
    }
  } else {
    return CreateError{400, "scenario must be a bundled name or an object", ""};
  }
  absl::StatusOr<SimContext> ctx = MakeSimContext(sc->robot, sc->env, sc->config);
  if (!ctx.ok()) return CreateError{422, std::string(ctx.status().message()), ""};
  absl::StatusOr<SimState> initial = InitialState(*ctx);
  if (!initial.ok()) {
    return CreateError{422, std::string(initial.status().message()), ""};
  }
  ExpireIdle();
  std::lock_guard<std::mutex> lock(mu_);
  if (static_cast<int>(sessions_.size()) >= limits_.max_sessions) {
    return CreateError{503, "session limit reached", ""};
  }
  SessionId id;
  do {
    id = NewId();
  } while (sessions_.count(id) || gone_.count(id));
  auto session = std::make_shared<Session>(id, *std::move(sc), *std::move(ctx),
                                           *std::move(initial));
  session->Touch(clock_());
  sessions_.emplace(id, session);
  return session;
}

std::shared_ptr<Session> SessionManager::Find(const SessionId& id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  it->second->Touch(clock_());
  return it->second;
}

bool SessionManager::IsGone(const SessionId& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return gone_.count(id) > 0;
}

bool SessionManager::Remove(const SessionId& id) {
  std::shared_ptr<Session> victim;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return false;
    victim = it->second;
    sessions_.erase(it);
    gone_.insert(id);
  }
  victim->Close();
  return true;
}

int SessionManager::ExpireIdle() {
  std::vector<std::shared_ptr<Session>> expired;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const Clock::time_point now = clock_();
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      if (now - it->second->last_active() >= limits_.idle_timeout) {
        expired.push_back(it->second);
        gone_.insert(it->first);
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (auto& s : expired) s->Close();
  return static_cast<int>(expired.size());
}

int SessionManager::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<int>(sessions_.size());
}

}  // namespace vinesim::steer
