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

#include "vinesim/steer/server.h"

#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "vinesim/kinematics.h"
#include "vinesim/planner.h"
#include "vinesim/units.h"

namespace vinesim::steer {
namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

HttpReply Json(int status, const json& body) {
  return {status, "application/json", body.dump()};
}

HttpReply Error(int status, const std::string& message,
                const std::string& path = "") {
  json body = {{"error", message}};
  if (!path.empty()) body["path"] = path;
  return Json(status, body);
}

const char* ContentType(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".html") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json" || ext == ".map") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  if (ext == ".wasm") return "application/wasm";
  return "application/octet-stream";
}

constexpr char kStubPage[] =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>vinesim</title>"
    "</head><body><h1>vinesim steering server</h1><p>No UI bundle is "
    "installed. Start the server with <code>--ui DIR</code> or set "
    "<code>VINESIM_UI_DIR</code>. The API is available under "
    "<code>/sessions</code> and <code>/scenarios</code>.</p></body></html>\n";

HttpReply ServeStatic(const std::string& ui_dir, std::string_view target) {
  std::string path(target.substr(0, target.find('?')));
  if (ui_dir.empty()) {
    if (path == "/" || path == "/index.html") {
      return {200, "text/html; charset=utf-8", kStubPage};
    }
    return Error(404, "not found");
  }
  if (path.find("..") != std::string::npos) return Error(400, "bad path");
  if (path.empty() || path.back() == '/') path += "index.html";
  const std::filesystem::path file = std::filesystem::path(ui_dir) / path.substr(1);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(file, ec)) return Error(404, "not found");
  std::ifstream in(file, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return {200, ContentType(file), buf.str()};
}

json Mm(Vec2 p) { return json::array({units::MToMm(p.x), units::MToMm(p.y)}); }

std::string SideWire(Side s) {
  switch (s) {
    case Side::kLeft:
      return "left";
    case Side::kRight:
      return "right";
    case Side::kNone:
      break;
  }
  return "none";
}

HttpReply HandlePlan(Session& session, const std::string& body) {
  json req = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (req.is_discarded() || !req.is_object()) {
    return Error(400, "body must be a JSON object");
  }
  auto t = req.find("target");
  if (t == req.end() || !t->is_array() || t->size() != 2 ||
      !(*t)[0].is_number() || !(*t)[1].is_number()) {
    return Error(422, "target must be [x_mm, y_mm]", "/target");
  }
  const Vec2 target{units::MmToM((*t)[0].get<double>()),
                    units::MmToM((*t)[1].get<double>())};
  std::vector<double> grid;
  if (auto g = req.find("grid_kpa"); g != req.end()) {
    if (!g->is_array()) return Error(422, "grid_kpa must be an array", "/grid_kpa");
    for (const json& v : *g) {
      if (!v.is_number()) return Error(422, "grid_kpa entries must be numbers", "/grid_kpa");
      grid.push_back(units::KPaToPa(v.get<double>()));
    }
  } else {
    for (int k = 0; k <= 60; ++k) grid.push_back(units::KPaToPa(k));
  }
  double tolerance_mm = 5.0;
  if (auto tol = req.find("tolerance_mm"); tol != req.end()) {
    if (!tol->is_number()) return Error(422, "tolerance_mm must be a number", "/tolerance_mm");
    tolerance_mm = tol->get<double>();
  }
  const bool check = req.value("check", false);

  const SimContext ctx = session.context();
  PlannerOptions opts;
  opts.base_pose = ctx.config.base_pose;
  absl::StatusOr<PlanResult> result =
      check ? PlanCollisionFree(ctx, target, grid, units::MmToM(tolerance_mm), opts)
            : PlanToTarget(ctx.spec, target, grid, units::MmToM(tolerance_mm), opts);
  if (!result.ok()) return Error(422, std::string(result.status().message()));
  const Plan& plan = result->best;
  json assignment = json::array();
  for (Side s : plan.assignment) assignment.push_back(SideWire(s));
  json commands = json::array();
  for (const Command& c : PlanToCommands(ctx.spec, plan)) {
    commands.push_back(CommandToJson(c));
  }
  json ghost = json::array();
  if (absl::StatusOr<ArcChain> chain = AssignmentChain(
          ctx.spec, plan.assignment, plan.pressure, ctx.config.base_pose);
      chain.ok()) {
    for (Vec2 p : BackbonePolyline(*chain, ctx.config.polyline_deviation)) {
      ghost.push_back(Mm(p));
    }
  }
  return Json(200, {{"type", result->reachable ? "plan" : "no-plan"},
                    {"assignment", assignment},
                    {"pressure_kpa", units::PaToKPa(plan.pressure)},
                    {"predicted_tip",
                     {{"x_mm", units::MToMm(plan.predicted_tip.x)},
                      {"y_mm", units::MToMm(plan.predicted_tip.y)},
                      {"heading_deg", units::RadToDeg(plan.predicted_tip.heading)}}},
                    {"cost_mm", units::MToMm(plan.cost)},
                    {"grid_cost_mm", units::MToMm(plan.grid_cost)},
                    {"collision_checked", check},
                    {"commands", commands},
                    {"backbone", ghost}});
}

}  // namespace

uint16_t PortFromEnv(uint16_t fallback) {
  const char* env = std::getenv("VINESIM_PORT");
  int port = 0;
  if (env != nullptr && absl::SimpleAtoi(env, &port) && port > 0 && port < 65536) {
    return static_cast<uint16_t>(port);
  }
  return fallback;
}

HttpReply HandleHttp(SessionManager& sessions, const std::string& ui_dir,
                     const std::string& method, const std::string& target,
                     const std::string& body) {
  const std::string path = target.substr(0, target.find('?'));
  if (path == "/healthz" && method == "GET") {
    return Json(200, {{"status", "ok"}, {"sessions", sessions.size()}});
  }
  if (path == "/scenarios" && method == "GET") {
    return Json(200, {{"scenarios", BundledScenarioNames()}});
  }
  if (path == "/sessions") {
    if (method != "POST") return Error(405, "method not allowed");
    json req = json::parse(body, nullptr, /*allow_exceptions=*/false);
    if (req.is_discarded() || !req.is_object() || !req.contains("scenario")) {
      return Error(400, "body must be {\"scenario\": name or object}");
    }
    auto created = sessions.Create(req["scenario"]);
    if (auto* err = std::get_if<CreateError>(&created)) {
      return Error(err->http_status, err->message, err->path);
    }
    const auto& session = std::get<std::shared_ptr<Session>>(created);
    return Json(201, {{"session", session->id()},
                      {"scenario", session->ScenarioInfo()},
                      {"state", session->Snapshot()}});
  }
  if (absl::StartsWith(path, "/sessions/")) {
    std::vector<std::string> parts =
        absl::StrSplit(path.substr(std::string("/sessions/").size()), '/');
    const std::string& id = parts[0];
    std::shared_ptr<Session> session = sessions.Find(id);
    if (session == nullptr) {
      return sessions.IsGone(id) ? Error(410, "session gone")
                                 : Error(404, "unknown session");
    }
    if (parts.size() == 1) {
      if (method == "GET") {
        return Json(200, {{"session", id},
                          {"scenario", session->ScenarioInfo()},
                          {"state", session->Snapshot()}});
      }
      if (method == "DELETE") {
        sessions.Remove(id);
        return {204, "application/json", ""};
      }
      return Error(405, "method not allowed");
    }
    if (parts.size() == 2 && parts[1] == "commands" && method == "POST") {
      json msg = json::parse(body, nullptr, /*allow_exceptions=*/false);
      if (msg.is_discarded()) return Error(400, "malformed JSON");
      Session::Outcome out = session->Apply(msg);
      return Json(out.applied ? 200 : 409, out.message);
    }
    if (parts.size() == 2 && parts[1] == "events" && method == "GET") {
      return {200, "text/csv", session->EventLog()};
    }
    if (parts.size() == 2 && parts[1] == "plan" && method == "POST") {
      return HandlePlan(*session, body);
    }
    return Error(404, "not found");
  }
  if (method != "GET" && method != "HEAD") return Error(405, "method not allowed");
  return ServeStatic(ui_dir, target);
}

namespace {

class WsConnection;

class WsSubscriber : public Subscriber {
 public:
  explicit WsSubscriber(std::weak_ptr<WsConnection> conn) : conn_(std::move(conn)) {}
  void OnMessage(const std::string& message) override;
  void OnClose() override;

 private:
  std::weak_ptr<WsConnection> conn_;
};

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket&& socket, SessionManager& sessions,
               std::shared_ptr<Session> session)
      : ws_(std::move(socket)), sessions_(sessions), session_(std::move(session)) {}

  void Run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&WsConnection::OnAccept,
                                                    shared_from_this()));
  }

  // Runs on the connection's executor.
  void Queue(std::string message) {
    if (closing_) return;
    outbox_.push_back(std::move(message));
    if (outbox_.size() == 1) DoWrite();
  }

  void CloseWhenFlushed() {
    close_requested_ = true;
    if (outbox_.empty()) DoClose();
  }

  net::any_io_executor executor() { return ws_.get_executor(); }

 private:
  void OnAccept(beast::error_code ec) {
    if (ec) return;
    token_ = session_->Subscribe(std::make_shared<WsSubscriber>(weak_from_this()));
    DoRead();
  }

  void DoRead() {
    ws_.async_read(inbox_, beast::bind_front_handler(&WsConnection::OnRead,
                                                     shared_from_this()));
  }

  void OnRead(beast::error_code ec, std::size_t) {
    if (ec) {
      Finish();
      return;
    }
    const std::string text = beast::buffers_to_string(inbox_.data());
    inbox_.consume(inbox_.size());
    session_->Touch(sessions_.Now());
    json msg = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (msg.is_discarded()) {
      Queue(json{{"type", "rejected"},
                 {"session", session_->id()},
                 {"seq", nullptr},
                 {"expected_seq", session_->last_seq() + 1},
                 {"reason", "malformed JSON"}}
                .dump());
    } else {
      // Applied snapshots reach this connection through its subscription.
      Session::Outcome out = session_->Apply(msg);
      if (!out.applied) Queue(out.message.dump());
    }
    DoRead();
  }

  void DoWrite() {
    ws_.text(true);
    ws_.async_write(net::buffer(outbox_.front()),
                    beast::bind_front_handler(&WsConnection::OnWrite,
                                              shared_from_this()));
  }

  void OnWrite(beast::error_code ec, std::size_t) {
    if (ec) {
      Finish();
      return;
    }
    outbox_.pop_front();
    if (!outbox_.empty()) {
      DoWrite();
    } else if (close_requested_) {
      DoClose();
    }
  }

  void DoClose() {
    if (closing_) return;
    closing_ = true;
    ws_.async_close(websocket::close_code::normal,
                    [self = shared_from_this()](beast::error_code) { self->Finish(); });
  }

  void Finish() {
    if (token_ != 0) {
      session_->Unsubscribe(token_);
      token_ = 0;
    }
  }

  websocket::stream<beast::tcp_stream> ws_;
  SessionManager& sessions_;
  std::shared_ptr<Session> session_;
  beast::flat_buffer inbox_;
  std::deque<std::string> outbox_;
  int token_ = 0;
  bool close_requested_ = false;
  bool closing_ = false;
};

void WsSubscriber::OnMessage(const std::string& message) {
  if (auto conn = conn_.lock()) {
    net::post(conn->executor(), [conn, message] { conn->Queue(message); });
  }
}

void WsSubscriber::OnClose() {
  if (auto conn = conn_.lock()) {
    net::post(conn->executor(), [conn] { conn->CloseWhenFlushed(); });
  }
}

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket&& socket, SessionManager& sessions,
                 const std::string& ui_dir)
      : stream_(std::move(socket)), sessions_(sessions), ui_dir_(ui_dir) {}

  void Run() {
    net::dispatch(stream_.get_executor(),
                  beast::bind_front_handler(&HttpConnection::DoRead,
                                            shared_from_this()));
  }

 private:
  void DoRead() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(60));
    http::async_read(stream_, buffer_, req_,
                     beast::bind_front_handler(&HttpConnection::OnRead,
                                               shared_from_this()));
  }

  void OnRead(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) {
      beast::error_code ignored;
      stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
      return;
    }
    if (ec) return;
    const std::string target(req_.target());
    if (websocket::is_upgrade(req_)) {
      UpgradeOrReject(target);
      return;
    }
    HttpReply reply = HandleHttp(sessions_, ui_dir_,
                                 std::string(req_.method_string()), target,
                                 req_.body());
    Send(std::move(reply));
  }

  void UpgradeOrReject(const std::string& target) {
    const std::string path = target.substr(0, target.find('?'));
    std::vector<std::string> parts = absl::StrSplit(path, '/');
    // "", "sessions", id, "ws"
    if (parts.size() == 4 && parts[1] == "sessions" && parts[3] == "ws") {
      if (std::shared_ptr<Session> s = sessions_.Find(parts[2])) {
        stream_.expires_never();
        std::make_shared<WsConnection>(stream_.release_socket(), sessions_, s)
            ->Run(std::move(req_));
        return;
      }
      Send(sessions_.IsGone(parts[2]) ? HttpReply{410, "application/json",
                                                  R"({"error":"session gone"})"}
                                      : HttpReply{404, "application/json",
                                                  R"({"error":"unknown session"})"});
      return;
    }
    Send({404, "application/json", R"({"error":"not found"})"});
  }

  void Send(HttpReply reply) {
    auto res = std::make_shared<http::response<http::string_body>>(
        static_cast<http::status>(reply.status), req_.version());
    res->set(http::field::server, "vinesim");
    res->set(http::field::content_type, reply.content_type);
    res->keep_alive(req_.keep_alive());
    if (req_.method() != http::verb::head) res->body() = std::move(reply.body);
    res->prepare_payload();
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code ec,
                                                       std::size_t) {
                        if (ec) return;
                        if (!res->keep_alive()) {
                          beast::error_code ignored;
                          self->stream_.socket().shutdown(
                              tcp::socket::shutdown_send, ignored);
                          return;
                        }
                        self->DoRead();
                      });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  SessionManager& sessions_;
  const std::string& ui_dir_;
};

}  // namespace

struct Server::Impl {
  explicit Impl(ServerOptions opts)
      : options(std::move(opts)),
        sessions(options.limits),
        ioc(std::max(1, options.threads)),
        acceptor(net::make_strand(ioc)),
        sweeper(ioc),
        signals(ioc) {}

  void Accept() {
    acceptor.async_accept(net::make_strand(ioc),
                          [this](beast::error_code ec, tcp::socket socket) {
                            if (ec) {
                              if (ec == net::error::operation_aborted) return;
                            } else {
                              std::make_shared<HttpConnection>(
                                  std::move(socket), sessions, options.ui_dir)
                                  ->Run();
                            }
                            Accept();
                          });
  }

  void Sweep() {
    sweeper.expires_after(options.sweep_interval);
    sweeper.async_wait([this](beast::error_code ec) {
      if (ec) return;
      sessions.ExpireIdle();
      Sweep();
    });
  }

  ServerOptions options;
  SessionManager sessions;
  net::io_context ioc;
  tcp::acceptor acceptor;
  net::steady_timer sweeper;
  net::signal_set signals;
  std::vector<std::thread> threads;
  uint16_t bound_port = 0;
};

Server::Server(ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() { Stop(); }

absl::Status Server::Start() {
  Impl& s = *impl_;
  beast::error_code ec;
  const net::ip::address address = net::ip::make_address(s.options.address, ec);
  if (ec) return absl::InvalidArgumentError("bad listen address " + s.options.address);
  const tcp::endpoint endpoint(address, s.options.port);
  s.acceptor.open(endpoint.protocol(), ec);
  if (!ec) s.acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) s.acceptor.bind(endpoint, ec);
  if (!ec) s.acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat("cannot listen on ", s.options.address,
                                               ":", s.options.port, ": ",
                                               ec.message()));
  }
  s.bound_port = s.acceptor.local_endpoint().port();
  s.Accept();
  s.Sweep();
  if (s.options.stop_on_signals) {
    s.signals.add(SIGINT);
    s.signals.add(SIGTERM);
    s.signals.async_wait([this](beast::error_code, int) { impl_->ioc.stop(); });
  }
  for (int i = 0; i < std::max(1, s.options.threads); ++i) {
    s.threads.emplace_back([&s] { s.ioc.run(); });
  }
  return absl::OkStatus();
}

uint16_t Server::port() const { return impl_->bound_port; }

void Server::Wait() {
  for (std::thread& t : impl_->threads) {
    if (t.joinable()) t.join();
  }
}

void Server::Stop() {
  impl_->ioc.stop();
  Wait();
}

SessionManager& Server::sessions() { return impl_->sessions; }

}  // namespace vinesim::steer
