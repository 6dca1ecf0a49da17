// Copyright 2026 The Secrl Authors
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

#include "secrl/debugger/server.h"

#include "httplib.h"

namespace secrl::debugger {
namespace {

using nlohmann::json;

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(body.dump(), "application/json");
}

template <typename F>
void Guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const ReportError& e) {
    Reply(res, 422, ErrorBody(e));
  } catch (const Error& e) {
    Reply(res, HttpStatus(e.code()), ErrorBody(e));
  } catch (const json::exception& e) {
    Reply(res, 400, {{"error", "InvalidConfig"}, {"detail", std::string("bad JSON: ") + e.what()}});
  } catch (const std::exception& e) {
    Reply(res, 500, {{"error", "Internal"}, {"detail", e.what()}});
  }
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

int HttpStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSession:
    case ErrorCode::kUnknownModel:
      return 404;
    case ErrorCode::kSessionDone:
      return 409;
    case ErrorCode::kIllegalAction:
    case ErrorCode::kInvalidStrategy:
      return 422;
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kConfigError:
    case ErrorCode::kDimensionCap:
    case ErrorCode::kFileFormat:
    case ErrorCode::kInvalidDiscount:
    case ErrorCode::kShapeMismatch:
      return 400;
    default:
      return 500;
  }
}

json ErrorBody(const Error& error) {
  json body = {{"error", std::string(ErrorCodeName(error.code()))}, {"detail", error.detail()}};
  if (const auto* r = dynamic_cast<const ReportError*>(&error)) body["report"] = r->report();
  return body;
}

DebuggerServer::DebuggerServer(SessionManager& sessions)
    : sessions_(sessions), server_(std::make_unique<httplib::Server>()) {
  auto& srv = *server_;
  srv.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 201, sessions_.Create(ParseBody(req))); });
  });
  srv.Post(R"(/sessions/([0-9A-Za-z]+)/step)",
           [this](const httplib::Request& req, httplib::Response& res) {
             Guarded(res, [&] {
               Reply(res, 200, sessions_.Step(req.matches[1].str(), ParseBody(req)));
             });
           });
  srv.Get(R"(/sessions/([0-9A-Za-z]+))", [this](const httplib::Request& req,
                                                httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 200, sessions_.Snapshot(req.matches[1].str())); });
  });
  srv.Delete(R"(/sessions/([0-9A-Za-z]+))", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
    Guarded(res, [&] {
      const std::string id = req.matches[1].str();
      sessions_.Delete(id);
      Reply(res, 200, {{"deleted", id}});
    });
  });
  srv.Get("/models", [this](const httplib::Request&, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 200, sessions_.Models()); });
  });
  srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

DebuggerServer::~DebuggerServer() { Stop(); }

int DebuggerServer::Bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool DebuggerServer::Serve() { return server_->listen_after_bind(); }

void DebuggerServer::Stop() {
  if (server_) server_->stop();
}

void DebuggerServer::WaitUntilReady() const { server_->wait_until_ready(); }

}  // namespace secrl::debugger
