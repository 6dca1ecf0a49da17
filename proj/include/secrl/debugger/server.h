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

#ifndef SECRL_DEBUGGER_SERVER_H_
#define SECRL_DEBUGGER_SERVER_H_

#include <memory>
#include <string>

#include "json.hpp"
#include "secrl/core/error.h"
#include "secrl/debugger/session.h"

namespace httplib {
class Server;
}

namespace secrl::debugger {

// HTTP status for a library error code.
int HttpStatus(ErrorCode code);
// {"error": code, "detail": text} plus "report" when one is attached.
nlohmann::json ErrorBody(const Error& error);

// HTTP front end over a SessionManager:
//   POST /sessions, POST /sessions/{id}/step, GET /sessions/{id},
//   DELETE /sessions/{id}, GET /models.
class DebuggerServer {
 public:
  explicit DebuggerServer(SessionManager& sessions);
  ~DebuggerServer();

  // Binds; port 0 picks a free port. Returns the bound port or -1.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); returns false if the server failed.
  bool Serve();
  void Stop();
  void WaitUntilReady() const;

 private:
  SessionManager& sessions_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace secrl::debugger

#endif  // SECRL_DEBUGGER_SERVER_H_
