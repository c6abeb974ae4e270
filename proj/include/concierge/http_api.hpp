// Copyright 2026 The Concierge Authors
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

#include <string>

#include "concierge/service.hpp"

namespace httplib {
class Server;
}

namespace concierge {

// Routes:
//   POST /sessions                      -> 201 {"id", "reply"}
//   POST /sessions/{id}/messages {text} -> 200 {"reply", "action", "state"}
//   GET  /sessions/{id}/state           -> 200 state snapshot
// Errors are {"error": "..."} with 400 (bad body), 404 (unknown session) or
// 413 (message too long).
void install_routes(httplib::Server& server, ConciergeService& service);

// Blocks serving until the process ends.
void serve(ConciergeService& service, const std::string& host, int port);

}  // namespace concierge
