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
#include "concierge/http_api.hpp"

#include <spdlog/spdlog.h>

#include "concierge/errors.hpp"
#include "concierge/json_io.hpp"
#include "httplib.h"
#include "json.hpp"

namespace concierge {

using nlohmann::json;

namespace {

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send(res, status, {{"error", message}});
}

}  // namespace

void install_routes(httplib::Server& server, ConciergeService& service) {
  server.Post("/sessions", [&service](const httplib::Request&, httplib::Response& res) {
    const std::string id = service.create_session();
    const auto transcript = service.transcript(id);
    send(res, 201, {{"id", id}, {"reply", transcript.empty() ? "" : transcript.front().text}});
  });

  server.Post(R"(/sessions/([^/]+)/messages)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                const std::string id = req.matches[1];
                json body;
                try {
                  body = json::parse(req.body);
                } catch (const json::exception&) {
                  return send_error(res, 400, "body must be JSON");
                }
                if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
                  return send_error(res, 400, "body must be {\"text\": \"...\"}");
                }
                const std::string text = body["text"].get<std::string>();
                try {
                  send(res, 200, to_json(service.post_message(id, text)));
                } catch (const UnknownSession& e) {
                  send_error(res, 404, e.what());
                } catch (const MessageRejected& e) {
                  send_error(res, text.size() > kMaxMessageBytes ? 413 : 400, e.what());
                }
              });

  server.Get(R"(/sessions/([^/]+)/state)",
             [&service](const httplib::Request& req, httplib::Response& res) {
               try {
                 send(res, 200, to_json(service.get_state(req.matches[1])));
               } catch (const UnknownSession& e) {
                 send_error(res, 404, e.what());
               }
             });

  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        spdlog::error("request failed: {}", what);
        send_error(res, 500, what);
      });
}

void serve(ConciergeService& service, const std::string& host, int port) {
  httplib::Server server;
  install_routes(server, service);
  spdlog::info("listening on {}:{}", host, port);
  if (!server.listen(host, port)) {
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace concierge
