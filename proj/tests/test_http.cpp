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
#include <thread>

#include "concierge/http_api.hpp"
#include "doctest.h"
#include "golden.hpp"
#include "httplib.h"
#include "json.hpp"
#include "support.hpp"

using namespace concierge;
using nlohmann::json;

namespace {

struct Fixture {
  Fixture() : service(make_config()) {
    install_routes(server, service);
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~Fixture() {
    server.stop();
    thread.join();
  }

  static ServiceConfig make_config() {
    ServiceConfig c;
    c.kb = std::make_shared<const Knowledgebase>(testsupport::fixture_kb());
    return c;
  }

  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }

  std::string new_session() {
    auto res = client().Post("/sessions", "", "application/json");
    REQUIRE(res);
    REQUIRE(res->status == 201);
    return json::parse(res->body)["id"];
  }

  httplib::Result say(const std::string& id, const std::string& text) {
    return client().Post("/sessions/" + id + "/messages", json{{"text", text}}.dump(), "application/json");
  }

  ConciergeService service;
  httplib::Server server;
  int port = 0;
  std::thread thread;
};

}  // namespace

TEST_CASE("create session") {
  Fixture f;
  auto res = f.client().Post("/sessions", "", "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  const auto body = json::parse(res->body);
  CHECK(body["id"].get<std::string>().size() == 16);
  CHECK(body["reply"] == "Hi there, how can I assist you?");
  CHECK(f.service.session_count() == 1);
}

TEST_CASE("conversation 1 over HTTP") {
  Fixture f;
  const auto id = f.new_session();
  const auto& turns = golden::kConversation1.turns;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    auto res = f.say(id, turns[i]);
    REQUIRE(res);
    REQUIRE(res->status == 200);
    const auto body = json::parse(res->body);
    CAPTURE(i);
    CHECK(same_requirements(parse_state(body["state"]["listing"].get<std::string>()),
                            parse_state(golden::kConversation1Listings[i])));
    if (i == 3) {
      CHECK(body["action"]["kind"] == "recommend");
      CHECK(body["action"]["recommendation"]["place_id"] == 1);
      CHECK(body["reply"].get<std::string>().find("Southern Recipes Grill") != std::string::npos);
    }
  }
  auto res = f.client().Get("/sessions/" + id + "/state");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["history"].size() == 1);
}

TEST_CASE("error statuses") {
  Fixture f;
  const auto id = f.new_session();
  auto c = f.client();

  auto unknown = f.say("0000000000000000", "hello");
  REQUIRE(unknown);
  CHECK(unknown->status == 404);
  CHECK(json::parse(unknown->body).contains("error"));

  auto unknown_state = c.Get("/sessions/0000000000000000/state");
  REQUIRE(unknown_state);
  CHECK(unknown_state->status == 404);

  auto bad_json = c.Post("/sessions/" + id + "/messages", "{not json", "application/json");
  REQUIRE(bad_json);
  CHECK(bad_json->status == 400);

  auto no_text = c.Post("/sessions/" + id + "/messages", R"({"message": "hi"})", "application/json");
  REQUIRE(no_text);
  CHECK(no_text->status == 400);

  auto not_string = c.Post("/sessions/" + id + "/messages", R"({"text": 7})", "application/json");
  REQUIRE(not_string);
  CHECK(not_string->status == 400);

  auto empty = f.say(id, "");
  REQUIRE(empty);
  CHECK(empty->status == 400);

  auto too_long = f.say(id, std::string(kMaxMessageBytes + 1, 'x'));
  REQUIRE(too_long);
  CHECK(too_long->status == 413);

  // Rejected messages leave the transcript alone.
  CHECK(f.service.transcript(id).size() == 1);
}
