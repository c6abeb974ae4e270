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
#include "concierge/llm_client.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "concierge/errors.hpp"
#include "concierge/text.hpp"
#include "httplib.h"
#include "json.hpp"

namespace concierge {

using nlohmann::json;

LlmEndpoint endpoint_from_env(LlmEndpoint base) {
  if (const char* key = std::getenv(kApiKeyEnv); key != nullptr && *key != '\0') {
    base.api_key = key;
  }
  return base;
}

HttpCompletionClient::HttpCompletionClient(LlmEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

std::string HttpCompletionClient::complete(const CompletionRequest& request) {
  if (endpoint_.api_key.empty()) {
    throw BackendUnavailable(fmt::format("no API key (set {})", kApiKeyEnv));
  }
  const json body = {
      {"model", endpoint_.model},
      {"prompt", request.prompt},
      {"max_tokens", endpoint_.max_tokens},
      {"temperature", 0},
      {"stop", json::array({"\n"})},
  };

  httplib::Client client(endpoint_.base_url);
  const auto secs = static_cast<time_t>(endpoint_.timeout.count());
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);
  client.set_bearer_token_auth(endpoint_.api_key);

  auto res = client.Post(endpoint_.path, body.dump(), "application/json");
  if (!res) {
    throw BackendUnavailable("completion request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendUnavailable(fmt::format("completion endpoint returned {}", res->status));
  }
  try {
    const json reply = json::parse(res->body);
    return reply.at("choices").at(0).at("text").get<std::string>();
  } catch (const json::exception& e) {
    throw BackendUnavailable(std::string("unexpected completion payload: ") + e.what());
  }
}

ReplayCompletionClient::ReplayCompletionClient(std::map<std::string, std::string> recordings)
    : recordings_(std::move(recordings)) {}

ReplayCompletionClient ReplayCompletionClient::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BackendUnavailable("cannot open replay file " + path.string());
  std::map<std::string, std::string> recordings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      const json rec = json::parse(line);
      recordings[text::trim(rec.at("utterance").get<std::string>())] =
          rec.at("completion").get<std::string>();
    } catch (const json::exception& e) {
      throw BackendUnavailable(
          fmt::format("{}:{}: bad replay record: {}", path.string(), line_no, e.what()));
    }
  }
  return ReplayCompletionClient(std::move(recordings));
}

std::string ReplayCompletionClient::complete(const CompletionRequest& request) {
  ++calls_;
  auto it = recordings_.find(text::trim(request.key));
  if (it == recordings_.end()) throw BackendUnavailable("no recording for: " + request.key);
  return it->second;
}

}  // namespace concierge
