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

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace concierge {

struct CompletionRequest {
  std::string prompt;
  // Short identifier of what is being completed (the user utterance for the
  // parser, the draft reply for the rephraser). Replay clients key on it.
  std::string key;
};

class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  // Throws BackendUnavailable on transport or protocol failure.
  virtual std::string complete(const CompletionRequest& request) = 0;
};

struct LlmEndpoint {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/completions";
  std::string model = "gpt-3.5-turbo-instruct";
  std::string api_key;
  int max_tokens = 128;
  std::chrono::seconds timeout{20};
};

inline constexpr const char* kApiKeyEnv = "CONCIERGE_LLM_API_KEY";

// Fills api_key from the environment.
LlmEndpoint endpoint_from_env(LlmEndpoint base = {});

// POSTs {"model","prompt","max_tokens","temperature":0,"stop":["\n"]} and
// reads choices[0].text.
class HttpCompletionClient : public CompletionClient {
 public:
  explicit HttpCompletionClient(LlmEndpoint endpoint);
  std::string complete(const CompletionRequest& request) override;

 private:
  LlmEndpoint endpoint_;
};

// Serves recorded completions. File format: JSON lines
//   {"utterance": "...", "completion": "..."}
// A key without a recording raises BackendUnavailable.
class ReplayCompletionClient : public CompletionClient {
 public:
  explicit ReplayCompletionClient(std::map<std::string, std::string> recordings);
  ReplayCompletionClient(ReplayCompletionClient&& other) noexcept
      : recordings_(std::move(other.recordings_)), calls_(other.calls_.load()) {}
  static ReplayCompletionClient load(const std::filesystem::path& path);

  std::string complete(const CompletionRequest& request) override;
  int calls() const { return calls_.load(); }

 private:
  std::map<std::string, std::string> recordings_;
  std::atomic<int> calls_{0};
};

}  // namespace concierge
