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
// Template-based reply rendering.
#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "concierge/dialog.hpp"
#include "concierge/llm_client.hpp"

namespace concierge {

// Question per attribute and reply variants per canned kind. Loadable from
// JSON: {"questions": {"<attribute>": "..."}, "canned": {"<kind>": ["..."]}}.
// Entries missing from a file fall back to the defaults.
struct Templates {
  std::map<std::string, std::string> questions;
  std::map<std::string, std::vector<std::string>> canned;

  static Templates defaults();
  static Templates load(const std::filesystem::path& path);
  static Templates parse_json(std::string_view content);
};

std::string render_question(std::string_view attribute, const Templates& templates);
std::string render_question(std::string_view attribute);

std::string render_recommendation(const Recommendation& rec);
std::string render_no_result(const RelaxationReport& report);

// variant selects among the alternatives for the kind (modulo their count).
std::string render_canned(CannedKind kind, const Templates& templates, std::size_t variant = 0,
                          std::string_view detail = {});
std::string render_canned(CannedKind kind, std::size_t variant = 0, std::string_view detail = {});

// Renders any action; variant feeds canned rotation.
std::string render(const AgentAction& action, const Templates& templates, std::size_t variant);

class Rephraser {
 public:
  virtual ~Rephraser() = default;
  virtual std::string rephrase(const std::string& text) = 0;
};

class IdentityRephraser : public Rephraser {
 public:
  std::string rephrase(const std::string& text) override { return text; }
};

// Asks the completion backend for a paraphrase; falls back to the input text
// (with a warning) when the backend fails or returns nothing.
class LlmRephraser : public Rephraser {
 public:
  explicit LlmRephraser(std::shared_ptr<CompletionClient> client);
  std::string rephrase(const std::string& text) override;

 private:
  std::shared_ptr<CompletionClient> client_;
};

std::string rephrase_prompt(std::string_view text);

}  // namespace concierge
