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
// Semantic parser boundary: the shared interface, the offline rule backend,
// the LLM backend with its few-shot prompt, and the filter that turns parser
// predicates into requirements.
#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "concierge/llm_client.hpp"
#include "concierge/recommend.hpp"
#include "concierge/requirement.hpp"
#include "concierge/terms.hpp"

namespace concierge {

struct BotQuestion {
  std::string attribute;
  std::string text;
};

struct ParseContext {
  std::optional<BotQuestion> last_bot_question;
  std::set<std::string> discussed;
};

struct ParseResult {
  Label label = Label::irrelevant;
  std::vector<Predicate> predicates;

  friend bool operator==(const ParseResult&, const ParseResult&) = default;
};

struct AnotherOption {
  friend bool operator==(const AnotherOption&, const AnotherOption&) = default;
};
using Special = std::variant<AnotherOption, HistoryRef>;

struct NormalizedInput {
  Label label = Label::irrelevant;
  std::vector<Requirement> requirements;  // prefer/not_prefer still present
  std::vector<std::string> no_preference;
  std::optional<Special> special;

  friend bool operator==(const NormalizedInput&, const NormalizedInput&) = default;
};

class SemanticParser {
 public:
  virtual ~SemanticParser() = default;
  virtual ParseResult parse(std::string_view utterance, const ParseContext& ctx) = 0;
};

struct PriceThresholds {
  double cheap_below = 15.0;       // per meal, dollars
  double expensive_above = 40.0;
};

// Keyword and pattern lexicon. Deterministic and stateless.
class RuleParser : public SemanticParser {
 public:
  explicit RuleParser(PriceThresholds thresholds = {});
  ParseResult parse(std::string_view utterance, const ParseContext& ctx) override;

 private:
  PriceThresholds thresholds_;
};

ParseResult rule_parse(std::string_view utterance, const ParseContext& ctx,
                       PriceThresholds thresholds = {});

struct PromptExample {
  std::string question;  // bot question that preceded the sentence, if any
  std::string sentence;
  std::string predicates;
};

const std::vector<PromptExample>& default_prompt_examples();

// Instruction header, one "sentence ### predicates" line per example, then
// the utterance followed by "###" awaiting completion. With a last bot
// question the sentence lines read "Bot: <question> User: <sentence>".
std::string build_prompt(const std::vector<PromptExample>& examples, std::string_view utterance,
                         const ParseContext& ctx);

// Sends the prompt, reads labels or predicate lists back. A transport failure
// or a malformed completion is retried once; a second failure yields
// irrelevant.
class LlmParser : public SemanticParser {
 public:
  explicit LlmParser(std::shared_ptr<CompletionClient> client,
                     std::vector<PromptExample> examples = default_prompt_examples());
  ParseResult parse(std::string_view utterance, const ParseContext& ctx) override;

 private:
  std::shared_ptr<CompletionClient> client_;
  std::vector<PromptExample> examples_;
};

ParseResult llm_parse(std::string_view utterance, const ParseContext& ctx,
                      CompletionClient& client,
                      const std::vector<PromptExample>& examples = default_prompt_examples());

// Interprets a completion: a bare label word, or a predicate list. Throws
// MalformedTerm.
ParseResult read_completion(std::string_view completion);

// Folds attribute-specific synonyms: "average" and "low" are prices or
// ratings depending on the attribute, "true"/"false" are family-friendliness,
// E2E-style ranges ("less than £20", "5 out of 5") map to the three-value
// domains.
Value normalize_attribute_value(std::string_view attribute, const Value& value);

// Maps parser predicates onto the reasoner's two constraint forms.
NormalizedInput normalize_parse(const ParseResult& result, const ParseContext& ctx);

}  // namespace concierge
