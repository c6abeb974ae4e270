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
// Meaning-representation accuracy for parser backends.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "concierge/parse_frontend.hpp"
#include "concierge/terms.hpp"

namespace concierge {

struct MrExample {
  std::string sentence;
  std::vector<Predicate> gold;
};

struct MatchCounts {
  std::size_t matched = 0;
  std::size_t gold = 0;
  std::size_t predicted = 0;
};

// Folds attribute aliases and value synonyms so that "price range(high)" and
// "pricerange(expensive)" compare equal. Applied to both sides before scoring.
std::vector<Predicate> canonical_predicates(const std::vector<Predicate>& preds);

// A predicted predicate is correct when some gold predicate has the same name
// and the same argument multiset; each gold predicate is used once.
MatchCounts match_predicates(const std::vector<Predicate>& gold,
                             const std::vector<Predicate>& predicted);

// matched / max(|gold|, |predicted|); two empty sets score 1.
double score_example(const std::vector<Predicate>& gold,
                     const std::vector<Predicate>& predicted);

struct ExampleScore {
  std::string sentence;
  double score = 0.0;
  MatchCounts counts;
  std::string predicted;
};

struct CorpusReport {
  double mean_accuracy = 0.0;
  // Micro-averaged over all predicates.
  double precision = 0.0;
  double recall = 0.0;
  std::vector<ExampleScore> examples;

  nlohmann::json to_json() const;
};

// JSON lines {"sentence": "...", "gold": ["pred(args)", ...]}. Throws
// CorpusFormatError, including for an empty corpus.
std::vector<MrExample> load_corpus(const std::filesystem::path& path);
std::vector<MrExample> parse_corpus(std::string_view content);

// Non-content parses count as the single predicate named after the label.
std::vector<Predicate> predicted_predicates(const ParseResult& result);

CorpusReport run_corpus(const std::vector<MrExample>& corpus, SemanticParser& parser);
CorpusReport run_corpus(const std::filesystem::path& path, SemanticParser& parser);

}  // namespace concierge
