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
#include "concierge/evalharness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "concierge/errors.hpp"
#include "concierge/kb.hpp"
#include "concierge/text.hpp"

namespace concierge {

using nlohmann::json;

namespace {

using Key = std::pair<std::string, std::vector<Value>>;

Key key_of(const Predicate& p) {
  auto args = p.args;
  std::sort(args.begin(), args.end());
  return {p.name, std::move(args)};
}

}  // namespace

std::vector<Predicate> canonical_predicates(const std::vector<Predicate>& preds) {
  std::vector<Predicate> out;
  out.reserve(preds.size());
  for (const auto& p : preds) {
    auto attr = parse_attribute(p.name);
    if (!attr) {
      out.push_back(p);
      continue;
    }
    Predicate c{std::string(attribute_name(*attr)), {}};
    for (const auto& v : p.args) {
      Value n = normalize_attribute_value(c.name, v);
      if (std::find(c.args.begin(), c.args.end(), n) == c.args.end()) c.args.push_back(n);
    }
    out.push_back(std::move(c));
  }
  return out;
}

MatchCounts match_predicates(const std::vector<Predicate>& gold,
                             const std::vector<Predicate>& predicted) {
  std::map<Key, std::size_t> remaining;
  for (const auto& g : gold) ++remaining[key_of(g)];
  MatchCounts counts{0, gold.size(), predicted.size()};
  for (const auto& p : predicted) {
    auto it = remaining.find(key_of(p));
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++counts.matched;
    }
  }
  return counts;
}

double score_example(const std::vector<Predicate>& gold, const std::vector<Predicate>& predicted) {
  const auto c = match_predicates(gold, predicted);
  const std::size_t denom = std::max(c.gold, c.predicted);
  if (denom == 0) return 1.0;
  return static_cast<double>(c.matched) / static_cast<double>(denom);
}

json CorpusReport::to_json() const {
  json rows = json::array();
  for (const auto& e : examples) {
    rows.push_back({{"sentence", e.sentence},
                    {"score", e.score},
                    {"matched", e.counts.matched},
                    {"gold", e.counts.gold},
                    {"predicted", e.counts.predicted},
                    {"prediction", e.predicted}});
  }
  return {{"mean_accuracy", mean_accuracy},
          {"precision", precision},
          {"recall", recall},
          {"count", examples.size()},
          {"examples", rows}};
}

std::vector<MrExample> parse_corpus(std::string_view content) {
  std::vector<MrExample> corpus;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    MrExample ex;
    try {
      const json rec = json::parse(line);
      ex.sentence = rec.at("sentence").get<std::string>();
      for (const auto& g : rec.at("gold")) {
        auto preds = parse_term_list(g.get<std::string>());
        ex.gold.insert(ex.gold.end(), preds.begin(), preds.end());
      }
    } catch (const json::exception& e) {
      throw CorpusFormatError(line_no, e.what());
    } catch (const MalformedTerm& e) {
      throw CorpusFormatError(line_no, e.what());
    }
    if (ex.gold.empty()) throw CorpusFormatError(line_no, "gold is empty");
    corpus.push_back(std::move(ex));
  }
  if (corpus.empty()) throw CorpusFormatError(0, "corpus has no examples");
  return corpus;
}

std::vector<MrExample> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusFormatError(0, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

std::vector<Predicate> predicted_predicates(const ParseResult& result) {
  if (result.label != Label::content) return {Predicate{std::string(label_name(result.label)), {}}};
  return result.predicates;
}

CorpusReport run_corpus(const std::vector<MrExample>& corpus, SemanticParser& parser) {
  CorpusReport report;
  std::size_t matched = 0, gold = 0, predicted = 0;
  double total = 0.0;
  for (const auto& ex : corpus) {
    const auto raw = predicted_predicates(parser.parse(ex.sentence, ParseContext{}));
    const auto pred = canonical_predicates(raw);
    const auto ref = canonical_predicates(ex.gold);
    const auto counts = match_predicates(ref, pred);
    const double score = score_example(ref, pred);
    report.examples.push_back({ex.sentence, score, counts, serialize_term_list(raw)});
    total += score;
    matched += counts.matched;
    gold += counts.gold;
    predicted += counts.predicted;
  }
  report.mean_accuracy = corpus.empty() ? 0.0 : total / static_cast<double>(corpus.size());
  report.precision = predicted == 0 ? 0.0 : static_cast<double>(matched) / predicted;
  report.recall = gold == 0 ? 0.0 : static_cast<double>(matched) / gold;
  return report;
}

CorpusReport run_corpus(const std::filesystem::path& path, SemanticParser& parser) {
  return run_corpus(load_corpus(path), parser);
}

}  // namespace concierge
