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
#include "concierge/parse_frontend.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <map>
#include <set>

#include "concierge/errors.hpp"
#include "concierge/kb.hpp"
#include "concierge/text.hpp"

namespace concierge {

namespace {

constexpr const char* kPromptHeader =
    "Convert the user's sentence into a comma-separated list of predicates.\n"
    "Use only these predicates: restaurant-name, food type, establishment, price range,\n"
    "customer rating, family-friendly, address, phone number, distance, prefer, not_prefer,\n"
    "another_option, view_history.\n"
    "Write query as the argument when the user asks for that detail and any when the user\n"
    "has no preference. Answer thank for thanks and irrelevant for anything unrelated.\n";

const std::set<std::string> kCuisineValues = {
    "indian",  "thai",     "chinese",   "japanese",      "italian",  "american",
    "mexican", "french",   "korean",    "vietnamese",    "mediterranean",
    "greek",   "spanish",  "english",   "middle eastern", "chicken", "seafood",
    "vegetarian", "bubble tea", "barbecue", "tea",        "juice",
};

const std::map<std::string, std::string> kVenueValues = {
    {"restaurant", "restaurant"}, {"bar", "bar"},       {"pub", "pub"},
    {"coffee shop", "coffee shop"}, {"cafe", "coffee shop"}, {"fast food", "fast food"},
};

const std::set<std::string> kSpecialNames = {"prefer", "not_prefer", "another_option",
                                             "view_history", "thank", "irrelevant"};

bool known_predicate(const std::string& name) {
  return kSpecialNames.count(name) > 0 || parse_attribute(name).has_value();
}

std::string price_level(const std::string& v) {
  static const std::map<std::string, std::string> table = {
      {"cheap", "cheap"},           {"low", "cheap"},           {"inexpensive", "cheap"},
      {"affordable", "cheap"},      {"budget", "cheap"},        {"less than £20", "cheap"},
      {"less than 20", "cheap"},    {"moderate", "moderate"},   {"average", "moderate"},
      {"medium", "moderate"},       {"mid", "moderate"},        {"mid-range", "moderate"},
      {"mid range", "moderate"},    {"reasonable", "moderate"}, {"£20-25", "moderate"},
      {"20-25", "moderate"},        {"expensive", "expensive"}, {"high", "expensive"},
      {"pricey", "expensive"},      {"more than £30", "expensive"},
      {"more than 30", "expensive"},
  };
  auto it = table.find(v);
  return it == table.end() ? std::string() : it->second;
}

std::string rating_level(const std::string& v) {
  static const std::map<std::string, std::string> table = {
      {"high", "high"},         {"good", "high"},        {"great", "high"},
      {"excellent", "high"},    {"5 out of 5", "high"},  {"4 out of 5", "high"},
      {"average", "average"},   {"medium", "average"},   {"ok", "average"},
      {"okay", "average"},      {"decent", "average"},   {"moderate", "average"},
      {"3 out of 5", "average"}, {"low", "low"},         {"poor", "low"},
      {"bad", "low"},           {"1 out of 5", "low"},   {"2 out of 5", "low"},
  };
  auto it = table.find(v);
  return it == table.end() ? std::string() : it->second;
}

std::string family_level(const std::string& v) {
  if (v == "yes" || v == "true" || v == "family friendly" || v == "kid friendly") return "yes";
  if (v == "no" || v == "false" || v == "not family friendly") return "no";
  return {};
}

std::optional<HistoryRef> read_history_arg(const Predicate& p) {
  if (p.args.empty()) return HistoryRef::last();
  const std::string& a = p.args.front().text();
  if (a == "first") return HistoryRef::first();
  if (a == "last" || a == "previous" || a == "latest") return HistoryRef::last();
  try {
    std::size_t used = 0;
    const long n = std::stol(a, &used);
    if (used == a.size() && n >= 1) return HistoryRef::nth(static_cast<std::size_t>(n));
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

// Routes a liked/disliked value to an attribute when the value already names
// one; the rest stays for commonsense expansion.
std::pair<std::string, Value> route_preference(const Value& v) {
  const std::string& t = v.text();
  if (auto venue = kVenueValues.find(t); venue != kVenueValues.end()) {
    return {"establishment", Value::concrete(venue->second)};
  }
  if (kCuisineValues.count(t)) return {"food type", v};
  if (t != "low" && t != "high" && t != "average") {
    if (auto price = price_level(t); !price.empty()) {
      return {"price range", Value::concrete(price)};
    }
  }
  return {"", v};
}

class RequirementBuilder {
 public:
  void add(Polarity polarity, const std::string& attribute, const std::vector<Value>& values) {
    for (auto& r : reqs_) {
      if (r.polarity == polarity && r.attribute == attribute) {
        for (const auto& v : values) push_unique(r.values, v);
        return;
      }
    }
    Requirement r{polarity, attribute, {}};
    for (const auto& v : values) push_unique(r.values, v);
    reqs_.push_back(std::move(r));
  }

  std::vector<Requirement> finish() {
    for (auto& r : reqs_) {
      const bool concrete = std::any_of(r.values.begin(), r.values.end(),
                                        [](const Value& v) { return v.is_concrete(); });
      if (concrete) {
        std::erase_if(r.values, [](const Value& v) { return !v.is_concrete(); });
      }
    }
    return std::move(reqs_);
  }

 private:
  static void push_unique(std::vector<Value>& values, const Value& v) {
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  }
  std::vector<Requirement> reqs_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Prompt

const std::vector<PromptExample>& default_prompt_examples() {
  static const std::vector<PromptExample> examples = {
      {"", "Alimentum is a Japanese restaurant with a high customer rating.",
       "restaurant-name(alimentum), food type(japanese), establishment(restaurant), "
       "customer rating(high)"},
      {"", "Can you recommend a restaurant for me?",
       "restaurant-name(query), establishment(restaurant)"},
      {"", "I want a cheap Indian or Thai restaurant with high ratings.",
       "restaurant-name(query), food type(indian, thai), establishment(restaurant), "
       "price range(cheap), customer rating(high)"},
      {"", "I'd like some spicy noodles, where is the place?",
       "prefer(spicy, noodle), address(query)"},
      {"", "I'm fine with anything but curry.", "not_prefer(curry)"},
      {"", "What is their phone number, and how far is it from here?",
       "phone number(query), distance(query)"},
      {"", "Do you have another option?", "another_option"},
      {"", "Show me the first place you recommended.", "view_history(first)"},
      {"", "Thanks a lot!", "thank"},
      {"", "What's the weather like today?", "irrelevant"},
      {"Are you looking for a place with a particular customer rating?", "Any rating is okay.",
       "customer rating(any)"},
  };
  return examples;
}

std::string build_prompt(const std::vector<PromptExample>& examples, std::string_view utterance,
                         const ParseContext& ctx) {
  std::string out = kPromptHeader;
  out += "\n";
  for (const auto& ex : examples) {
    if (!ex.question.empty()) out += "Bot: " + ex.question + " User: ";
    out += ex.sentence + " ### " + ex.predicates + "\n";
  }
  if (ctx.last_bot_question) out += "Bot: " + ctx.last_bot_question->text + " User: ";
  out += std::string(text::trim(utterance)) + " ###";
  return out;
}

// ---------------------------------------------------------------------------
// LLM backend

ParseResult read_completion(std::string_view completion) {
  std::string_view body = completion;
  if (auto nl = body.find('\n'); nl != std::string_view::npos) {
    // Some completions start with a newline before the answer.
    if (text::trim(body.substr(0, nl)).empty()) {
      body = body.substr(nl + 1);
      if (auto nl2 = body.find('\n'); nl2 != std::string_view::npos) body = body.substr(0, nl2);
    } else {
      body = body.substr(0, nl);
    }
  }
  std::string line(text::trim(body));
  if (text::starts_with(line, "###")) line = std::string(text::trim(std::string_view(line).substr(3)));
  while (!line.empty() && line.back() == '.') line.pop_back();
  if (line.empty()) throw MalformedTerm(0, "empty completion");

  auto preds = parse_term_list(line);
  std::vector<Predicate> content;
  bool thank = false;
  for (auto& p : preds) {
    if (!known_predicate(p.name)) throw MalformedTerm(0, "unknown predicate: " + p.name);
    if (p.name == "thank") {
      thank = true;
    } else if (p.name != "irrelevant") {
      content.push_back(std::move(p));
    }
  }
  if (!content.empty()) return {Label::content, std::move(content)};
  return {thank ? Label::thank : Label::irrelevant, {}};
}

ParseResult llm_parse(std::string_view utterance, const ParseContext& ctx,
                      CompletionClient& client, const std::vector<PromptExample>& examples) {
  const CompletionRequest request{build_prompt(examples, utterance, ctx),
                                  std::string(text::trim(utterance))};
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      return read_completion(client.complete(request));
    } catch (const BackendUnavailable& e) {
      spdlog::warn("parser backend failed (attempt {}): {}", attempt + 1, e.what());
    } catch (const MalformedTerm& e) {
      spdlog::warn("unreadable parser completion (attempt {}): {}", attempt + 1, e.what());
    }
  }
  return {Label::irrelevant, {}};
}

LlmParser::LlmParser(std::shared_ptr<CompletionClient> client, std::vector<PromptExample> examples)
    : client_(std::move(client)), examples_(std::move(examples)) {
  if (!client_) throw BackendUnavailable("no completion client configured");
}

ParseResult LlmParser::parse(std::string_view utterance, const ParseContext& ctx) {
  return llm_parse(utterance, ctx, *client_, examples_);
}

// ---------------------------------------------------------------------------
// Filter

Value normalize_attribute_value(std::string_view attribute, const Value& value) {
  if (!value.is_concrete()) return value;
  auto attr = parse_attribute(attribute);
  if (!attr) return value;
  const std::string t = text::canonical(value.text());
  std::string mapped;
  switch (*attr) {
    case Attribute::price_range:
      mapped = price_level(t);
      break;
    case Attribute::customer_rating:
      mapped = rating_level(t);
      break;
    case Attribute::family_friendly:
      mapped = family_level(t);
      break;
    case Attribute::establishment:
      if (auto it = kVenueValues.find(t); it != kVenueValues.end()) mapped = it->second;
      break;
    default:
      break;
  }
  return mapped.empty() ? value : Value::concrete(mapped);
}

NormalizedInput normalize_parse(const ParseResult& result, const ParseContext& /*ctx*/) {
  NormalizedInput out;
  out.label = result.label;
  if (result.label != Label::content) return out;

  RequirementBuilder builder;
  for (const auto& p : result.predicates) {
    if (p.name == "another_option") {
      out.special = AnotherOption{};
      continue;
    }
    if (p.name == "view_history") {
      if (auto ref = read_history_arg(p)) out.special = *ref;
      continue;
    }
    if (p.name == kPreferAttribute || p.name == kNotPreferAttribute) {
      const bool like = p.name == kPreferAttribute;
      const Polarity polarity = like ? Polarity::require : Polarity::not_require;
      for (const auto& v : p.args) {
        if (!v.is_concrete()) continue;
        auto [attribute, routed] = route_preference(v);
        if (attribute.empty()) {
          builder.add(Polarity::require, p.name, {v});
        } else {
          builder.add(polarity, attribute, {routed});
        }
      }
      continue;
    }
    auto attr = parse_attribute(p.name);
    if (!attr) continue;  // labels mixed into content, or names we do not model
    const std::string attribute(attribute_name(*attr));
    if (p.args.empty()) continue;
    const bool wildcard = std::any_of(p.args.begin(), p.args.end(),
                                      [](const Value& v) { return v.is_any(); });
    if (wildcard) {
      if (std::find(out.no_preference.begin(), out.no_preference.end(), attribute) ==
          out.no_preference.end()) {
        out.no_preference.push_back(attribute);
      }
      continue;
    }
    std::vector<Value> values;
    for (const auto& v : p.args) values.push_back(normalize_attribute_value(attribute, v));
    builder.add(Polarity::require, attribute, values);
  }
  out.requirements = builder.finish();
  if (out.requirements.empty() && out.no_preference.empty() && !out.special) {
    out.label = Label::irrelevant;
  }
  return out;
}

}  // namespace concierge
