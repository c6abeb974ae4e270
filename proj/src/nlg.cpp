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
#include "concierge/nlg.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <sstream>

#include "concierge/errors.hpp"
#include "concierge/kb.hpp"
#include "concierge/text.hpp"
#include "json.hpp"

namespace concierge {

namespace {

std::string join_readable(const std::vector<std::string>& items) {
  if (items.empty()) return {};
  if (items.size() == 1) return items.front();
  std::string out;
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  out += (items.size() > 2 ? ", and " : " and ") + items.back();
  return out;
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

// How a constraint on an attribute is named in running text.
std::string criterion_name(std::string_view attribute) {
  if (attribute == "price range") return "budget";
  if (attribute == "customer rating") return "rating";
  if (attribute == "family friendly") return "family-friendliness";
  return std::string(attribute);
}

std::string article(std::string_view word) {
  const bool vowel = !word.empty() && std::string_view("aeiou").find(word.front()) != std::string_view::npos;
  return fmt::format("{} {}", vowel ? "an" : "a", word);
}

// A require listing every value of a closed domain records "no preference";
// it says nothing worth repeating back.
bool covers_domain(const Requirement& r) {
  auto attr = parse_attribute(r.attribute);
  if (!attr) return false;
  const auto domain = attribute_domain(*attr);
  if (domain.empty()) return false;
  return std::all_of(domain.begin(), domain.end(), [&](std::string_view d) {
    return std::any_of(r.values.begin(), r.values.end(),
                       [&](const Value& v) { return v.text() == d; });
  });
}

std::string describe_match(const Match& m) {
  const auto& attr = m.requirement.attribute;
  if (attr == "family friendly") {
    return m.value == "yes" ? "being family friendly" : "not being aimed at families";
  }
  if (attr == "price range") return article(m.value) + " budget";
  if (attr == "customer rating") return article(m.value) + " customer rating";
  return fmt::format("{} being {}", attr, m.value);
}

std::string price_phrase(const std::string& value) {
  if (value == "cheap") return "low prices";
  if (value == "moderate") return "moderate prices";
  if (value == "expensive") return "high prices";
  return value + " prices";
}

std::string queried_sentence(const Fact& f) {
  if (f.attribute == "address") return fmt::format("It is located at {}.", f.display);
  if (f.attribute == "phone number") return fmt::format("You can reach them at {}.", f.display);
  if (f.attribute == "distance") return fmt::format("It is {} miles away.", f.display);
  if (f.attribute == "family friendly") {
    return f.value == "yes" ? "It is family friendly." : "It is not aimed at families.";
  }
  return fmt::format("Its {} is {}.", f.attribute, f.display);
}

const std::vector<std::string>& variants_for(const Templates& t, CannedKind kind) {
  static const Templates fallback = Templates::defaults();
  const std::string key(canned_name(kind));
  if (auto it = t.canned.find(key); it != t.canned.end() && !it->second.empty()) {
    return it->second;
  }
  return fallback.canned.at(key);
}

}  // namespace

Templates Templates::defaults() {
  Templates t;
  t.questions = {
      {"food type", "Do you have any preference for the food type of the place?"},
      {"price range", "Are you looking for a certain price range?"},
      {"customer rating", "Are you looking for a place with a particular customer rating?"},
  };
  t.canned = {
      {"greeting", {"Hi there, how can I assist you?", "Hi, how can I be of help?"}},
      {"thank",
       {"It's my pleasure to help.", "It's my pleasure to help. No need to thank me.",
        "It's my pleasure to be of service."}},
      {"irrelevant",
       {"Sorry, I am only a concierge helping with my users. Can I assist you with a "
        "restaurant recommendation?"}},
      {"exhausted",
       {"Sorry, I have no other places that meet your requirements. Would you like to relax "
        "one of them?"}},
      {"no_prior_recommendation",
       {"I haven't recommended anything yet. Tell me what you are looking for and I will find "
        "a place."}},
      {"empty_history", {"I haven't recommended any place yet."}},
      {"history_out_of_range", {"I have only recommended {detail} so far."}},
      {"conflicting_preferences",
       {"I can't find a {detail} that suits all of those preferences at once. Could you drop "
        "one of them?"}},
  };
  return t;
}

Templates Templates::parse_json(std::string_view content) {
  Templates t = defaults();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("template file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("template file must hold a JSON object");
  try {
    if (j.contains("questions")) {
      for (const auto& [attr, q] : j.at("questions").items()) {
        t.questions[std::string(attribute_name(require_attribute(attr)))] = q.get<std::string>();
      }
    }
    if (j.contains("canned")) {
      for (const auto& [kind, list] : j.at("canned").items()) {
        if (!t.canned.count(kind)) throw Error("unknown reply kind: " + kind);
        auto variants = list.get<std::vector<std::string>>();
        if (variants.empty()) throw Error("reply kind " + kind + " has no variants");
        t.canned[kind] = std::move(variants);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad template file: ") + e.what());
  }
  return t;
}

Templates Templates::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open template file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string render_question(std::string_view attribute, const Templates& templates) {
  const std::string attr(attribute_name(require_attribute(attribute)));
  if (auto it = templates.questions.find(attr); it != templates.questions.end()) return it->second;
  return fmt::format("Do you have any preference for the {} of the place?", attr);
}

std::string render_question(std::string_view attribute) {
  static const Templates t = Templates::defaults();
  return render_question(attribute, t);
}

std::string render_recommendation(const Recommendation& rec) {
  const Fact* name = rec.fact("name");
  const std::string place = name ? name->display : fmt::format("place #{}", rec.place_id);

  std::vector<std::string> traits;
  if (const Fact* f = rec.fact("food type")) traits.push_back(fmt::format("serves {} food", f->display));
  if (const Fact* f = rec.fact("price range")) traits.push_back("has " + price_phrase(f->value));
  if (const Fact* f = rec.fact("customer rating")) {
    traits.push_back("has " + article(f->value) + " customer rating");
  }

  std::string out;
  if (rec.revisit) {
    out = traits.empty() ? place + " is the place I mentioned."
                         : fmt::format("{} {}.", place, join_readable(traits));
  } else {
    out = traits.empty() ? fmt::format("Perhaps you are interested in {}.", place)
                         : fmt::format("Perhaps you are interested in {}, which {}.", place,
                                       join_readable(traits));
  }

  for (const auto& attr : rec.queried) {
    if (attr == "name") continue;
    if (const Fact* f = rec.fact(attr)) out += " " + queried_sentence(*f);
  }

  std::vector<std::string> reasons;
  for (const auto& m : rec.justification.matched) {
    if (!covers_domain(m.requirement)) reasons.push_back(describe_match(m));
  }
  std::vector<std::string> avoided;
  for (const auto& m : rec.justification.avoided) {
    for (const auto& v : m.requirement.values) {
      if (v.is_concrete()) avoided.push_back(v.text());
    }
  }
  if (!reasons.empty() && !avoided.empty()) {
    out += fmt::format(" It fits your request for {} and steers clear of {}.",
                       join_readable(reasons), join_readable(avoided));
  } else if (!reasons.empty()) {
    out += fmt::format(" It fits your request for {}.", join_readable(reasons));
  } else if (!avoided.empty()) {
    out += fmt::format(" It steers clear of {}.", join_readable(avoided));
  }
  return out;
}

std::string render_no_result(const RelaxationReport& report) {
  std::string out = "Sorry, we couldn't find any results for your specifications.";
  if (report.satisfied.empty()) return out;

  std::vector<std::string> met;
  for (const auto& m : report.satisfied) met.push_back(describe_match(m));
  std::vector<std::string> blocking;
  for (const auto& b : report.blocking) blocking.push_back(criterion_name(b));
  out += fmt::format(" We could find places meeting the conditions of {}, but none that fit "
                     "within your {} criteria.",
                     join_readable(met), join_readable(blocking));

  std::vector<std::string> ideas;
  for (const auto& [attr, values] : report.suggestion) {
    if (values.empty()) continue;
    ideas.push_back(fmt::format("{} of {}", article(attr), join_readable(values)));
  }
  if (!ideas.empty()) {
    out += fmt::format(" Would you consider {}?", join_readable(ideas));
  } else {
    out += fmt::format(" Would you like to try a different {}?", join_readable(blocking));
  }
  return out;
}

std::string render_canned(CannedKind kind, const Templates& templates, std::size_t variant,
                          std::string_view detail) {
  const auto& variants = variants_for(templates, kind);
  return replace_all(variants[variant % variants.size()], "{detail}", detail);
}

std::string render_canned(CannedKind kind, std::size_t variant, std::string_view detail) {
  static const Templates t = Templates::defaults();
  return render_canned(kind, t, variant, detail);
}

std::string render(const AgentAction& action, const Templates& templates, std::size_t variant) {
  struct Visitor {
    const Templates& templates;
    std::size_t variant;
    std::string operator()(const Ask& a) const { return render_question(a.attribute, templates); }
    std::string operator()(const Recommendation& r) const { return render_recommendation(r); }
    std::string operator()(const RelaxationReport& r) const { return render_no_result(r); }
    std::string operator()(const Canned& c) const {
      return render_canned(c.kind, templates, variant, c.detail);
    }
  };
  return std::visit(Visitor{templates, variant}, action);
}

std::string rephrase_prompt(std::string_view text) {
  return fmt::format(
      "Reword this reply from a restaurant concierge so it sounds natural. Keep every name, "
      "address, number and fact unchanged.\nReply: {}\nReworded:",
      text);
}

LlmRephraser::LlmRephraser(std::shared_ptr<CompletionClient> client) : client_(std::move(client)) {}

std::string LlmRephraser::rephrase(const std::string& text) {
  if (!client_) return text;
  try {
    std::string out = text::trim(client_->complete({rephrase_prompt(text), text}));
    if (!out.empty()) return out;
    spdlog::warn("rephraser returned nothing, keeping template text");
  } catch (const BackendUnavailable& e) {
    spdlog::warn("rephraser unavailable, keeping template text: {}", e.what());
  }
  return text;
}

}  // namespace concierge
