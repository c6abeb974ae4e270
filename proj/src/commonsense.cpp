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
#include "concierge/commonsense.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "concierge/errors.hpp"
#include "concierge/kb.hpp"
#include "concierge/text.hpp"

namespace concierge {

StyleTable::StyleTable(std::vector<StyleRule> rules) {
  std::set<std::string> seen;
  for (auto& rule : rules) {
    rule.concept_name = text::canonical(rule.concept_name);
    if (auto attr = parse_attribute(rule.attribute)) {
      rule.attribute = std::string(attribute_name(*attr));
    } else {
      rule.attribute = text::canonical(rule.attribute);
    }
    if (rule.attribute != "food type" && rule.attribute != "establishment") {
      throw Error("style rule '" + rule.concept_name + "' targets unsupported attribute '" +
                  rule.attribute + "'");
    }
    if (rule.values.empty()) throw Error("style rule '" + rule.concept_name + "' has no values");
    for (auto& v : rule.values) v = text::canonical(v);
    if (!seen.insert(rule.concept_name).second) {
      throw Error("duplicate style concept '" + rule.concept_name + "'");
    }
  }
  rules_ = std::move(rules);
}

StyleTable StyleTable::defaults() {
  return StyleTable({
      {"curry", "food type", {"indian", "thai"}},
      {"spicy", "food type", {"thai", "indian"}},
      {"pizza", "food type", {"italian", "american"}},
      {"noodle", "food type", {"chinese", "thai", "japanese"}},
      {"alcohol", "establishment", {"bar", "pub"}},
      {"drink", "establishment", {"bar", "pub"}},
      {"beer", "establishment", {"bar", "pub"}},
      {"coffee", "establishment", {"coffee shop"}},
  });
}

StyleTable StyleTable::parse_json(std::string_view content) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("style table: ") + e.what());
  }
  if (!doc.is_array()) throw Error("style table: expected a JSON array");
  std::vector<StyleRule> rules;
  for (const auto& row : doc) {
    try {
      rules.push_back({row.at("concept").get<std::string>(), row.at("attribute").get<std::string>(),
                       row.at("values").get<std::vector<std::string>>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("style table: ") + e.what());
    }
  }
  return StyleTable(std::move(rules));
}

StyleTable StyleTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open style table " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

const StyleRule* StyleTable::lookup(std::string_view concept_name) const {
  const std::string key = text::canonical(concept_name);
  for (const auto& r : rules_) {
    if (r.concept_name == key) return &r;
  }
  return nullptr;
}

std::optional<StyleMatch> style_lookup(const StyleTable& table, std::string_view concept_name) {
  const StyleRule* rule = table.lookup(concept_name);
  if (!rule) return std::nullopt;
  return StyleMatch{rule->attribute, rule->values};
}

std::vector<Requirement> expand_preferences(const std::vector<Requirement>& input,
                                            const StyleTable& table) {
  std::vector<Requirement> out;
  std::map<std::string, std::set<std::string>> liked;
  std::map<std::string, std::set<std::string>> liked_by;  // concepts, for errors
  std::map<std::string, std::set<std::string>> disliked;

  for (const auto& req : input) {
    const bool prefer = req.attribute == kPreferAttribute;
    const bool not_prefer = req.attribute == kNotPreferAttribute;
    if (!prefer && !not_prefer) {
      out.push_back(req);
      continue;
    }
    // A not_require(prefer, X) is as much a dislike as require(not_prefer, X).
    const bool positive = prefer == (req.polarity == Polarity::require);
    for (const auto& v : req.values) {
      if (!v.is_concrete()) continue;
      const StyleRule* rule = table.lookup(v.text());
      if (!rule) continue;
      std::set<std::string> values(rule->values.begin(), rule->values.end());
      if (positive) {
        auto [it, fresh] = liked.try_emplace(rule->attribute, values);
        if (!fresh) {
          std::set<std::string> both;
          std::set_intersection(it->second.begin(), it->second.end(), values.begin(),
                                values.end(), std::inserter(both, both.begin()));
          it->second = std::move(both);
        }
        liked_by[rule->attribute].insert(rule->concept_name);
      } else {
        disliked[rule->attribute].insert(values.begin(), values.end());
      }
    }
  }

  for (const auto& [attr, values] : liked) {
    if (values.empty()) {
      const auto& c = liked_by[attr];
      throw EmptyIntersection(attr, text::join({c.begin(), c.end()}, ", "));
    }
    std::vector<Value> vs;
    for (const auto& v : values) vs.push_back(Value::concrete(v));
    out.push_back(require(attr, std::move(vs)));
  }
  for (const auto& [attr, values] : disliked) {
    std::vector<Value> vs;
    for (const auto& v : values) vs.push_back(Value::concrete(v));
    out.push_back(not_require(attr, std::move(vs)));
  }
  return out;
}

}  // namespace concierge
