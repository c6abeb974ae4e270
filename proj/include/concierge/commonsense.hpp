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
// Commonsense style table: what a liked or disliked concept ("curry",
// "pizza", "alcohol") means in terms of stored attribute values.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "concierge/requirement.hpp"

namespace concierge {

struct StyleRule {
  std::string concept_name;
  std::string attribute;  // "food type" or "establishment"
  std::vector<std::string> values;
};

class StyleTable {
 public:
  StyleTable() = default;
  // Throws Error on a duplicate concept, an empty value set or a target
  // attribute other than food type / establishment.
  explicit StyleTable(std::vector<StyleRule> rules);

  // The shipped table.
  static StyleTable defaults();
  // JSON array of {"concept", "attribute", "values"}.
  static StyleTable load(const std::filesystem::path& path);
  static StyleTable parse_json(std::string_view content);

  const StyleRule* lookup(std::string_view concept_name) const;
  const std::vector<StyleRule>& rules() const { return rules_; }

 private:
  std::vector<StyleRule> rules_;
};

struct StyleMatch {
  std::string attribute;
  std::vector<std::string> values;
};

std::optional<StyleMatch> style_lookup(const StyleTable& table,
                                       std::string_view concept_name);

// Replaces prefer/not_prefer entries with attribute constraints. Prefer
// concepts are conjunctive, so their value sets intersect per target
// attribute; not_prefer concepts union into one exclusion per attribute.
// Unmapped concepts are dropped. Other requirements pass through in order,
// followed by the derived requires and then the derived not_requires.
// Derived value lists are sorted, so the result does not depend on concept
// order. Throws EmptyIntersection.
std::vector<Requirement> expand_preferences(const std::vector<Requirement>& input,
                                            const StyleTable& table);

}  // namespace concierge
