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
#include <map>
#include <random>
#include <set>

#include "concierge/commonsense.hpp"
#include "concierge/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace concierge;

namespace {

// Independent expansion: sets per attribute, built from the raw rule list.
std::vector<Requirement> oracle_expand(const std::vector<Requirement>& input, const StyleTable& table) {
  std::vector<Requirement> out;
  std::map<std::string, std::set<std::string>> liked;
  std::map<std::string, bool> liked_seen;
  std::map<std::string, std::set<std::string>> disliked;
  auto rule_for = [&](const std::string& c) -> const StyleRule* {
    for (const auto& r : table.rules()) {
      if (r.concept_name == c) return &r;
    }
    return nullptr;
  };
  for (const auto& r : input) {
    const bool is_prefer = r.attribute == kPreferAttribute && r.polarity == Polarity::require;
    const bool is_dislike = (r.attribute == kNotPreferAttribute && r.polarity == Polarity::require) ||
                            (r.attribute == kPreferAttribute && r.polarity == Polarity::not_require);
    if (!is_prefer && !is_dislike) {
      out.push_back(r);
      continue;
    }
    for (const auto& v : r.values) {
      const StyleRule* rule = rule_for(v.text());
      if (!rule) continue;
      std::set<std::string> vals(rule->values.begin(), rule->values.end());
      if (is_prefer) {
        if (!liked_seen[rule->attribute]) {
          liked[rule->attribute] = vals;
          liked_seen[rule->attribute] = true;
        } else {
          std::set<std::string> keep;
          for (const auto& x : liked[rule->attribute]) {
            if (vals.count(x)) keep.insert(x);
          }
          liked[rule->attribute] = keep;
        }
      } else {
        disliked[rule->attribute].insert(vals.begin(), vals.end());
      }
    }
  }
  for (const auto& [attr, vals] : liked) {
    std::vector<Value> values;
    for (const auto& v : vals) values.push_back(Value::concrete(v));
    out.push_back({Polarity::require, attr, values});
  }
  for (const auto& [attr, vals] : disliked) {
    std::vector<Value> values;
    for (const auto& v : vals) values.push_back(Value::concrete(v));
    out.push_back({Polarity::not_require, attr, values});
  }
  return out;
}

}  // namespace

TEST_CASE("default table") {
  const auto table = StyleTable::defaults();
  auto curry = style_lookup(table, "curry");
  REQUIRE(curry);
  CHECK(curry->attribute == "food type");
  CHECK(std::set<std::string>(curry->values.begin(), curry->values.end()) ==
        std::set<std::string>{"indian", "thai"});
  CHECK_FALSE(style_lookup(table, "sushi-burrito"));
  CHECK(StyleTable::load(testsupport::data_path("style.json")).rules().size() == table.rules().size());
}

TEST_CASE("curry dislike becomes an exclusion") {
  auto out = expand_preferences({require(kNotPreferAttribute, {"curry"})}, StyleTable::defaults());
  REQUIRE(out.size() == 1);
  CHECK(out[0] == not_require("food type", {"indian", "thai"}));
}

TEST_CASE("liked concepts intersect") {
  auto out = expand_preferences({require("name", {"query"}), require(kPreferAttribute, {"spicy", "noodle"})},
                                StyleTable::defaults());
  REQUIRE(out.size() == 2);
  CHECK(out[0] == require("name", {"query"}));
  CHECK(out[1] == require("food type", {"thai"}));

  auto pizza = expand_preferences({require(kPreferAttribute, {"pizza"})}, StyleTable::defaults());
  CHECK(pizza == std::vector<Requirement>{require("food type", {"american", "italian"})});
}

TEST_CASE("empty intersection is reported") {
  try {
    expand_preferences({require(kPreferAttribute, {"curry", "pizza"})}, StyleTable::defaults());
    FAIL("expected EmptyIntersection");
  } catch (const EmptyIntersection& e) {
    CHECK(e.attribute() == "food type");
  }
}

TEST_CASE("unknown concepts are dropped") {
  CHECK(expand_preferences({require(kPreferAttribute, {"unicorn"})}, StyleTable::defaults()).empty());
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(StyleTable(std::vector<StyleRule>{{"x", "price range", {"cheap"}}}), Error);
  CHECK_THROWS_AS(StyleTable(std::vector<StyleRule>{{"x", "food type", {}}}), Error);
  CHECK_THROWS_AS(StyleTable(std::vector<StyleRule>{{"x", "food type", {"a"}}, {"x", "food type", {"b"}}}), Error);
  CHECK_THROWS_AS(StyleTable::parse_json("{\"concept\": 1}"), Error);
  auto t = StyleTable::parse_json(R"([{"concept": "Tacos", "attribute": "food", "values": ["Mexican"]}])");
  REQUIRE(t.lookup("tacos") != nullptr);
  CHECK(t.lookup("tacos")->attribute == "food type");
  CHECK(t.lookup("tacos")->values == std::vector<std::string>{"mexican"});
}

TEST_CASE("expansion matches the set oracle and ignores concept order") {
  const auto table = StyleTable::defaults();
  std::vector<std::string> concepts;
  for (const auto& r : table.rules()) concepts.push_back(r.concept_name);
  concepts.push_back("unmapped");
  std::mt19937 rng(11);
  int checked = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    std::vector<Requirement> input;
    if (rng() % 2) input.push_back(require("name", {"query"}));
    for (const char* attr : {kPreferAttribute, kNotPreferAttribute}) {
      if (rng() % 3 == 0) continue;
      std::vector<Value> vals;
      const std::size_t k = 1 + rng() % 3;
      for (std::size_t i = 0; i < k; ++i) {
        Value v = Value::concrete(testsupport::pick(rng, concepts));
        if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
      }
      input.push_back({Polarity::require, attr, vals});
    }
    std::vector<Requirement> expected;
    bool empty_intersection = false;
    expected = oracle_expand(input, table);
    for (const auto& r : expected) {
      if (r.polarity == Polarity::require && r.values.empty()) empty_intersection = true;
    }
    if (empty_intersection) {
      CHECK_THROWS_AS(expand_preferences(input, table), EmptyIntersection);
      continue;
    }
    const auto got = expand_preferences(input, table);
    CHECK(got == expected);

    auto shuffled = input;
    for (auto& r : shuffled) std::shuffle(r.values.begin(), r.values.end(), rng);
    CHECK(expand_preferences(shuffled, table) == got);
    ++checked;
  }
  CHECK(checked > 1000);
}
