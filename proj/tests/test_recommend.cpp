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
#include <random>

#include "concierge/errors.hpp"
#include "concierge/recommend.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace concierge;
using testsupport::fixture_kb;

namespace {

DialogState state_of(std::vector<Requirement> reqs) {
  DialogState s;
  s.requirements = std::move(reqs);
  return s;
}

int place_of(const RecommendOutcome& o) {
  REQUIRE(std::holds_alternative<Recommendation>(o));
  return std::get<Recommendation>(o).place_id;
}

Place place(int id, std::string food, PriceRange price, Rating rating) {
  Place p;
  p.id = id;
  p.name = "P" + std::to_string(id);
  p.food_type = std::move(food);
  p.establishment = "restaurant";
  p.price_range = price;
  p.customer_rating = rating;
  p.address = "a";
  p.phone = "1";
  p.distance = 1;
  return p;
}

}  // namespace

TEST_CASE("satisfied_places on the fixture") {
  const auto& kb = fixture_kb();
  CHECK(satisfied_places(state_of({require("price range", {"cheap"})}), kb) == std::vector<int>{1, 2, 3, 4});
  CHECK(satisfied_places(state_of({require("food type", {"italian"}), require("name", {"query"})}), kb) ==
        std::vector<int>{5, 6});
  CHECK(satisfied_places(state_of({not_require("establishment", {"restaurant", "coffee shop"})}), kb) ==
        std::vector<int>{3, 4});
  CHECK(satisfied_places(state_of({require("food type", {Value::any()})}), kb).size() == 6);
  CHECK_THROWS_AS(satisfied_places(state_of({require("parking", {"yes"})}), kb), UnknownAttribute);
}

TEST_CASE("satisfied_places agrees with the brute-force filter") {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 500; ++iter) {
    const auto kb = testsupport::random_kb(rng, rng() % 40);
    const auto reqs = testsupport::random_requirements(rng, 6);
    CHECK(satisfied_places(reqs, kb) == testsupport::oracle_filter(reqs, kb));
  }
}

TEST_CASE("fill_query and justify") {
  const Place& southern = *fixture_kb().find(1);
  auto facts = fill_query(southern, {"address", "name"});
  REQUIRE(facts.size() == 5);
  CHECK(facts[0].attribute == "name");
  CHECK(facts[4].attribute == "address");
  CHECK(facts[4].display == "621 W Plano Pkwy #229, Plano, TX 75075");
  CHECK_THROWS_AS(fill_query(southern, {"parking"}), UnknownAttribute);

  auto just = justify(southern, state_of({require("name", {"query"}), require("price range", {"cheap", "moderate"}),
                                          not_require("food type", {"indian", "thai"})}));
  REQUIRE(just.matched.size() == 1);
  CHECK(just.matched[0].value == "cheap");
  REQUIRE(just.avoided.size() == 1);
  CHECK(just.avoided[0].value == "american");
  CHECK(justify(southern, DialogState{}).matched.empty());
}

TEST_CASE("recommend, then walk the output list") {
  const auto& kb = fixture_kb();
  DialogState s = state_of({require("price range", {"cheap"}), require("customer rating", {"high"})});
  CHECK_THROWS_AS(another_option(s, kb), NoPriorRecommendation);
  CHECK(place_of(recommend(s, kb)) == 2);
  CHECK(s.find(Polarity::require, "name") != nullptr);
  CHECK(s.history == std::vector<int>{2});
  CHECK(s.output_list == std::vector<int>{3, 4});
  REQUIRE_NOTHROW(check_invariants(s));

  auto next = another_option(s, kb);
  REQUIRE(next);
  CHECK(next->place_id == 3);
  CHECK(another_option(s, kb)->place_id == 4);
  CHECK_FALSE(another_option(s, kb).has_value());
  CHECK(s.history == std::vector<int>{2, 3, 4});
}

TEST_CASE("unchanged constraints describe the last place again") {
  const auto& kb = fixture_kb();
  DialogState s = state_of({require("food type", {"american"})});
  CHECK(place_of(recommend(s, kb)) == 1);
  s = update_state({require("address", {"query"})}, s);
  auto again = recommend(s, kb);
  CHECK(place_of(again) == 1);
  CHECK(std::get<Recommendation>(again).revisit);
  CHECK(std::get<Recommendation>(again).fact("address") != nullptr);
  CHECK(s.history == std::vector<int>{1});
}

TEST_CASE("new constraints skip places already offered") {
  const auto& kb = fixture_kb();
  DialogState s = state_of({require("price range", {"cheap"})});
  CHECK(place_of(recommend(s, kb)) == 1);
  s = update_state({require("customer rating", {"high", "average"})}, s);
  CHECK(place_of(recommend(s, kb)) == 2);
  s = update_state({require("food type", {"american"})}, s);
  CHECK(std::holds_alternative<Exhausted>(recommend(s, kb)));
}

TEST_CASE("view_history") {
  const auto& kb = fixture_kb();
  DialogState s = state_of({require("price range", {"cheap"})});
  CHECK_THROWS_AS(view_history(s, HistoryRef::first(), kb), EmptyHistory);
  recommend(s, kb);
  another_option(s, kb);
  CHECK(view_history(s, HistoryRef::first(), kb).place_id == 1);
  CHECK(view_history(s, HistoryRef::last(), kb).place_id == 2);
  CHECK(view_history(s, HistoryRef::nth(2), kb).place_id == 2);
  CHECK(view_history(s, HistoryRef::first(), kb).revisit);
  CHECK_THROWS_AS(view_history(s, HistoryRef::nth(3), kb), IndexOutOfRange);
  CHECK_THROWS_AS(view_history(s, HistoryRef::nth(0), kb), IndexOutOfRange);
  const auto before = s;
  view_history(s, HistoryRef::first(), kb);
  CHECK(s == before);
}

TEST_CASE("relaxation order") {
  DialogState s = state_of({require("name", {"query"}), require("establishment", {"restaurant"}),
                            require("family friendly", {"yes"}), require("food type", {"italian"}),
                            require("price range", {"cheap"}), require("customer rating", {"high"})});
  CHECK(relaxation_order(s) == std::vector<std::string>{"customer rating", "price range", "food type",
                                                        "family friendly", "establishment"});
}

TEST_CASE("single blocking attribute on the fixture") {
  DialogState s = state_of({require("establishment", {"restaurant"}), require("family friendly", {"yes"}),
                            require("food type", {"american", "italian"}), require("price range", {"cheap"}),
                            require("customer rating", {"high"})});
  auto out = recommend(s, fixture_kb());
  REQUIRE(std::holds_alternative<RelaxationReport>(out));
  const auto& report = std::get<RelaxationReport>(out);
  CHECK(report.blocking == std::vector<std::string>{"price range"});
  CHECK(report.suggestion.at("price range") == std::vector<std::string>{"moderate"});
  std::map<std::string, std::string> met;
  for (const auto& m : report.satisfied) met[m.requirement.attribute] = m.value;
  CHECK(met.at("food type") == "italian");
  CHECK(met.at("establishment") == "restaurant");
  CHECK(met.at("family friendly") == "yes");
  CHECK(s.history.empty());
}

TEST_CASE("a pair of constraints can block together") {
  // No single relaxation helps; every place misses two of the three.
  const Knowledgebase kb({place(1, "thai", PriceRange::expensive, Rating::low),
                          place(2, "indian", PriceRange::cheap, Rating::low),
                          place(3, "indian", PriceRange::expensive, Rating::high)});
  DialogState s = state_of({require("food type", {"thai"}), require("price range", {"cheap"}),
                            require("customer rating", {"high"})});
  const auto report = explain_failure(s, kb);
  CHECK(report.blocking.size() == 2);
  CHECK(testsupport::oracle_min_relaxation(s.requirements, kb) == 2);
  // Ties go to the key attributes stated last: rating first, then price.
  CHECK(report.blocking == std::vector<std::string>{"price range", "customer rating"});
}

TEST_CASE("empty knowledgebase blocks everything") {
  DialogState s = state_of({require("food type", {"thai"}), not_require("price range", {"expensive"})});
  auto report = explain_failure(s, Knowledgebase{});
  CHECK(report.blocking == std::vector<std::string>{"food type", "price range"});
  CHECK(report.satisfied.empty());
}

TEST_CASE("reported blocking sets are minimal") {
  std::mt19937 rng(23);
  int checked = 0;
  while (checked < 150) {
    const auto kb = testsupport::random_kb(rng, 1 + rng() % 25);
    DialogState s = update_state(testsupport::random_requirements(rng, 6), DialogState{});
    if (!satisfied_places(s, kb).empty()) continue;
    const auto report = explain_failure(s, kb);
    std::set<std::string> dropped(report.blocking.begin(), report.blocking.end());
    CHECK_FALSE(testsupport::oracle_filter(testsupport::drop_attributes(s.requirements, dropped), kb).empty());
    CHECK(report.blocking.size() == testsupport::oracle_min_relaxation(s.requirements, kb));
    ++checked;
  }
}
