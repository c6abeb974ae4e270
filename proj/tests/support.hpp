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
// Shared fixtures, generators and brute-force oracles for the test binaries.
// The oracles read Place fields directly and never call into the reasoner.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "concierge/dialog_state.hpp"
#include "concierge/kb.hpp"
#include "concierge/requirement.hpp"

namespace testsupport {

using namespace concierge;

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(CONCIERGE_DATA_DIR) / rel;
}

inline std::filesystem::path fixture_path(const std::string& rel) {
  return std::filesystem::path(CONCIERGE_FIXTURE_DIR) / rel;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const Knowledgebase& fixture_kb() {
  static const Knowledgebase kb = load_kb(data_path("kb/fixture.json"));
  return kb;
}

// ---------------------------------------------------------------------------
// Generators

inline const std::vector<std::string> kFoods = {"italian", "thai", "indian", "american", "chinese"};
inline const std::vector<std::string> kEstablishments = {"restaurant", "bar", "pub", "coffee shop"};
inline const std::vector<std::string> kPrices = {"cheap", "moderate", "expensive"};
inline const std::vector<std::string> kRatings = {"low", "average", "high"};
inline const std::vector<std::string> kAttrNames = {
    "name",    "food type",    "establishment",   "price range", "customer rating",
    "address", "phone number", "family friendly", "distance"};

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline Knowledgebase random_kb(std::mt19937& rng, std::size_t n) {
  std::vector<Place> places;
  for (std::size_t i = 0; i < n; ++i) {
    Place p;
    p.id = static_cast<int>(i) + 1;
    p.name = fmt::format("Place {}", i % 7);  // repeated names on purpose
    p.food_type = pick(rng, kFoods);
    p.establishment = pick(rng, kEstablishments);
    p.price_range = static_cast<PriceRange>(rng() % 3);
    p.customer_rating = static_cast<Rating>(rng() % 3);
    p.address = fmt::format("{} Main St", 100 + i % 5);
    p.phone = fmt::format("555-01{:02}", i % 4);
    p.family_friendly = rng() % 2 == 0;
    p.distance = static_cast<double>(rng() % 4) / 2.0 + 1.0;
    places.push_back(std::move(p));
  }
  return Knowledgebase(std::move(places));
}

// Candidate values per attribute, including some that no place carries.
inline std::vector<std::string> vocabulary(const std::string& attr) {
  if (attr == "name") return {"place 0", "place 3", "place 6", "nowhere"};
  if (attr == "food type") return {"italian", "thai", "indian", "american", "chinese", "greek"};
  if (attr == "establishment") return {"restaurant", "bar", "pub", "coffee shop", "shop"};
  if (attr == "price range") return kPrices;
  if (attr == "customer rating") return kRatings;
  if (attr == "address") return {"100 main st", "103 main st", "1 elm st"};
  if (attr == "phone number") return {"555-0100", "555-0103", "555-9999"};
  if (attr == "family friendly") return {"yes", "no"};
  return {"1", "1.5", "2", "2.5", "9"};
}

inline std::vector<Value> random_values(std::mt19937& rng, const std::string& attr, bool sentinels) {
  std::vector<Value> out;
  if (sentinels && rng() % 8 == 0) return {Value::query()};
  if (sentinels && rng() % 12 == 0) return {Value::any()};
  auto vocab = vocabulary(attr);
  std::shuffle(vocab.begin(), vocab.end(), rng);
  const std::size_t k = 1 + rng() % std::min<std::size_t>(3, vocab.size());
  for (std::size_t i = 0; i < k; ++i) out.push_back(Value::concrete(vocab[i]));
  return out;
}

// Arbitrary requirement lists, attributes may repeat.
inline std::vector<Requirement> random_requirements(std::mt19937& rng, std::size_t max_len) {
  std::vector<Requirement> reqs;
  const std::size_t n = rng() % (max_len + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& attr = pick(rng, kAttrNames);
    if (rng() % 4 == 0) {
      reqs.push_back({Polarity::not_require, attr, random_values(rng, attr, false)});
    } else {
      reqs.push_back({Polarity::require, attr, random_values(rng, attr, true)});
    }
  }
  return reqs;
}

// ---------------------------------------------------------------------------
// Oracles

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string oracle_value(const Place& p, const std::string& attr) {
  static const char* prices[] = {"cheap", "moderate", "expensive"};
  static const char* ratings[] = {"low", "average", "high"};
  if (attr == "name") return lower(p.name);
  if (attr == "food type") return lower(p.food_type);
  if (attr == "establishment") return lower(p.establishment);
  if (attr == "price range") return prices[static_cast<int>(p.price_range)];
  if (attr == "customer rating") return ratings[static_cast<int>(p.customer_rating)];
  if (attr == "address") return lower(p.address);
  if (attr == "phone number") return lower(p.phone);
  if (attr == "family friendly") return p.family_friendly ? "yes" : "no";
  return fmt::format("{}", p.distance);
}

inline bool oracle_admits(const Place& p, const Requirement& r) {
  std::set<std::string> concrete;
  bool sentinel = false;
  for (const auto& v : r.values) {
    if (v.is_concrete()) concrete.insert(v.text());
    if (!v.is_concrete()) sentinel = true;
  }
  const std::string have = oracle_value(p, r.attribute);
  if (r.polarity == Polarity::not_require) return concrete.count(have) == 0;
  if (sentinel || concrete.empty()) return true;
  return concrete.count(have) > 0;
}

inline std::vector<int> oracle_filter(const std::vector<Requirement>& reqs, const Knowledgebase& kb) {
  std::vector<int> out;
  for (const auto& p : kb.places()) {
    bool ok = true;
    for (const auto& r : reqs) ok = ok && oracle_admits(p, r);
    if (ok) out.push_back(p.id);
  }
  return out;
}

inline bool constrains(const Requirement& r) {
  if (r.polarity == Polarity::not_require) return true;
  return !r.values.empty() &&
         std::all_of(r.values.begin(), r.values.end(), [](const Value& v) { return v.is_concrete(); });
}

inline std::vector<std::string> constrained_attributes(const std::vector<Requirement>& reqs) {
  std::vector<std::string> out;
  for (const auto& r : reqs) {
    if (constrains(r) && std::find(out.begin(), out.end(), r.attribute) == out.end()) {
      out.push_back(r.attribute);
    }
  }
  return out;
}

inline std::vector<Requirement> drop_attributes(const std::vector<Requirement>& reqs,
                                                const std::set<std::string>& dropped) {
  std::vector<Requirement> out;
  for (const auto& r : reqs) {
    if (!(constrains(r) && dropped.count(r.attribute))) out.push_back(r);
  }
  return out;
}

// Smallest number of attributes whose constraints must go before some
// place qualifies, by trying every subset.
inline std::size_t oracle_min_relaxation(const std::vector<Requirement>& reqs,
                                         const Knowledgebase& kb) {
  const auto attrs = constrained_attributes(reqs);
  std::size_t best = attrs.size() + 1;
  for (std::uint32_t mask = 0; mask < (1u << attrs.size()); ++mask) {
    std::set<std::string> dropped;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      if (mask & (1u << i)) dropped.insert(attrs[i]);
    }
    if (dropped.size() >= best) continue;
    if (!oracle_filter(drop_attributes(reqs, dropped), kb).empty()) best = dropped.size();
  }
  return best;
}

inline bool oracle_same_predicate(const Predicate& a, const Predicate& b) {
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  std::vector<std::string> x, y;
  for (const auto& v : a.args) x.push_back(v.text());
  for (const auto& v : b.args) y.push_back(v.text());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

// Largest one-to-one matching between gold and predicted predicates, found
// by trying every assignment of each prediction.
inline std::size_t oracle_matching(const std::vector<Predicate>& gold, const std::vector<Predicate>& pred,
                                   std::size_t i = 0, std::uint32_t used = 0) {
  if (i == pred.size()) return 0;
  std::size_t best = oracle_matching(gold, pred, i + 1, used);
  for (std::size_t g = 0; g < gold.size(); ++g) {
    if (!(used & (1u << g)) && oracle_same_predicate(gold[g], pred[i])) {
      best = std::max(best, 1 + oracle_matching(gold, pred, i + 1, used | (1u << g)));
    }
  }
  return best;
}

inline double oracle_score(const std::vector<Predicate>& gold, const std::vector<Predicate>& pred) {
  const auto denom = std::max(gold.size(), pred.size());
  if (denom == 0) return 1.0;
  return static_cast<double>(oracle_matching(gold, pred)) / static_cast<double>(denom);
}

}  // namespace testsupport
