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
#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "concierge/terms.hpp"

namespace concierge {

enum class Attribute {
  name,
  food_type,
  establishment,
  price_range,
  customer_rating,
  address,
  phone_number,
  family_friendly,
  distance,
};

inline constexpr std::size_t kAttributeCount = 9;

inline constexpr std::array<Attribute, kAttributeCount> kAllAttributes = {
    Attribute::name,          Attribute::food_type,       Attribute::establishment,
    Attribute::price_range,   Attribute::customer_rating, Attribute::address,
    Attribute::phone_number,  Attribute::family_friendly, Attribute::distance,
};

// Canonical spelling used in requirements, files and listings, e.g.
// "price range".
std::string_view attribute_name(Attribute attr);

// Accepts the canonical names plus the common variants seen in parser output
// and data files ("restaurant-name", "family-friendly", "phone", "food",
// "eatType", ...). Case-insensitive.
std::optional<Attribute> parse_attribute(std::string_view text);

// Throws UnknownAttribute.
Attribute require_attribute(std::string_view text);

// The closed value sets. Empty for open-vocabulary attributes.
std::span<const std::string_view> attribute_domain(Attribute attr);

enum class PriceRange { cheap, moderate, expensive };
enum class Rating { low, average, high };

struct Place {
  int id = 0;
  std::string name;
  std::string food_type;
  std::string establishment;
  PriceRange price_range = PriceRange::moderate;
  Rating customer_rating = Rating::average;
  std::string address;
  std::string phone;
  bool family_friendly = false;
  double distance = 0.0;

  // Stored text with its original casing, for display.
  std::string display(Attribute attr) const;

  friend bool operator==(const Place&, const Place&) = default;
};

// Normalized (lowercase) stored value. Never a sentinel.
Value attribute_of(const Place& place, Attribute attr);
// Throws UnknownAttribute for names outside the nine.
Value attribute_of(const Place& place, std::string_view attr);

class Knowledgebase {
 public:
  Knowledgebase() = default;
  // Validates ids (assigning position-based ids to records with id < 0)
  // and caches normalized values. Throws KbFormatError on duplicate ids or
  // negative distance.
  explicit Knowledgebase(std::vector<Place> places);

  const std::vector<Place>& places() const { return places_; }
  std::size_t size() const { return places_.size(); }
  bool empty() const { return places_.empty(); }

  const Place& at(std::size_t index) const { return places_.at(index); }
  // nullptr when no place carries the id.
  const Place* find(int id) const;
  std::optional<std::size_t> index_of(int id) const;

  // Cached attribute_of(at(index), attr).text().
  const std::string& value(std::size_t index, Attribute attr) const {
    return normalized_[index][static_cast<std::size_t>(attr)];
  }

  friend bool operator==(const Knowledgebase& a, const Knowledgebase& b) {
    return a.places_ == b.places_;
  }

 private:
  std::vector<Place> places_;
  std::vector<std::array<std::string, kAttributeCount>> normalized_;
  std::unordered_map<int, std::size_t> by_id_;
};

// JSON array of objects keyed by attribute name, or CSV with a header row of
// the same names (chosen by extension: .csv is CSV, anything else JSON).
Knowledgebase load_kb(const std::filesystem::path& source);
Knowledgebase parse_kb_json(std::string_view content);
Knowledgebase parse_kb_csv(std::string_view content);

}  // namespace concierge
