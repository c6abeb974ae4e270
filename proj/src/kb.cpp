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
#include "concierge/kb.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

#include "concierge/errors.hpp"
#include "concierge/text.hpp"

namespace concierge {

namespace {

constexpr std::array<std::string_view, kAttributeCount> kNames = {
    "name",         "food type",       "establishment",
    "price range",  "customer rating", "address",
    "phone number", "family friendly", "distance",
};

constexpr std::array<std::string_view, 3> kPriceDomain = {"cheap", "moderate", "expensive"};
constexpr std::array<std::string_view, 3> kRatingDomain = {"low", "average", "high"};
constexpr std::array<std::string_view, 2> kFamilyDomain = {"yes", "no"};

std::optional<PriceRange> parse_price(std::string_view s) {
  const std::string v = text::canonical(s);
  if (v == "cheap") return PriceRange::cheap;
  if (v == "moderate") return PriceRange::moderate;
  if (v == "expensive") return PriceRange::expensive;
  return std::nullopt;
}

std::optional<Rating> parse_rating(std::string_view s) {
  const std::string v = text::canonical(s);
  if (v == "low") return Rating::low;
  if (v == "average") return Rating::average;
  if (v == "high") return Rating::high;
  return std::nullopt;
}

std::optional<bool> parse_yes_no(std::string_view s) {
  const std::string v = text::canonical(s);
  if (v == "yes" || v == "true") return true;
  if (v == "no" || v == "false") return false;
  return std::nullopt;
}

std::optional<double> parse_number(std::string_view s) {
  const std::string v = text::trim(s);
  double d = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
  if (ec != std::errc() || ptr != v.data() + v.size()) return std::nullopt;
  return d;
}

std::string format_number(double d) { return fmt::format("{}", d); }

}  // namespace

std::string_view attribute_name(Attribute attr) { return kNames[static_cast<std::size_t>(attr)]; }

std::optional<Attribute> parse_attribute(std::string_view raw) {
  std::string s = text::canonical(raw);
  std::replace(s.begin(), s.end(), '_', ' ');
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (s == kNames[i]) return kAllAttributes[i];
  }
  static const std::vector<std::pair<std::string_view, Attribute>> aliases = {
      {"restaurant-name", Attribute::name},
      {"restaurant name", Attribute::name},
      {"food", Attribute::food_type},
      {"food-type", Attribute::food_type},
      {"cuisine", Attribute::food_type},
      {"establishment type", Attribute::establishment},
      {"eattype", Attribute::establishment},
      {"eat type", Attribute::establishment},
      {"price", Attribute::price_range},
      {"pricerange", Attribute::price_range},
      {"price-range", Attribute::price_range},
      {"rating", Attribute::customer_rating},
      {"customerrating", Attribute::customer_rating},
      {"customer-rating", Attribute::customer_rating},
      {"phone", Attribute::phone_number},
      {"phone-number", Attribute::phone_number},
      {"family-friendly", Attribute::family_friendly},
      {"familyfriendly", Attribute::family_friendly},
      {"family friendliness", Attribute::family_friendly},
  };
  for (const auto& [alias, attr] : aliases) {
    if (s == alias) return attr;
  }
  return std::nullopt;
}

Attribute require_attribute(std::string_view text) {
  if (auto a = parse_attribute(text)) return *a;
  throw UnknownAttribute(std::string(text));
}

std::span<const std::string_view> attribute_domain(Attribute attr) {
  switch (attr) {
    case Attribute::price_range:
      return kPriceDomain;
    case Attribute::customer_rating:
      return kRatingDomain;
    case Attribute::family_friendly:
      return kFamilyDomain;
    default:
      return {};
  }
}

std::string Place::display(Attribute attr) const {
  switch (attr) {
    case Attribute::name:
      return name;
    case Attribute::food_type:
      return food_type;
    case Attribute::establishment:
      return establishment;
    case Attribute::price_range:
      return std::string(kPriceDomain[static_cast<std::size_t>(price_range)]);
    case Attribute::customer_rating:
      return std::string(kRatingDomain[static_cast<std::size_t>(customer_rating)]);
    case Attribute::address:
      return address;
    case Attribute::phone_number:
      return phone;
    case Attribute::family_friendly:
      return family_friendly ? "yes" : "no";
    case Attribute::distance:
      return format_number(distance);
  }
  return {};
}

Value attribute_of(const Place& place, Attribute attr) {
  return Value::concrete(text::canonical(place.display(attr)));
}

Value attribute_of(const Place& place, std::string_view attr) {
  return attribute_of(place, require_attribute(attr));
}

Knowledgebase::Knowledgebase(std::vector<Place> places) : places_(std::move(places)) {
  for (std::size_t i = 0; i < places_.size(); ++i) {
    Place& p = places_[i];
    if (p.id < 0) p.id = static_cast<int>(i);
    if (!by_id_.emplace(p.id, i).second) {
      throw KbFormatError(i + 1, fmt::format("duplicate id {}", p.id));
    }
    if (p.distance < 0) throw KbFormatError(i + 1, "negative distance");
    std::array<std::string, kAttributeCount> values;
    for (Attribute a : kAllAttributes) {
      values[static_cast<std::size_t>(a)] = attribute_of(p, a).text();
    }
    normalized_.push_back(std::move(values));
  }
}

const Place* Knowledgebase::find(int id) const {
  auto idx = index_of(id);
  return idx ? &places_[*idx] : nullptr;
}

std::optional<std::size_t> Knowledgebase::index_of(int id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Builds one place from attribute -> raw text. Record numbers are 1-based.
Place make_place(const std::map<Attribute, std::string>& fields, std::optional<int> id,
                 std::size_t record) {
  for (Attribute a : kAllAttributes) {
    if (!fields.count(a)) {
      throw KbFormatError(record, fmt::format("missing attribute '{}'", attribute_name(a)));
    }
  }
  auto text_of = [&](Attribute a) { return text::trim(fields.at(a)); };
  Place p;
  p.id = id.value_or(-1);
  p.name = text_of(Attribute::name);
  p.food_type = text_of(Attribute::food_type);
  p.establishment = text_of(Attribute::establishment);
  p.address = text_of(Attribute::address);
  p.phone = text_of(Attribute::phone_number);
  if (p.name.empty()) throw KbFormatError(record, "empty name");

  auto price = parse_price(text_of(Attribute::price_range));
  if (!price) {
    throw KbFormatError(record,
                        fmt::format("price range '{}' not one of cheap, moderate, expensive",
                                    text_of(Attribute::price_range)));
  }
  p.price_range = *price;
  auto rating = parse_rating(text_of(Attribute::customer_rating));
  if (!rating) {
    throw KbFormatError(record,
                        fmt::format("customer rating '{}' not one of low, average, high",
                                    text_of(Attribute::customer_rating)));
  }
  p.customer_rating = *rating;
  auto family = parse_yes_no(text_of(Attribute::family_friendly));
  if (!family) {
    throw KbFormatError(record, fmt::format("family friendly '{}' not yes or no",
                                            text_of(Attribute::family_friendly)));
  }
  p.family_friendly = *family;
  auto distance = parse_number(text_of(Attribute::distance));
  if (!distance || *distance < 0) {
    throw KbFormatError(record, fmt::format("distance '{}' is not a non-negative number",
                                            text_of(Attribute::distance)));
  }
  p.distance = *distance;
  return p;
}

std::string json_scalar(const nlohmann::json& v, std::size_t record, std::string_view key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number()) return format_number(v.get<double>());
  throw KbFormatError(record, fmt::format("'{}' must be a string or number", key));
}

Knowledgebase build(std::vector<Place> places, std::size_t first_record) {
  try {
    return Knowledgebase(std::move(places));
  } catch (const KbFormatError& e) {
    // Re-number against the file's records.
    throw KbFormatError(e.line() + first_record - 1, e.detail());
  }
}

}  // namespace

Knowledgebase parse_kb_json(std::string_view content) {
  if (text::trim(content).empty()) return Knowledgebase{};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw KbFormatError(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw KbFormatError(0, "expected a JSON array of places");
  std::vector<Place> places;
  std::size_t record = 0;
  for (const auto& obj : doc) {
    ++record;
    if (!obj.is_object()) throw KbFormatError(record, "expected an object");
    std::map<Attribute, std::string> fields;
    std::optional<int> id;
    for (const auto& [key, value] : obj.items()) {
      if (key == "id") {
        if (!value.is_number_integer()) throw KbFormatError(record, "id must be an integer");
        id = value.get<int>();
        continue;
      }
      // Provenance annotations, ignored.
      if (key == "synthetic" || text::starts_with(key, "_")) continue;
      auto attr = parse_attribute(key);
      if (!attr) throw KbFormatError(record, fmt::format("unknown key '{}'", key));
      fields[*attr] = json_scalar(value, record, key);
    }
    places.push_back(make_place(fields, id, record));
  }
  return build(std::move(places), 1);
}

namespace {

// RFC 4180 rows: quoted fields may hold commas, doubled quotes and newlines.
std::vector<std::vector<std::string>> read_csv(std::string_view in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < in.size(); ++i) {
    char c = in[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < in.size() && in[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < in.size() && in[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field.push_back(c);
      any = true;
    }
  }
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Knowledgebase parse_kb_csv(std::string_view content) {
  auto rows = read_csv(content);
  if (rows.empty()) return Knowledgebase{};
  const auto& header = rows.front();
  std::vector<std::optional<Attribute>> columns;
  std::optional<std::size_t> id_column;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string key = text::canonical(header[c]);
    if (key == "id") {
      id_column = c;
      columns.emplace_back();
      continue;
    }
    auto attr = parse_attribute(key);
    if (!attr) throw KbFormatError(1, fmt::format("unknown column '{}'", header[c]));
    columns.push_back(attr);
  }
  std::vector<Place> places;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::size_t line = r + 1;
    if (rows[r].size() != header.size()) {
      throw KbFormatError(line, fmt::format("expected {} fields, found {}", header.size(),
                                            rows[r].size()));
    }
    std::map<Attribute, std::string> fields;
    std::optional<int> id;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (id_column && c == *id_column) {
        auto n = parse_number(rows[r][c]);
        if (!n || *n != static_cast<int>(*n)) throw KbFormatError(line, "id must be an integer");
        id = static_cast<int>(*n);
      } else {
        fields[*columns[c]] = rows[r][c];
      }
    }
    places.push_back(make_place(fields, id, line));
  }
  return build(std::move(places), 2);
}

Knowledgebase load_kb(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw KbFormatError(0, "cannot open " + source.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (text::to_lower(source.extension().string()) == ".csv") return parse_kb_csv(buf.str());
  return parse_kb_json(buf.str());
}

}  // namespace concierge
