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
#include "concierge/requirement.hpp"

#include <algorithm>

namespace concierge {

bool Requirement::is_query() const {
  return polarity == Polarity::require && values.size() == 1 && values.front().is_query();
}

bool Requirement::has_query() const {
  return std::any_of(values.begin(), values.end(), [](const Value& v) { return v.is_query(); });
}

bool Requirement::is_wildcard() const {
  return std::any_of(values.begin(), values.end(), [](const Value& v) { return v.is_any(); });
}

Requirement require(std::string attribute, std::vector<Value> values) {
  return {Polarity::require, std::move(attribute), std::move(values)};
}

Requirement not_require(std::string attribute, std::vector<Value> values) {
  return {Polarity::not_require, std::move(attribute), std::move(values)};
}

namespace {
std::vector<Value> values_of(std::initializer_list<const char*> texts) {
  std::vector<Value> out;
  for (const char* t : texts) out.push_back(normalize_value(t));
  return out;
}
}  // namespace

Requirement require(std::string attribute, std::initializer_list<const char*> values) {
  return require(std::move(attribute), values_of(values));
}

Requirement not_require(std::string attribute, std::initializer_list<const char*> values) {
  return not_require(std::move(attribute), values_of(values));
}

namespace {
std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}
}  // namespace

std::string format_requirement(const Requirement& req) {
  std::string out = req.polarity == Polarity::require ? "require(" : "not_require(";
  out += quote(req.attribute);
  out += ",[";
  for (std::size_t i = 0; i < req.values.size(); ++i) {
    if (i) out += ",";
    out += quote(req.values[i].text());
  }
  out += "])";
  return out;
}

}  // namespace concierge
