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

#include <string>
#include <vector>

#include "concierge/terms.hpp"

namespace concierge {

enum class Polarity { require, not_require };

// One polarity-tagged constraint. Values of a require are alternatives; values
// of a not_require are all excluded.
struct Requirement {
  Polarity polarity = Polarity::require;
  std::string attribute;
  std::vector<Value> values;

  bool is_query() const;     // require(A, [query])
  bool has_query() const;
  bool is_wildcard() const;  // contains the any sentinel

  friend bool operator==(const Requirement&, const Requirement&) = default;
};

inline constexpr const char* kPreferAttribute = "prefer";
inline constexpr const char* kNotPreferAttribute = "not_prefer";

Requirement require(std::string attribute, std::vector<Value> values);
Requirement not_require(std::string attribute, std::vector<Value> values);
// Shorthand for tests and tables: every text becomes a concrete value, except
// "query" and "any" which become their sentinels.
Requirement require(std::string attribute, std::initializer_list<const char*> values);
Requirement not_require(std::string attribute, std::initializer_list<const char*> values);

// require('price range',['cheap'])
std::string format_requirement(const Requirement& req);

}  // namespace concierge
