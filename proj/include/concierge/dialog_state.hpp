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
// Requirement state of one dialog and the rules for merging new information
// into it.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "concierge/kb.hpp"
#include "concierge/requirement.hpp"

namespace concierge {

std::vector<std::string> default_key_info();

struct DialogState {
  std::vector<Requirement> requirements;
  std::vector<int> output_list;  // pending recommendations
  std::vector<int> history;      // already recommended, oldest first
  std::vector<std::string> key_info = default_key_info();
  // Constraint signature the current output list was computed for; unset
  // until the first successful recommendation.
  std::optional<std::string> recommended_for;

  const Requirement* find(Polarity polarity, std::string_view attribute) const;
  Requirement* find(Polarity polarity, std::string_view attribute);

  friend bool operator==(const DialogState&, const DialogState&) = default;
};

// How a concrete require merges into an existing concrete require on the same
// attribute.
enum class MergePolicy { union_values, replace_values };

// Merges already-expanded requirements (no prefer/not_prefer) into the state:
//   require(A,[query]) over an existing require(A,_)   no change
//   concrete over require(A,[query ...])               query dropped, values added
//   concrete over concrete                             union (or replace)
//   attribute absent                                    appended
// A require on A removes its values from not_require(A). An incoming
// not_require(A,V) unions into not_require(A) and removes V from require(A),
// deleting require(A) if nothing is left. Query sentinels inside a
// not_require are ignored.
DialogState update_state(const std::vector<Requirement>& incoming, DialogState state,
                         MergePolicy policy = MergePolicy::union_values);

// First key attribute that is queried or not yet discussed at all. A
// not_require alone counts as discussed.
std::optional<std::string> next_info(const DialogState& state);

// Records "no preference" for an attribute: the full domain for closed
// attributes, the wildcard for open ones.
DialogState record_no_preference(std::string_view attribute, DialogState state);

// Identifies the concrete constraints of a state independent of entry and
// value order; query entries do not contribute.
std::string constraint_signature(const DialogState& state);

// Listing form, one requirement per line:
//   require('name',['query']),
//   require('establishment',['restaurant'])
std::string format_state(const std::vector<Requirement>& requirements);
// Inverse of format_state; also accepts double quotes and arbitrary spacing.
// Throws MalformedTerm.
std::vector<Requirement> parse_state(std::string_view listing);

// Order-insensitive comparison (entries as a set, values as a set).
bool same_requirements(const std::vector<Requirement>& a, const std::vector<Requirement>& b);

// Throws Error with a description if any DialogState invariant is broken.
void check_invariants(const DialogState& state);

}  // namespace concierge
