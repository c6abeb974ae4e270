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
// Constraint search over the knowledgebase, navigation through the
// recommendation lists, justification, and relaxation analysis on failure.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "concierge/dialog_state.hpp"
#include "concierge/kb.hpp"

namespace concierge {

struct Fact {
  std::string attribute;
  std::string value;    // normalized, equals attribute_of(place, attribute)
  std::string display;  // original casing

  friend bool operator==(const Fact&, const Fact&) = default;
};

// Evidence for one constraint: the place value that satisfies a require, or
// the place value that stays clear of a not_require.
struct Match {
  Requirement requirement;
  std::string value;

  friend bool operator==(const Match&, const Match&) = default;
};

struct Justification {
  std::vector<Match> matched;
  std::vector<Match> avoided;

  friend bool operator==(const Justification&, const Justification&) = default;
};

struct Recommendation {
  int place_id = 0;
  std::vector<Fact> facts;
  Justification justification;
  std::vector<std::string> queried;  // attributes the user asked for
  // True when an earlier recommendation is described again rather than a new
  // place being offered.
  bool revisit = false;

  const Fact* fact(std::string_view attribute) const;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

struct RelaxationReport {
  std::vector<Match> satisfied;
  std::vector<std::string> blocking;
  std::map<std::string, std::vector<std::string>> suggestion;

  friend bool operator==(const RelaxationReport&, const RelaxationReport&) = default;
};

// Recommendation found, or the constraints cannot be met. A recommendation
// request whose places were all offered already yields Exhausted.
struct Exhausted {
  friend bool operator==(const Exhausted&, const Exhausted&) = default;
};
using RecommendOutcome = std::variant<Recommendation, RelaxationReport, Exhausted>;

inline const std::vector<std::string> kDefaultDisplay = {"name", "food type", "price range",
                                                         "customer rating"};

// Ids of the places meeting every concrete require (any listed value) and no
// not_require, in knowledgebase order. Query and wildcard entries do not
// filter.
std::vector<int> satisfied_places(const DialogState& state, const Knowledgebase& kb);
std::vector<int> satisfied_places(const std::vector<Requirement>& requirements,
                                  const Knowledgebase& kb);

// Attributes whose require entry is exactly [query], in state order.
std::vector<std::string> get_query_list(const DialogState& state);

// The default display facts followed by the queried ones. Throws
// UnknownAttribute.
std::vector<Fact> fill_query(const Place& place, const std::vector<std::string>& attributes);

Justification justify(const Place& place, const DialogState& state);

// Adds require(name,[query]) when nothing is queried. If the constraints
// are unchanged since the last recommendation, the last place is described
// again with the current queries. Otherwise searches afresh: places already
// in the history are skipped, the rest fill the output list, and its head
// moves into the history.
RecommendOutcome recommend(DialogState& state, const Knowledgebase& kb);

// Next entry of the output list, or nullopt (exhausted). Throws
// NoPriorRecommendation before the first recommendation.
std::optional<Recommendation> another_option(DialogState& state, const Knowledgebase& kb);

struct HistoryRef {
  enum class Kind { first, last, index };
  Kind kind = Kind::last;
  std::size_t index = 0;  // 1-based, for Kind::index

  static HistoryRef first() { return {Kind::first, 0}; }
  static HistoryRef last() { return {Kind::last, 0}; }
  static HistoryRef nth(std::size_t i) { return {Kind::index, i}; }

  friend bool operator==(const HistoryRef&, const HistoryRef&) = default;
};

// Describes a past recommendation without touching the lists. Throws
// EmptyHistory or IndexOutOfRange.
Recommendation view_history(const DialogState& state, HistoryRef ref, const Knowledgebase& kb);

// Attribute order in which constraints are given up when several minimal
// relaxations exist: key attributes from last to first, then the other
// constrained attributes from most to least recently stated.
std::vector<std::string> relaxation_order(const DialogState& state);

// Smallest set of constrained attributes whose removal lets some place
// through, ties broken by relaxation_order. Expects satisfied_places to be
// empty.
RelaxationReport explain_failure(const DialogState& state, const Knowledgebase& kb);

}  // namespace concierge
