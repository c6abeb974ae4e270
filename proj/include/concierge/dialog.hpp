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
// The conversational template: decide each turn whether to ask for missing
// information or to recommend.
#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "concierge/dialog_state.hpp"
#include "concierge/recommend.hpp"

namespace concierge {

enum class CannedKind {
  greeting,
  thank,
  irrelevant,
  exhausted,
  no_prior_recommendation,
  empty_history,
  history_out_of_range,
  conflicting_preferences,
};

std::string_view canned_name(CannedKind kind);

struct Ask {
  std::string attribute;
  friend bool operator==(const Ask&, const Ask&) = default;
};

struct Canned {
  CannedKind kind = CannedKind::irrelevant;
  std::string detail;
  friend bool operator==(const Canned&, const Canned&) = default;
};

using AgentAction = std::variant<Ask, Recommendation, RelaxationReport, Canned>;

// "ask", "recommend", "no_result" or "canned".
std::string_view action_kind(const AgentAction& action);

// Ask while next_info finds a gap, otherwise recommend.
AgentAction next_action(DialogState& state, const Knowledgebase& kb);

}  // namespace concierge
