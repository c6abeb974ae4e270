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
#include "concierge/dialog.hpp"

namespace concierge {

std::string_view canned_name(CannedKind kind) {
  switch (kind) {
    case CannedKind::greeting:
      return "greeting";
    case CannedKind::thank:
      return "thank";
    case CannedKind::irrelevant:
      return "irrelevant";
    case CannedKind::exhausted:
      return "exhausted";
    case CannedKind::no_prior_recommendation:
      return "no_prior_recommendation";
    case CannedKind::empty_history:
      return "empty_history";
    case CannedKind::history_out_of_range:
      return "history_out_of_range";
    case CannedKind::conflicting_preferences:
      return "conflicting_preferences";
  }
  return "irrelevant";
}

std::string_view action_kind(const AgentAction& action) {
  struct Visitor {
    std::string_view operator()(const Ask&) const { return "ask"; }
    std::string_view operator()(const Recommendation&) const { return "recommend"; }
    std::string_view operator()(const RelaxationReport&) const { return "no_result"; }
    std::string_view operator()(const Canned&) const { return "canned"; }
  };
  return std::visit(Visitor{}, action);
}

AgentAction next_action(DialogState& state, const Knowledgebase& kb) {
  if (auto attr = next_info(state)) return Ask{*attr};
  RecommendOutcome outcome = recommend(state, kb);
  if (auto* rec = std::get_if<Recommendation>(&outcome)) return std::move(*rec);
  if (auto* report = std::get_if<RelaxationReport>(&outcome)) return std::move(*report);
  return Canned{CannedKind::exhausted, {}};
}

}  // namespace concierge
