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
#include "concierge/json_io.hpp"

#include <chrono>

namespace concierge {

using nlohmann::json;

namespace {

json values_json(const std::vector<Value>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(v.text());
  return arr;
}

json match_json(const Match& m) {
  return {{"requirement", to_json(m.requirement)}, {"value", m.value}};
}

std::int64_t epoch_ms(std::chrono::system_clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

}  // namespace

json to_json(const Requirement& req) {
  return {
      {"polarity", req.polarity == Polarity::require ? "require" : "not_require"},
      {"attribute", req.attribute},
      {"values", values_json(req.values)},
  };
}

json to_json(const Recommendation& rec) {
  json facts = json::array();
  for (const auto& f : rec.facts) {
    facts.push_back({{"attribute", f.attribute}, {"value", f.value}, {"display", f.display}});
  }
  json matched = json::array();
  for (const auto& m : rec.justification.matched) matched.push_back(match_json(m));
  json avoided = json::array();
  for (const auto& m : rec.justification.avoided) avoided.push_back(match_json(m));
  return {
      {"place_id", rec.place_id},
      {"facts", facts},
      {"justification", {{"matched", matched}, {"avoided", avoided}}},
      {"queried", rec.queried},
      {"revisit", rec.revisit},
  };
}

json to_json(const RelaxationReport& report) {
  json satisfied = json::array();
  for (const auto& m : report.satisfied) satisfied.push_back(match_json(m));
  json suggestion = json::object();
  for (const auto& [attr, values] : report.suggestion) suggestion[attr] = values;
  return {{"satisfied", satisfied}, {"blocking", report.blocking}, {"suggestion", suggestion}};
}

json to_json(const AgentAction& action) {
  json out = {{"kind", std::string(action_kind(action))}};
  if (const auto* ask = std::get_if<Ask>(&action)) {
    out["attribute"] = ask->attribute;
  } else if (const auto* rec = std::get_if<Recommendation>(&action)) {
    out["recommendation"] = to_json(*rec);
  } else if (const auto* report = std::get_if<RelaxationReport>(&action)) {
    out["report"] = to_json(*report);
  } else if (const auto* canned = std::get_if<Canned>(&action)) {
    out["canned"] = std::string(canned_name(canned->kind));
    if (!canned->detail.empty()) out["detail"] = canned->detail;
  }
  return out;
}

json to_json(const StateSnapshot& state) {
  json reqs = json::array();
  for (const auto& r : state.requirements) reqs.push_back(to_json(r));
  return {
      {"listing", format_state(state.requirements)},
      {"requirements", reqs},
      {"output_list", state.output_list},
      {"history", state.history},
  };
}

json to_json(const TurnReply& reply) {
  return {{"reply", reply.text}, {"action", to_json(reply.action)}, {"state", to_json(reply.state)}};
}

json to_json(const Session& session) {
  json transcript = json::array();
  for (const auto& e : session.transcript) {
    transcript.push_back({{"speaker", e.speaker}, {"text", e.text}});
  }
  json ctx = {{"discussed", session.ctx.discussed}};
  if (session.ctx.last_bot_question) {
    ctx["last_bot_question"] = {{"attribute", session.ctx.last_bot_question->attribute},
                                {"text", session.ctx.last_bot_question->text}};
  }
  return {
      {"id", session.id},
      {"state", to_json(snapshot(session.state))},
      {"context", ctx},
      {"transcript", transcript},
      {"turns", session.turns},
      {"created_ms", epoch_ms(session.created)},
      {"updated_ms", epoch_ms(session.updated)},
  };
}

}  // namespace concierge
