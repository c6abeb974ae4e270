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
// JSON forms of the values crossing the HTTP API and the persisted session
// files.
#pragma once

#include "json.hpp"

#include "concierge/dialog.hpp"
#include "concierge/service.hpp"

namespace concierge {

nlohmann::json to_json(const Requirement& req);
nlohmann::json to_json(const Recommendation& rec);
nlohmann::json to_json(const RelaxationReport& report);
nlohmann::json to_json(const AgentAction& action);
// {"listing": "...", "requirements": [...], "output_list": [...],
//  "history": [...]}
nlohmann::json to_json(const StateSnapshot& state);
nlohmann::json to_json(const TurnReply& reply);
nlohmann::json to_json(const Session& session);

}  // namespace concierge
