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
// Chat sessions: one full parse -> reason -> render turn per user message.
#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "concierge/commonsense.hpp"
#include "concierge/dialog.hpp"
#include "concierge/kb.hpp"
#include "concierge/nlg.hpp"
#include "concierge/parse_frontend.hpp"

namespace concierge {

inline constexpr std::size_t kMaxMessageBytes = 2048;

struct TranscriptEntry {
  std::string speaker;  // "bot" or "user"
  std::string text;
};

struct Session {
  std::string id;
  DialogState state;
  ParseContext ctx;
  std::vector<TranscriptEntry> transcript;
  std::chrono::system_clock::time_point created;
  std::chrono::system_clock::time_point updated;
  std::size_t turns = 0;
};

struct StateSnapshot {
  std::vector<Requirement> requirements;
  std::vector<int> output_list;
  std::vector<int> history;
};

struct TurnReply {
  std::string text;
  AgentAction action;
  StateSnapshot state;
};

struct ServiceConfig {
  std::shared_ptr<const Knowledgebase> kb;
  StyleTable style = StyleTable::defaults();
  Templates templates = Templates::defaults();
  std::shared_ptr<SemanticParser> parser;        // rule backend when null
  std::shared_ptr<Rephraser> rephraser;          // identity when null
  MergePolicy merge = MergePolicy::union_values;
  std::vector<std::string> key_info = default_key_info();
  std::optional<std::filesystem::path> persist_dir;
};

// One turn on a session, without any locking. Exposed for tests and the REPL.
TurnReply run_turn(Session& session, std::string_view text, const ServiceConfig& config);

StateSnapshot snapshot(const DialogState& state);

class ConciergeService {
 public:
  // Throws ServiceNotReady when no knowledgebase is configured.
  explicit ConciergeService(ServiceConfig config);

  // Fresh session with the greeting in its transcript. Returns the id.
  std::string create_session();

  // Messages to one session are applied strictly in arrival order; different
  // sessions proceed independently. Throws UnknownSession or MessageRejected.
  TurnReply post_message(const std::string& id, std::string_view text);

  StateSnapshot get_state(const std::string& id) const;
  std::vector<TranscriptEntry> transcript(const std::string& id) const;
  std::size_t session_count() const;

  const ServiceConfig& config() const { return config_; }

 private:
  struct Slot {
    mutable std::mutex mutex;
    std::condition_variable turn_cv;
    std::uint64_t next_ticket = 0;
    std::uint64_t serving = 0;
    Session session;
  };

  std::shared_ptr<Slot> slot(const std::string& id) const;
  void persist(const Session& session) const;
  std::string new_id();

  ServiceConfig config_;
  mutable std::shared_mutex sessions_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mutex rng_mutex_;
  std::uint64_t rng_state_;
};

}  // namespace concierge
