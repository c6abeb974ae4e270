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
#include "concierge/service.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <random>

#include "concierge/errors.hpp"
#include "concierge/json_io.hpp"
#include "concierge/text.hpp"

namespace concierge {

namespace {

Canned canned(CannedKind kind, std::string detail = {}) { return Canned{kind, std::move(detail)}; }

// Content turns. Commits to session.state only on paths that change it.
AgentAction content_turn(Session& session, const NormalizedInput& in, const ServiceConfig& config) {
  const Knowledgebase& kb = *config.kb;

  std::vector<Requirement> reqs;
  try {
    reqs = expand_preferences(in.requirements, config.style);
  } catch (const EmptyIntersection& e) {
    return canned(CannedKind::conflicting_preferences, e.attribute());
  }

  DialogState st = update_state(reqs, session.state, config.merge);
  for (const auto& attr : in.no_preference) {
    try {
      st = record_no_preference(attr, std::move(st));
    } catch (const UnknownAttribute& e) {
      spdlog::warn("ignoring no-preference answer: {}", e.what());
    }
  }
  for (const auto& r : st.requirements) session.ctx.discussed.insert(r.attribute);

  if (in.special) {
    if (const auto* ref = std::get_if<HistoryRef>(&*in.special)) {
      try {
        Recommendation rec = view_history(st, *ref, kb);
        session.state = std::move(st);
        return rec;
      } catch (const EmptyHistory&) {
        return canned(CannedKind::empty_history);
      } catch (const IndexOutOfRange&) {
        const std::size_t n = st.history.size();
        return canned(CannedKind::history_out_of_range,
                      fmt::format("{} place{}", n, n == 1 ? "" : "s"));
      }
    }
    // "another one" together with new constraints is a fresh search.
    if (constraint_signature(st) == constraint_signature(session.state)) {
      try {
        auto rec = another_option(st, kb);
        session.state = std::move(st);
        if (!rec) return canned(CannedKind::exhausted);
        return *rec;
      } catch (const NoPriorRecommendation&) {
        session.state = std::move(st);
        return canned(CannedKind::no_prior_recommendation);
      }
    }
  }

  AgentAction action = next_action(st, kb);
  session.state = std::move(st);
  return action;
}

void check_message(std::string_view text) {
  if (text.size() > kMaxMessageBytes) {
    throw MessageRejected(fmt::format("message exceeds {} bytes", kMaxMessageBytes));
  }
  if (text::trim(text).empty()) throw MessageRejected("empty message");
}

}  // namespace

StateSnapshot snapshot(const DialogState& state) {
  return {state.requirements, state.output_list, state.history};
}

TurnReply run_turn(Session& session, std::string_view text, const ServiceConfig& config) {
  check_message(text);
  if (!config.kb) throw ServiceNotReady("no knowledgebase loaded");
  const std::string message = text::trim(text);
  session.transcript.push_back({"user", message});

  ParseResult parsed;
  if (config.parser) {
    parsed = config.parser->parse(message, session.ctx);
  } else {
    parsed = rule_parse(message, session.ctx);
  }
  const NormalizedInput in = normalize_parse(parsed, session.ctx);

  AgentAction action;
  switch (in.label) {
    case Label::thank:
      action = canned(CannedKind::thank);
      break;
    case Label::irrelevant:
      action = canned(CannedKind::irrelevant);
      break;
    case Label::content:
      action = content_turn(session, in, config);
      break;
  }

  std::string reply = render(action, config.templates, session.turns);
  if (config.rephraser) reply = config.rephraser->rephrase(reply);

  if (const auto* ask = std::get_if<Ask>(&action)) {
    session.ctx.last_bot_question = BotQuestion{ask->attribute, reply};
  } else if (in.label == Label::content) {
    session.ctx.last_bot_question.reset();
  }

  session.transcript.push_back({"bot", reply});
  ++session.turns;
  session.updated = std::chrono::system_clock::now();
  return {std::move(reply), std::move(action), snapshot(session.state)};
}

ConciergeService::ConciergeService(ServiceConfig config) : config_(std::move(config)) {
  if (!config_.kb) throw ServiceNotReady("no knowledgebase loaded");
  if (!config_.parser) config_.parser = std::make_shared<RuleParser>();
  if (!config_.rephraser) config_.rephraser = std::make_shared<IdentityRephraser>();
  if (config_.persist_dir) std::filesystem::create_directories(*config_.persist_dir);
  rng_state_ = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
}

std::string ConciergeService::new_id() {
  std::lock_guard lock(rng_mutex_);
  // splitmix64
  std::uint64_t z = (rng_state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return fmt::format("{:016x}", z ^ (z >> 31));
}

std::string ConciergeService::create_session() {
  auto slot = std::make_shared<Slot>();
  Session& s = slot->session;
  s.state.key_info = config_.key_info;
  s.created = s.updated = std::chrono::system_clock::now();
  s.transcript.push_back({"bot", render_canned(CannedKind::greeting, config_.templates, 0)});

  std::unique_lock lock(sessions_mutex_);
  do {
    s.id = new_id();
  } while (sessions_.count(s.id));
  sessions_.emplace(s.id, slot);
  lock.unlock();

  std::lock_guard guard(slot->mutex);
  persist(s);
  return s.id;
}

std::shared_ptr<ConciergeService::Slot> ConciergeService::slot(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession(id);
  return it->second;
}

TurnReply ConciergeService::post_message(const std::string& id, std::string_view text) {
  check_message(text);
  auto s = slot(id);

  std::unique_lock lock(s->mutex);
  const std::uint64_t ticket = s->next_ticket++;
  s->turn_cv.wait(lock, [&] { return s->serving == ticket; });
  Session work = s->session;
  lock.unlock();

  // Readers see the last committed state while the turn runs.
  auto finish = [&] {
    ++s->serving;
    s->turn_cv.notify_all();
  };
  TurnReply reply;
  try {
    reply = run_turn(work, text, config_);
  } catch (...) {
    lock.lock();
    finish();
    throw;
  }
  lock.lock();
  s->session = std::move(work);
  persist(s->session);
  finish();
  return reply;
}

StateSnapshot ConciergeService::get_state(const std::string& id) const {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return snapshot(s->session.state);
}

std::vector<TranscriptEntry> ConciergeService::transcript(const std::string& id) const {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return s->session.transcript;
}

std::size_t ConciergeService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

void ConciergeService::persist(const Session& session) const {
  if (!config_.persist_dir) return;
  const auto path = *config_.persist_dir / (session.id + ".json");
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      spdlog::warn("cannot write session file {}", tmp);
      return;
    }
    out << to_json(session).dump(2) << '\n';
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) spdlog::warn("cannot persist session {}: {}", session.id, ec.message());
}

}  // namespace concierge
