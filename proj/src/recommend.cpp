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
#include "concierge/recommend.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "concierge/errors.hpp"

namespace concierge {

const Fact* Recommendation::fact(std::string_view attribute) const {
  for (const auto& f : facts) {
    if (f.attribute == attribute) return &f;
  }
  return nullptr;
}

namespace {

// A requirement reduced to what filtering needs.
struct Filter {
  Attribute attribute;
  bool exclude;
  std::set<std::string> values;
};

std::vector<Filter> filters_of(const std::vector<Requirement>& requirements) {
  std::vector<Filter> out;
  for (const auto& r : requirements) {
    if (r.polarity == Polarity::require && (r.has_query() || r.is_wildcard())) continue;
    Filter f{require_attribute(r.attribute), r.polarity == Polarity::not_require, {}};
    for (const auto& v : r.values) {
      if (v.is_concrete()) f.values.insert(v.text());
    }
    if (f.exclude && f.values.empty()) continue;
    out.push_back(std::move(f));
  }
  return out;
}

bool passes(const Knowledgebase& kb, std::size_t index, const std::vector<Filter>& filters) {
  for (const auto& f : filters) {
    const bool listed = f.values.count(kb.value(index, f.attribute)) > 0;
    if (listed == f.exclude) return false;
  }
  return true;
}

bool is_constraint(const Requirement& r) {
  if (r.polarity == Polarity::not_require) return true;
  return !r.has_query() && !r.is_wildcard();
}

Recommendation describe(const DialogState& state, const Knowledgebase& kb, int id, bool revisit) {
  const Place* place = kb.find(id);
  if (!place) throw Error("place id " + std::to_string(id) + " not in knowledgebase");
  Recommendation rec;
  rec.place_id = id;
  rec.queried = get_query_list(state);
  rec.facts = fill_query(*place, rec.queried);
  rec.justification = justify(*place, state);
  rec.revisit = revisit;
  return rec;
}

}  // namespace

std::vector<int> satisfied_places(const std::vector<Requirement>& requirements,
                                  const Knowledgebase& kb) {
  const auto filters = filters_of(requirements);
  std::vector<int> out;
  for (std::size_t i = 0; i < kb.size(); ++i) {
    if (passes(kb, i, filters)) out.push_back(kb.at(i).id);
  }
  return out;
}

std::vector<int> satisfied_places(const DialogState& state, const Knowledgebase& kb) {
  return satisfied_places(state.requirements, kb);
}

std::vector<std::string> get_query_list(const DialogState& state) {
  std::vector<std::string> out;
  for (const auto& r : state.requirements) {
    if (r.is_query()) out.push_back(r.attribute);
  }
  return out;
}

std::vector<Fact> fill_query(const Place& place, const std::vector<std::string>& attributes) {
  std::vector<Fact> facts;
  auto add = [&](std::string_view name) {
    const Attribute attr = require_attribute(name);
    const std::string canonical(attribute_name(attr));
    for (const auto& f : facts) {
      if (f.attribute == canonical) return;
    }
    facts.push_back({canonical, attribute_of(place, attr).text(), place.display(attr)});
  };
  for (const auto& a : kDefaultDisplay) add(a);
  for (const auto& a : attributes) add(a);
  return facts;
}

Justification justify(const Place& place, const DialogState& state) {
  Justification out;
  for (const auto& r : state.requirements) {
    if (!is_constraint(r)) continue;
    const std::string value = attribute_of(place, r.attribute).text();
    if (r.polarity == Polarity::require) {
      out.matched.push_back({r, value});
    } else {
      out.avoided.push_back({r, value});
    }
  }
  return out;
}

RecommendOutcome recommend(DialogState& state, const Knowledgebase& kb) {
  const bool queried = std::any_of(state.requirements.begin(), state.requirements.end(),
                                   [](const Requirement& r) { return r.is_query(); });
  if (!queried) state = update_state({require("name", {Value::query()})}, std::move(state));

  const std::string signature = constraint_signature(state);
  if (state.recommended_for == signature && !state.history.empty()) {
    return describe(state, kb, state.history.back(), true);
  }

  const auto places = satisfied_places(state, kb);
  if (places.empty()) return explain_failure(state, kb);

  std::vector<int> fresh;
  for (int id : places) {
    if (std::find(state.history.begin(), state.history.end(), id) == state.history.end()) {
      fresh.push_back(id);
    }
  }
  state.recommended_for = signature;
  if (fresh.empty()) {
    state.output_list.clear();
    return Exhausted{};
  }
  state.history.push_back(fresh.front());
  state.output_list.assign(fresh.begin() + 1, fresh.end());
  return describe(state, kb, fresh.front(), false);
}

std::optional<Recommendation> another_option(DialogState& state, const Knowledgebase& kb) {
  if (!state.recommended_for) throw NoPriorRecommendation();
  if (state.output_list.empty()) return std::nullopt;
  const int id = state.output_list.front();
  state.output_list.erase(state.output_list.begin());
  state.history.push_back(id);
  return describe(state, kb, id, false);
}

Recommendation view_history(const DialogState& state, HistoryRef ref, const Knowledgebase& kb) {
  if (state.history.empty()) throw EmptyHistory();
  int id = 0;
  switch (ref.kind) {
    case HistoryRef::Kind::first:
      id = state.history.front();
      break;
    case HistoryRef::Kind::last:
      id = state.history.back();
      break;
    case HistoryRef::Kind::index:
      if (ref.index < 1 || ref.index > state.history.size()) {
        throw IndexOutOfRange(ref.index, state.history.size());
      }
      id = state.history[ref.index - 1];
      break;
  }
  return describe(state, kb, id, true);
}

std::vector<std::string> relaxation_order(const DialogState& state) {
  std::vector<std::string> constrained;
  for (const auto& r : state.requirements) {
    if (!is_constraint(r)) continue;
    if (std::find(constrained.begin(), constrained.end(), r.attribute) == constrained.end()) {
      constrained.push_back(r.attribute);
    }
  }
  std::vector<std::string> order;
  for (auto it = state.key_info.rbegin(); it != state.key_info.rend(); ++it) {
    if (std::find(constrained.begin(), constrained.end(), *it) != constrained.end()) {
      order.push_back(*it);
    }
  }
  for (auto it = constrained.rbegin(); it != constrained.rend(); ++it) {
    if (std::find(order.begin(), order.end(), *it) == order.end()) order.push_back(*it);
  }
  return order;
}

namespace {

std::vector<Requirement> without(const std::vector<Requirement>& reqs,
                                 const std::vector<std::string>& dropped) {
  std::vector<Requirement> out;
  for (const auto& r : reqs) {
    const bool drop = is_constraint(r) &&
                      std::find(dropped.begin(), dropped.end(), r.attribute) != dropped.end();
    if (!drop) out.push_back(r);
  }
  return out;
}

// Advances idx to the next k-combination of 0..n-1 in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

RelaxationReport explain_failure(const DialogState& state, const Knowledgebase& kb) {
  const auto order = relaxation_order(state);
  const std::size_t n = order.size();
  RelaxationReport report;

  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      std::vector<std::string> dropped;
      for (auto i : idx) dropped.push_back(order[i]);
      const auto relaxed = without(state.requirements, dropped);
      const auto found = satisfied_places(relaxed, kb);
      if (found.empty()) continue;

      // Report the blocking attributes in the order the user stated them.
      for (const auto& r : state.requirements) {
        if (std::find(dropped.begin(), dropped.end(), r.attribute) != dropped.end() &&
            std::find(report.blocking.begin(), report.blocking.end(), r.attribute) ==
                report.blocking.end()) {
          report.blocking.push_back(r.attribute);
        }
      }
      const Place& witness = *kb.find(found.front());
      for (const auto& r : relaxed) {
        if (is_constraint(r)) report.satisfied.push_back({r, attribute_of(witness, r.attribute).text()});
      }
      for (const auto& attr : report.blocking) {
        const Attribute a = require_attribute(attr);
        auto& values = report.suggestion[attr];
        for (int id : found) {
          const std::string v = kb.value(*kb.index_of(id), a);
          if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        }
      }
      return report;
    } while (k > 0 && next_combination(idx, n));
  }

  // Not even the unconstrained query finds anything: the knowledgebase is
  // empty.
  for (const auto& r : state.requirements) {
    if (is_constraint(r) &&
        std::find(report.blocking.begin(), report.blocking.end(), r.attribute) ==
            report.blocking.end()) {
      report.blocking.push_back(r.attribute);
    }
  }
  return report;
}

}  // namespace concierge
