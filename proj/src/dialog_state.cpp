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
#include "concierge/dialog_state.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "concierge/errors.hpp"
#include "concierge/text.hpp"

namespace concierge {

std::vector<std::string> default_key_info() {
  return {"food type", "price range", "customer rating"};
}

const Requirement* DialogState::find(Polarity polarity, std::string_view attribute) const {
  for (const auto& r : requirements) {
    if (r.polarity == polarity && r.attribute == attribute) return &r;
  }
  return nullptr;
}

Requirement* DialogState::find(Polarity polarity, std::string_view attribute) {
  for (auto& r : requirements) {
    if (r.polarity == polarity && r.attribute == attribute) return &r;
  }
  return nullptr;
}

namespace {

bool contains(const std::vector<Value>& values, const Value& v) {
  return std::find(values.begin(), values.end(), v) != values.end();
}

void add_values(std::vector<Value>& into, const std::vector<Value>& from) {
  for (const auto& v : from) {
    if (!contains(into, v)) into.push_back(v);
  }
}

void erase_entry(DialogState& state, Polarity polarity, std::string_view attribute) {
  std::erase_if(state.requirements, [&](const Requirement& r) {
    return r.polarity == polarity && r.attribute == attribute;
  });
}

// Removes values from the not_require entry of the attribute, dropping the
// entry once empty.
void lift_exclusions(DialogState& state, const std::string& attribute,
                     const std::vector<Value>& values) {
  Requirement* neg = state.find(Polarity::not_require, attribute);
  if (!neg) return;
  std::erase_if(neg->values, [&](const Value& v) { return contains(values, v); });
  if (neg->values.empty()) erase_entry(state, Polarity::not_require, attribute);
}

void merge_require(DialogState& state, const Requirement& incoming, MergePolicy policy) {
  std::vector<Value> concrete;
  bool query = false;
  bool any = false;
  for (const auto& v : incoming.values) {
    if (v.is_query()) {
      query = true;
    } else if (v.is_any()) {
      any = true;
    } else if (!contains(concrete, v)) {
      concrete.push_back(v);
    }
  }
  Requirement* existing = state.find(Polarity::require, incoming.attribute);

  if (any) {
    // No preference lifts any earlier positive constraint on the attribute.
    if (existing) {
      existing->values = {Value::any()};
    } else {
      state.requirements.push_back(require(incoming.attribute, {Value::any()}));
    }
    return;
  }
  if (concrete.empty()) {
    if (!query) return;
    if (!existing) state.requirements.push_back(require(incoming.attribute, {Value::query()}));
    return;
  }
  if (!existing) {
    state.requirements.push_back(require(incoming.attribute, concrete));
  } else {
    const bool had_sentinel = existing->has_query() || existing->is_wildcard();
    std::erase_if(existing->values, [](const Value& v) { return !v.is_concrete(); });
    if (policy == MergePolicy::replace_values && !had_sentinel) existing->values.clear();
    add_values(existing->values, concrete);
  }
  lift_exclusions(state, incoming.attribute, concrete);
}

void merge_not_require(DialogState& state, const Requirement& incoming) {
  std::vector<Value> excluded;
  for (const auto& v : incoming.values) {
    if (v.is_concrete() && !contains(excluded, v)) excluded.push_back(v);
  }
  if (excluded.empty()) return;
  if (Requirement* neg = state.find(Polarity::not_require, incoming.attribute)) {
    add_values(neg->values, excluded);
  } else {
    state.requirements.push_back(not_require(incoming.attribute, excluded));
  }
  if (Requirement* pos = state.find(Polarity::require, incoming.attribute)) {
    std::erase_if(pos->values, [&](const Value& v) { return contains(excluded, v); });
    if (pos->values.empty()) erase_entry(state, Polarity::require, incoming.attribute);
  }
}

}  // namespace

DialogState update_state(const std::vector<Requirement>& incoming, DialogState state,
                         MergePolicy policy) {
  for (const auto& req : incoming) {
    if (req.values.empty()) continue;
    if (req.polarity == Polarity::require) {
      merge_require(state, req, policy);
    } else {
      merge_not_require(state, req);
    }
  }
  return state;
}

std::optional<std::string> next_info(const DialogState& state) {
  for (const auto& attr : state.key_info) {
    const Requirement* pos = state.find(Polarity::require, attr);
    if (pos && pos->is_query()) return attr;
    if (!pos && !state.find(Polarity::not_require, attr)) return attr;
  }
  return std::nullopt;
}

DialogState record_no_preference(std::string_view attribute, DialogState state) {
  const Attribute attr = require_attribute(attribute);
  const std::string name(attribute_name(attr));
  auto domain = attribute_domain(attr);
  std::vector<Value> values;
  if (domain.empty()) {
    values.push_back(Value::any());
  } else {
    for (auto v : domain) values.push_back(Value::concrete(std::string(v)));
  }
  return update_state({require(name, std::move(values))}, std::move(state));
}

namespace {

using EntryKey = std::tuple<int, std::string, std::set<std::string>>;

std::set<EntryKey> as_set(const std::vector<Requirement>& reqs, bool constraints_only) {
  std::set<EntryKey> out;
  for (const auto& r : reqs) {
    if (constraints_only && r.is_query()) continue;
    std::set<std::string> values;
    for (const auto& v : r.values) {
      if (constraints_only && v.is_query()) continue;
      values.insert(v.text());
    }
    out.emplace(static_cast<int>(r.polarity), r.attribute, std::move(values));
  }
  return out;
}

}  // namespace

std::string constraint_signature(const DialogState& state) {
  std::string out;
  for (const auto& [polarity, attr, values] : as_set(state.requirements, true)) {
    out += polarity == 0 ? "+" : "-";
    out += attr;
    out += "=";
    for (const auto& v : values) {
      out += v;
      out += "|";
    }
    out += ";";
  }
  return out;
}

bool same_requirements(const std::vector<Requirement>& a, const std::vector<Requirement>& b) {
  return a.size() == b.size() && as_set(a, false) == as_set(b, false);
}

std::string format_state(const std::vector<Requirement>& requirements) {
  std::vector<std::string> lines;
  for (const auto& r : requirements) lines.push_back(format_requirement(r));
  return text::join(lines, ",\n");
}

namespace {

class ListingReader {
 public:
  explicit ListingReader(std::string_view in) : in_(in) {}

  std::vector<Requirement> read() {
    std::vector<Requirement> out;
    skip();
    while (!done()) {
      out.push_back(read_one());
      skip();
      if (done()) break;
      expect(',');
      skip();
    }
    return out;
  }

 private:
  Requirement read_one() {
    const std::size_t start = pos_;
    while (!done() && (std::isalpha(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '_')) {
      ++pos_;
    }
    const std::string head(in_.substr(start, pos_ - start));
    Requirement r;
    if (head == "require") {
      r.polarity = Polarity::require;
    } else if (head == "not_require") {
      r.polarity = Polarity::not_require;
    } else {
      throw MalformedTerm(start, "expected require or not_require");
    }
    skip();
    expect('(');
    r.attribute = text::canonical(read_quoted());
    skip();
    expect(',');
    skip();
    expect('[');
    skip();
    while (!done() && in_[pos_] != ']') {
      r.values.push_back(normalize_value(read_quoted()));
      skip();
      if (!done() && in_[pos_] == ',') {
        ++pos_;
        skip();
      }
    }
    expect(']');
    skip();
    expect(')');
    if (r.values.empty()) throw MalformedTerm(pos_, "empty value list");
    return r;
  }

  std::string read_quoted() {
    skip();
    if (done() || (in_[pos_] != '\'' && in_[pos_] != '"')) {
      throw MalformedTerm(pos_, "expected a quoted atom");
    }
    const char q = in_[pos_++];
    std::string out;
    while (true) {
      if (done()) throw MalformedTerm(pos_, "unterminated quote");
      char c = in_[pos_++];
      if (c == q) {
        if (!done() && in_[pos_] == q) {
          out.push_back(q);
          ++pos_;
          continue;
        }
        return out;
      }
      out.push_back(c);
    }
  }

  void expect(char c) {
    if (done() || in_[pos_] != c) throw MalformedTerm(pos_, fmt::format("expected '{}'", c));
    ++pos_;
  }
  void skip() {
    while (!done() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
  }
  bool done() const { return pos_ >= in_.size(); }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Requirement> parse_state(std::string_view listing) {
  return ListingReader(listing).read();
}

void check_invariants(const DialogState& state) {
  std::set<std::pair<int, std::string>> seen;
  for (const auto& r : state.requirements) {
    const std::string what = format_requirement(r);
    if (!seen.emplace(static_cast<int>(r.polarity), r.attribute).second) {
      throw Error("duplicate entry for attribute: " + what);
    }
    if (r.values.empty()) throw Error("empty value list: " + what);
    std::set<Value> distinct(r.values.begin(), r.values.end());
    if (distinct.size() != r.values.size()) throw Error("repeated value: " + what);
    if (r.polarity == Polarity::not_require) {
      for (const auto& v : r.values) {
        if (!v.is_concrete()) throw Error("sentinel inside not_require: " + what);
      }
    } else if ((r.has_query() || r.is_wildcard()) && r.values.size() != 1) {
      throw Error("sentinel mixed with concrete values: " + what);
    }
  }
  for (const auto& r : state.requirements) {
    if (r.polarity != Polarity::require) continue;
    if (const Requirement* neg = state.find(Polarity::not_require, r.attribute)) {
      for (const auto& v : r.values) {
        if (contains(neg->values, v)) throw Error("value both required and excluded: " + v.text());
      }
    }
  }
  for (int id : state.history) {
    if (std::find(state.output_list.begin(), state.output_list.end(), id) !=
        state.output_list.end()) {
      throw Error(fmt::format("place {} in both history and output list", id));
    }
  }
}

}  // namespace concierge
