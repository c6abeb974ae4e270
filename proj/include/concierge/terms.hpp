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
// Predicate terms exchanged between the semantic parser, the filter and the
// reasoner.
//
// Text format (one predicate list):
//
//   list      := [ predicate { "," predicate } ]
//   predicate := name [ "(" [ arg { "," arg } ] ")" ]
//   name      := any run of characters except , ( ) '
//   arg       := bare | "'" quoted "'"
//
// Names may contain spaces ("price range"); they are lowercased and inner
// whitespace is collapsed. Bare args are trimmed; a quoted arg keeps commas
// and parentheses, and a doubled '' inside it stands for one quote. The
// word "query" is the query sentinel and "any" the wildcard sentinel.
// Canonical output joins predicates with ", " and args with ", ", quoting
// only the args that need it.
#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace concierge {

class Value {
 public:
  enum class Kind { concrete, query, any };

  static Value concrete(std::string text) { return Value(Kind::concrete, std::move(text)); }
  static Value query() { return Value(Kind::query, "query"); }
  // Matches every stored value; produced for "no preference" answers on
  // open-vocabulary attributes.
  static Value any() { return Value(Kind::any, "any"); }

  Kind kind() const { return kind_; }
  bool is_concrete() const { return kind_ == Kind::concrete; }
  bool is_query() const { return kind_ == Kind::query; }
  bool is_any() const { return kind_ == Kind::any; }
  const std::string& text() const { return text_; }

  friend auto operator<=>(const Value&, const Value&) = default;

 private:
  Value(Kind kind, std::string text) : kind_(kind), text_(std::move(text)) {}

  Kind kind_;
  std::string text_;
};

struct Predicate {
  std::string name;
  std::vector<Value> args;

  friend auto operator<=>(const Predicate&, const Predicate&) = default;
};

enum class Label { content, thank, irrelevant };

std::string_view label_name(Label label);

// Lowercases, trims, strips one level of surrounding single quotes and maps
// the reserved words to their sentinels. No synonym folding happens here.
Value normalize_value(std::string_view raw);

// Throws MalformedTerm with the byte offset of the problem.
std::vector<Predicate> parse_term_list(std::string_view input);

std::string serialize_term_list(const std::vector<Predicate>& preds);
std::string serialize_predicate(const Predicate& pred);

// Quotes the value when the bare form would not read back identically.
std::string format_atom(std::string_view text);

}  // namespace concierge
