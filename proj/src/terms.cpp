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
#include "concierge/terms.hpp"

#include <algorithm>
#include <cctype>

#include "concierge/errors.hpp"
#include "concierge/text.hpp"

namespace concierge {

std::string_view label_name(Label label) {
  switch (label) {
    case Label::content:
      return "content";
    case Label::thank:
      return "thank";
    case Label::irrelevant:
      return "irrelevant";
  }
  return "irrelevant";
}

Value normalize_value(std::string_view raw) {
  std::string s = text::trim(raw);
  if (s.size() >= 2 && s.front() == '\'' && s.back() == '\'') {
    s = text::trim(std::string_view(s).substr(1, s.size() - 2));
  }
  s = text::canonical(s);
  if (s == "query") return Value::query();
  if (s == "any") return Value::any();
  return Value::concrete(std::move(s));
}

namespace {

class TermReader {
 public:
  explicit TermReader(std::string_view in) : in_(in) {}

  std::vector<Predicate> read_list() {
    std::vector<Predicate> out;
    skip_space();
    if (at_end()) return out;
    while (true) {
      out.push_back(read_predicate());
      skip_space();
      if (at_end()) break;
      if (peek() != ',') fail("expected ',' between predicates");
      ++pos_;
      skip_space();
      if (at_end()) fail("trailing ','");
    }
    return out;
  }

 private:
  Predicate read_predicate() {
    const std::size_t start = pos_;
    while (!at_end() && peek() != '(' && peek() != ',' && peek() != ')') {
      if (peek() == '\'') fail("quote inside predicate name");
      ++pos_;
    }
    Predicate pred;
    pred.name = text::canonical(in_.substr(start, pos_ - start));
    if (pred.name.empty()) fail("empty predicate name", start);
    if (!at_end() && peek() == ')') fail("unbalanced ')'");
    if (at_end() || peek() == ',') return pred;

    ++pos_;  // '('
    skip_space();
    if (!at_end() && peek() == ')') {
      ++pos_;
      return pred;
    }
    while (true) {
      Value v = read_arg();
      if (std::find(pred.args.begin(), pred.args.end(), v) == pred.args.end()) {
        pred.args.push_back(std::move(v));
      }
      skip_space();
      if (at_end()) fail("unbalanced '('");
      if (peek() == ')') {
        ++pos_;
        return pred;
      }
      if (peek() != ',') fail("expected ',' or ')'");
      ++pos_;
    }
  }

  Value read_arg() {
    skip_space();
    const std::size_t start = pos_;
    if (!at_end() && peek() == '\'') {
      ++pos_;
      std::string raw;
      while (true) {
        if (at_end()) fail("unterminated quote", start);
        if (peek() == '\'') {
          if (pos_ + 1 < in_.size() && in_[pos_ + 1] == '\'') {
            raw.push_back('\'');
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        raw.push_back(peek());
        ++pos_;
      }
      std::string s = text::canonical(raw);
      if (s.empty()) fail("empty argument", start);
      // A quoted "query" is still the sentinel; quoting only protects
      // punctuation. The quotes are already consumed, so no second strip.
      if (s == "query") return Value::query();
      if (s == "any") return Value::any();
      return Value::concrete(s);
    }
    while (!at_end() && peek() != ',' && peek() != ')') {
      if (peek() == '(') fail("nested term");
      ++pos_;
    }
    std::string s = text::canonical(in_.substr(start, pos_ - start));
    if (s.empty()) fail("empty argument", start);
    return normalize_value(s);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw MalformedTerm(at, what);
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Predicate> parse_term_list(std::string_view input) {
  return TermReader(input).read_list();
}

std::string format_atom(std::string_view s) {
  const bool needs_quotes =
      s.empty() || s.front() == '\'' || s.find_first_of(",()") != std::string_view::npos ||
      std::isspace(static_cast<unsigned char>(s.front())) ||
      std::isspace(static_cast<unsigned char>(s.back()));
  if (!needs_quotes) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::string serialize_predicate(const Predicate& pred) {
  if (pred.args.empty()) return pred.name;
  std::string out = pred.name + "(";
  for (std::size_t i = 0; i < pred.args.size(); ++i) {
    if (i) out += ", ";
    out += format_atom(pred.args[i].text());
  }
  out += ")";
  return out;
}

std::string serialize_term_list(const std::vector<Predicate>& preds) {
  std::string out;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (i) out += ", ";
    out += serialize_predicate(preds[i]);
  }
  return out;
}

}  // namespace concierge
