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
// Offline keyword parser. It recognizes the same predicate vocabulary the
// LLM backend is prompted with, clause by clause: a negator earlier in the
// clause flips a mention to its negative form.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "concierge/parse_frontend.hpp"
#include "concierge/text.hpp"

namespace concierge {

namespace {

struct Clause {
  std::vector<std::string> tokens;
  std::string padded;  // " tok tok tok "
};

struct Mention {
  std::size_t clause;
  std::size_t token;
  std::size_t length;
};

// ---------------------------------------------------------------------------
// Lexicon

const std::vector<std::pair<std::string, std::string>> kCuisines = {
    {"indian", "indian"},       {"thai", "thai"},
    {"chinese", "chinese"},     {"japanese", "japanese"},
    {"sushi", "japanese"},      {"italian", "italian"},
    {"american", "american"},   {"burger", "american"},
    {"burgers", "american"},    {"mexican", "mexican"},
    {"tacos", "mexican"},       {"french", "french"},
    {"korean", "korean"},       {"vietnamese", "vietnamese"},
    {"mediterranean", "mediterranean"},
    {"greek", "greek"},         {"spanish", "spanish"},
    {"english", "english"},     {"middle eastern", "middle eastern"},
    {"chicken", "chicken"},     {"fried chicken", "chicken"},
    {"seafood", "seafood"},     {"vegetarian", "vegetarian"},
    {"bubble tea", "bubble tea"}, {"boba", "bubble tea"},
    {"barbecue", "barbecue"},   {"bbq", "barbecue"},
};

const std::vector<std::pair<std::string, std::string>> kConcepts = {
    {"curry", "curry"},     {"curries", "curry"},  {"spicy", "spicy"},
    {"pizza", "pizza"},     {"pizzas", "pizza"},   {"noodle", "noodle"},
    {"noodles", "noodle"},  {"alcohol", "alcohol"}, {"alcoholic", "alcohol"},
    {"beer", "beer"},       {"beers", "beer"},     {"coffee", "coffee"},
};

const std::vector<std::pair<std::string, std::string>> kVenues = {
    {"restaurant", "restaurant"}, {"restaurants", "restaurant"}, {"eatery", "restaurant"},
    {"diner", "restaurant"},      {"bar", "bar"},                {"bars", "bar"},
    {"pub", "pub"},               {"pubs", "pub"},               {"coffee shop", "coffee shop"},
    {"coffee shops", "coffee shop"}, {"cafe", "coffee shop"},    {"coffeehouse", "coffee shop"},
    {"fast food", "fast food"},
};

const std::vector<std::string> kMealPhrases = {
    "dinner", "lunch", "breakfast", "brunch", "place to eat", "somewhere to eat",
    "eat out", "dine", "dining", "something to eat", "grab a bite",
};

const std::vector<std::string> kDrinkVenuePhrases = {
    "place to drink",   "place for drink",  "place for drinks", "place for a drink",
    "somewhere to drink", "grab a drink",   "get a drink",      "get drinks",
    "go for a drink",   "go for drinks",    "for a drink",      "something to drink",
};

// Food types a drink venue is recorded under.
const std::vector<std::string> kDrinkFoodTypes = {"coffee", "tea", "bubble tea", "juice", "bar"};

const std::vector<std::pair<std::string, std::string>> kPriceWords = {
    {"cheap", "cheap"},          {"cheaper", "cheap"},       {"cheapest", "cheap"},
    {"inexpensive", "cheap"},    {"affordable", "cheap"},    {"budget friendly", "cheap"},
    {"low cost", "cheap"},       {"low price", "cheap"},     {"low prices", "cheap"},
    {"low priced", "cheap"},     {"moderate", "moderate"},   {"moderately priced", "moderate"},
    {"mid range", "moderate"},   {"reasonable", "moderate"}, {"reasonably priced", "moderate"},
    {"medium priced", "moderate"}, {"average price", "average"}, {"average priced", "average"},
    {"expensive", "expensive"},  {"pricey", "expensive"},    {"high end", "expensive"},
    {"upscale", "expensive"},    {"fancy", "expensive"},     {"luxury", "expensive"},
    {"luxurious", "expensive"},  {"high price", "expensive"}, {"high priced", "expensive"},
};

const std::set<std::string> kPriceContext = {"price", "prices", "priced", "pricing", "budget",
                                             "cost", "costs", "spend"};
const std::set<std::string> kRatingContext = {"rating", "ratings", "rated", "review", "reviews",
                                              "reviewed", "stars", "star", "score", "feedback"};

const std::vector<std::pair<std::string, std::string>> kLevelWords = {
    {"low", "low"},           {"lowest", "low"},      {"bad", "low"},
    {"poor", "low"},          {"negative", "low"},    {"average", "average"},
    {"medium", "average"},    {"ok", "average"},      {"okay", "average"},
    {"decent", "average"},    {"mediocre", "average"}, {"moderate", "average"},
    {"high", "high"},         {"highest", "high"},    {"highly", "high"},
    {"good", "high"},         {"great", "high"},      {"excellent", "high"},
    {"best", "high"},         {"top", "high"},        {"positive", "high"},
    {"well", "high"},         {"better", "high"},
};

const std::set<std::string> kNegators = {
    "not",  "no",     "don't",  "dont",   "doesn't", "didn't", "never", "except", "without",
    "hate", "dislike", "avoid", "can't",  "cannot",  "won't",  "isn't", "aren't", "neither",
    "nor",  "excluding", "allergic", "nothing",
};

const std::vector<std::string> kFamilyWords = {
    "family friendly", "kid friendly", "child friendly", "family", "families",
    "kids",            "kid",          "children",       "child",  "toddler",
};

const std::vector<std::string> kNameQuery = {
    "recommend",   "recommendation", "suggest",     "suggestion", "looking for",
    "look for",    "find",           "search",      "somewhere",  "know where",
    "where can",   "where should",   "where to",    "know any",   "know a good",
    "what place",  "which place",    "what restaurant", "which restaurant",
};

const std::vector<std::string> kAddressQuery = {
    "address", "where is it", "where is that", "where is the", "where's it", "where it is",
    "located", "location",    "directions",    "how do i get", "how to get there",
};

const std::vector<std::string> kPhoneQuery = {
    "phone", "contact number", "call them", "call it", "their number", "its number",
    "telephone", "reservation", "reserve", "book a table",
};

const std::vector<std::string> kDistanceQuery = {"how far", "distance"};

const std::vector<std::string> kAnotherOption = {
    "another",         "other one",     "other ones",    "other option",   "other options",
    "other recommendation", "other recommendations", "other place", "other places",
    "other restaurant", "other restaurants", "something else", "anything else", "next one",
    "different one",   "different place", "any other",  "else",
};

const std::vector<std::string> kHistoryCue = {
    "recommended", "suggested", "mentioned", "showed", "told me", "earlier", "before",
    "go back",     "back to",   "previous",  "previously",
};

const std::vector<std::string> kThanks = {"thank", "thanks", "thx", "appreciate", "appreciated",
                                          "grateful", "much obliged", "cheers"};

const std::vector<std::string> kNoPreference = {
    "no preference",   "don't care",        "do not care",       "doesn't matter",
    "does not matter", "not looking for a specific", "not looking for a particular",
    "no specific",     "no particular",     "not particular",    "not picky",
    "anything is fine", "any is fine",      "whatever",          "either way",
    "i don't mind",    "not really",        "nope",              "anything works",
    "any rating",      "any price",         "any food",          "any cuisine",
};

const std::map<std::string, int> kNumberWords = {
    {"zero", 0},     {"one", 1},       {"two", 2},        {"three", 3},     {"four", 4},
    {"five", 5},     {"six", 6},       {"seven", 7},      {"eight", 8},     {"nine", 9},
    {"ten", 10},     {"eleven", 11},   {"twelve", 12},    {"thirteen", 13}, {"fourteen", 14},
    {"fifteen", 15}, {"sixteen", 16},  {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
    {"twenty", 20},  {"thirty", 30},   {"forty", 40},     {"fifty", 50},    {"sixty", 60},
    {"seventy", 70}, {"eighty", 80},   {"ninety", 90},    {"hundred", 100},
};

const std::map<std::string, std::size_t> kOrdinals = {
    {"second", 2}, {"2nd", 2}, {"third", 3}, {"3rd", 3}, {"fourth", 4},
    {"4th", 4},    {"fifth", 5}, {"5th", 5},
};

// ---------------------------------------------------------------------------
// Clause handling

std::string normalize_quotes(std::string_view in) {
  std::string out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    // U+2019 / U+2018 as UTF-8.
    if (i + 2 < in.size() && static_cast<unsigned char>(in[i]) == 0xE2 &&
        static_cast<unsigned char>(in[i + 1]) == 0x80 &&
        (static_cast<unsigned char>(in[i + 2]) == 0x99 ||
         static_cast<unsigned char>(in[i + 2]) == 0x98)) {
      out.push_back('\'');
      i += 2;
      continue;
    }
    out.push_back(in[i]);
  }
  return out;
}

Clause make_clause(std::vector<std::string> tokens) {
  Clause c;
  c.padded = " " + text::join(tokens, " ") + " ";
  c.tokens = std::move(tokens);
  return c;
}

std::vector<Clause> split_clauses(std::string_view utterance) {
  const std::string s = normalize_quotes(utterance);
  std::vector<std::string> pieces;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool decimal = c == '.' && i > 0 && i + 1 < s.size() &&
                         std::isdigit(static_cast<unsigned char>(s[i - 1])) &&
                         std::isdigit(static_cast<unsigned char>(s[i + 1]));
    if ((c == ',' || c == '.' || c == '!' || c == '?' || c == ';' || c == ':') && !decimal) {
      pieces.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  pieces.push_back(cur);

  std::vector<Clause> clauses;
  for (const auto& piece : pieces) {
    auto tokens = text::words(piece);
    // "but" starts a new clause, except in "anything but".
    std::vector<std::string> part;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const bool split = tokens[i] == "but" && !part.empty() && part.back() != "anything" &&
                         part.back() != "everything";
      if (split) {
        clauses.push_back(make_clause(std::move(part)));
        part.clear();
        continue;
      }
      part.push_back(tokens[i]);
    }
    if (!part.empty()) clauses.push_back(make_clause(std::move(part)));
  }
  return clauses;
}

std::optional<std::size_t> find_phrase(const Clause& c, std::string_view phrase,
                                       std::size_t from = 0) {
  const auto words = text::split(phrase, ' ');
  if (words.size() > c.tokens.size()) return std::nullopt;
  for (std::size_t i = from; i + words.size() <= c.tokens.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < words.size() && ok; ++j) ok = c.tokens[i + j] == words[j];
    if (ok) return i;
  }
  return std::nullopt;
}

bool has_phrase(const Clause& c, std::string_view phrase) {
  return c.padded.find(" " + std::string(phrase) + " ") != std::string::npos;
}

bool any_phrase(const std::vector<Clause>& clauses, const std::vector<std::string>& phrases) {
  for (const auto& c : clauses) {
    for (const auto& p : phrases) {
      if (has_phrase(c, p)) return true;
    }
  }
  return false;
}

bool negated_at(const Clause& c, std::size_t token) {
  for (std::size_t i = 0; i < token; ++i) {
    const auto& t = c.tokens[i];
    if (kNegators.count(t)) return true;
    if (t == "than" && i > 0 && c.tokens[i - 1] == "other") return true;
    if (t == "but" && i > 0 && c.tokens[i - 1] == "anything") return true;
  }
  return false;
}

bool clause_has_phrase(const Clause& c, const std::vector<std::string>& phrases) {
  return std::any_of(phrases.begin(), phrases.end(),
                     [&](const std::string& p) { return has_phrase(c, p); });
}

bool clause_has_any(const Clause& c, const std::set<std::string>& words) {
  return std::any_of(c.tokens.begin(), c.tokens.end(),
                     [&](const std::string& t) { return words.count(t) > 0; });
}

// Positive mention of any phrase, ignoring negated occurrences.
bool positive_phrase(const std::vector<Clause>& clauses, const std::vector<std::string>& phrases) {
  for (const auto& c : clauses) {
    for (const auto& p : phrases) {
      for (auto at = find_phrase(c, p); at; at = find_phrase(c, p, *at + 1)) {
        if (!negated_at(c, *at)) return true;
      }
    }
  }
  return false;
}

// Scans lexicon phrases longest first so "coffee shop" claims its tokens
// before "coffee" can.
struct Hit {
  std::string value;
  bool negative;
};

class Scanner {
 public:
  explicit Scanner(const std::vector<Clause>& clauses) : clauses_(clauses) {
    used_.resize(clauses.size());
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      used_[i].assign(clauses[i].tokens.size(), false);
    }
  }

  std::vector<Hit> scan(const std::vector<std::pair<std::string, std::string>>& lexicon) {
    auto sorted = lexicon;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return std::count(a.first.begin(), a.first.end(), ' ') >
             std::count(b.first.begin(), b.first.end(), ' ');
    });
    std::vector<std::pair<Mention, Hit>> found;
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      const Clause& c = clauses_[ci];
      for (const auto& [phrase, value] : sorted) {
        const std::size_t len = std::count(phrase.begin(), phrase.end(), ' ') + 1;
        for (auto at = find_phrase(c, phrase); at; at = find_phrase(c, phrase, *at + 1)) {
          if (claimed(ci, *at, len)) continue;
          claim(ci, *at, len);
          found.push_back({{ci, *at, len}, {value, negated_at(c, *at)}});
        }
      }
    }
    // Report in reading order.
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
      return std::tie(a.first.clause, a.first.token) < std::tie(b.first.clause, b.first.token);
    });
    std::vector<Hit> hits;
    for (auto& f : found) hits.push_back(std::move(f.second));
    return hits;
  }

  void claim_phrases(const std::vector<std::string>& phrases) {
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      for (const auto& p : phrases) {
        const std::size_t len = std::count(p.begin(), p.end(), ' ') + 1;
        for (auto at = find_phrase(clauses_[ci], p); at; at = find_phrase(clauses_[ci], p, *at + 1)) {
          claim(ci, *at, len);
        }
      }
    }
  }

 private:
  bool claimed(std::size_t ci, std::size_t at, std::size_t len) const {
    for (std::size_t i = at; i < at + len; ++i) {
      if (used_[ci][i]) return true;
    }
    return false;
  }
  void claim(std::size_t ci, std::size_t at, std::size_t len) {
    for (std::size_t i = at; i < at + len; ++i) used_[ci][i] = true;
  }

  std::vector<Clause> clauses_;
  std::vector<std::vector<bool>> used_;
};

// ---------------------------------------------------------------------------
// Numbers and money

std::optional<double> number_at(const std::vector<std::string>& tokens, std::size_t i,
                                std::size_t* consumed) {
  std::string t = tokens[i];
  if (!t.empty() && t.front() == '$') t.erase(0, 1);
  if (!t.empty() && std::all_of(t.begin(), t.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
      })) {
    *consumed = 1;
    try {
      return std::stod(t);
    } catch (...) {
      return std::nullopt;
    }
  }
  auto it = kNumberWords.find(t);
  if (it == kNumberWords.end()) return std::nullopt;
  double value = it->second;
  *consumed = 1;
  // "twenty five"
  if (value >= 20 && value < 100 && i + 1 < tokens.size()) {
    auto unit = kNumberWords.find(tokens[i + 1]);
    if (unit != kNumberWords.end() && unit->second < 10) {
      value += unit->second;
      *consumed = 2;
    }
  }
  return value;
}

enum class Bound { exact, upper, lower };

struct Amount {
  double value;
  Bound bound;
};

std::optional<Amount> find_amount(const Clause& c, bool price_context) {
  const auto& t = c.tokens;
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::size_t used = 0;
    auto value = number_at(t, i, &used);
    if (!value) continue;
    const bool dollar_sign = t[i].front() == '$';
    const std::size_t next = i + used;
    const bool currency_word =
        next < t.size() && (t[next] == "dollars" || t[next] == "dollar" || t[next] == "bucks" ||
                            t[next] == "usd");
    if (!dollar_sign && !currency_word && !price_context) continue;

    Bound bound = Bound::exact;
    auto before = [&](std::size_t back) -> std::string {
      return i >= back ? t[i - back] : std::string();
    };
    const std::string b1 = before(1), b2 = before(2);
    if (b1 == "under" || b1 == "below" || b1 == "within" || (b2 == "less" && b1 == "than") ||
        (b2 == "at" && b1 == "most") || (b2 == "up" && b1 == "to") ||
        (b2 == "lower" && b1 == "than") || (b2 == "cheaper" && b1 == "than")) {
      bound = Bound::upper;
    } else if (b1 == "over" || b1 == "above" || (b2 == "more" && b1 == "than") ||
               (b2 == "at" && b1 == "least") || (b2 == "higher" && b1 == "than")) {
      bound = Bound::lower;
    }
    return Amount{*value, bound};
  }
  return std::nullopt;
}

std::vector<std::string> price_levels(const Amount& a, const PriceThresholds& th) {
  std::vector<std::string> out;
  switch (a.bound) {
    case Bound::exact:
      if (a.value < th.cheap_below) {
        out.push_back("cheap");
      } else if (a.value > th.expensive_above) {
        out.push_back("expensive");
      } else {
        out.push_back("moderate");
      }
      break;
    case Bound::upper:
      // Every band that has prices under the bound.
      out.push_back("cheap");
      if (a.value > th.cheap_below) out.push_back("moderate");
      if (a.value > th.expensive_above) out.push_back("expensive");
      break;
    case Bound::lower:
      if (a.value < th.cheap_below) out.push_back("cheap");
      if (a.value < th.expensive_above) out.push_back("moderate");
      out.push_back("expensive");
      break;
  }
  return out;
}

std::optional<std::string> stars_level(const Clause& c) {
  for (std::size_t i = 0; i < c.tokens.size(); ++i) {
    std::size_t used = 0;
    auto v = number_at(c.tokens, i, &used);
    if (!v) continue;
    const std::size_t next = i + used;
    if (next >= c.tokens.size()) continue;
    const auto& unit = c.tokens[next];
    if (unit != "stars" && unit != "star" && unit != "out") continue;
    if (*v >= 4) return "high";
    if (*v >= 3) return "average";
    return "low";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

class PredicateList {
 public:
  void add(const std::string& name, const std::vector<std::string>& values) {
    for (auto& p : preds_) {
      if (p.name == name) {
        for (const auto& v : values) append(p, v);
        return;
      }
    }
    Predicate p{name, {}};
    for (const auto& v : values) append(p, v);
    preds_.push_back(std::move(p));
  }
  void add_flag(const std::string& name) {
    for (const auto& p : preds_) {
      if (p.name == name) return;
    }
    preds_.push_back({name, {}});
  }
  bool has(std::string_view name) const {
    return std::any_of(preds_.begin(), preds_.end(),
                       [&](const Predicate& p) { return p.name == name; });
  }
  bool empty() const { return preds_.empty(); }
  std::vector<Predicate> take() { return std::move(preds_); }

 private:
  static void append(Predicate& p, const std::string& v) {
    Value value = normalize_value(v);
    if (std::find(p.args.begin(), p.args.end(), value) == p.args.end()) p.args.push_back(value);
  }
  std::vector<Predicate> preds_;
};

std::optional<HistoryRef> history_reference(const std::vector<Clause>& clauses) {
  if (!any_phrase(clauses, kHistoryCue)) return std::nullopt;
  for (const auto& c : clauses) {
    for (const auto& t : c.tokens) {
      if (t == "first" || t == "1st") return HistoryRef::first();
      if (t == "last" || t == "latest" || t == "previous") return HistoryRef::last();
      auto it = kOrdinals.find(t);
      if (it != kOrdinals.end()) return HistoryRef::nth(it->second);
    }
  }
  if (any_phrase(clauses, {"most recent", "you just"})) return HistoryRef::last();
  return std::nullopt;
}

std::string history_arg(const HistoryRef& ref) {
  switch (ref.kind) {
    case HistoryRef::Kind::first:
      return "first";
    case HistoryRef::Kind::last:
      return "last";
    case HistoryRef::Kind::index:
      return std::to_string(ref.index);
  }
  return "last";
}

// Parser predicate name for an attribute.
std::string predicate_name(std::string_view attribute) {
  if (attribute == "name") return "restaurant-name";
  if (attribute == "family friendly") return "family-friendly";
  return std::string(attribute);
}

std::optional<std::string> mentioned_attribute(const std::vector<Clause>& clauses) {
  for (const auto& c : clauses) {
    if (clause_has_any(c, kRatingContext)) return "customer rating";
    if (clause_has_any(c, kPriceContext)) return "price range";
    if (clause_has_any(c, {"food", "cuisine", "cuisines", "dishes"})) return "food type";
  }
  return std::nullopt;
}

}  // namespace

RuleParser::RuleParser(PriceThresholds thresholds) : thresholds_(thresholds) {}

ParseResult RuleParser::parse(std::string_view utterance, const ParseContext& ctx) {
  return rule_parse(utterance, ctx, thresholds_);
}

ParseResult rule_parse(std::string_view utterance, const ParseContext& ctx,
                       PriceThresholds thresholds) {
  const auto clauses = split_clauses(utterance);
  const std::string asked = ctx.last_bot_question ? ctx.last_bot_question->attribute : "";

  if (auto ref = history_reference(clauses)) {
    return {Label::content, {Predicate{"view_history", {Value::concrete(history_arg(*ref))}}}};
  }

  PredicateList out;
  Scanner scanner(clauses);
  // Multi-word phrases that would otherwise be read as values.
  scanner.claim_phrases({"coffee shop", "coffee shops"});

  const bool another = positive_phrase(clauses, kAnotherOption);
  if (another) out.add_flag("another_option");
  if (!another && positive_phrase(clauses, kNameQuery)) out.add("restaurant-name", {"query"});

  // Food type: drink venues, cuisines.
  if (positive_phrase(clauses, kDrinkVenuePhrases)) out.add("food type", kDrinkFoodTypes);
  std::vector<std::string> disliked;
  for (const auto& hit : scanner.scan(kCuisines)) {
    if (hit.negative) {
      disliked.push_back(hit.value);
    } else {
      out.add("food type", {hit.value});
    }
  }

  // Establishment.
  scanner = Scanner(clauses);
  for (const auto& hit : scanner.scan(kVenues)) {
    if (hit.negative) {
      disliked.push_back(hit.value);
    } else {
      out.add("establishment", {hit.value});
    }
  }
  if (positive_phrase(clauses, kMealPhrases)) out.add("establishment", {"restaurant"});

  // Price.
  for (const auto& c : clauses) {
    if (clause_has_phrase(c, kNoPreference)) continue;
    const bool price_context = clause_has_any(c, kPriceContext) || asked == "price range";
    const bool rating_context = clause_has_any(c, kRatingContext);
    Scanner local({c});
    for (const auto& hit : local.scan(kPriceWords)) {
      if (hit.negative) {
        disliked.push_back(hit.value == "average" ? "moderate" : hit.value);
      } else {
        out.add("price range", {hit.value});
      }
    }
    if (price_context && !rating_context) {
      for (const auto& hit : local.scan(kLevelWords)) {
        if (hit.value == "low" || hit.value == "average" || hit.value == "high") {
          if (!hit.negative) out.add("price range", {hit.value});
        }
      }
    }
    if (auto amount = find_amount(c, price_context)) {
      out.add("price range", price_levels(*amount, thresholds));
    }
  }

  // Customer rating.
  for (const auto& c : clauses) {
    const bool rating_context = clause_has_any(c, kRatingContext) ||
                                (asked == "customer rating" && !clause_has_any(c, kPriceContext));
    if (!rating_context || clause_has_phrase(c, kNoPreference)) continue;
    Scanner local({c});
    local.claim_phrases({"price", "average price", "low price", "high price"});
    for (const auto& hit : local.scan(kLevelWords)) {
      if (!hit.negative) {
        out.add("customer rating", {hit.value});
      } else {
        std::vector<std::string> rest;
        for (const char* level : {"low", "average", "high"}) {
          if (hit.value != level) rest.emplace_back(level);
        }
        out.add("customer rating", rest);
      }
    }
    if (auto stars = stars_level(c)) out.add("customer rating", {*stars});
  }

  // Family friendliness.
  for (const auto& c : clauses) {
    if (has_phrase(c, "adults only") || has_phrase(c, "adult only")) {
      out.add("family-friendly", {"no"});
      continue;
    }
    for (const auto& word : kFamilyWords) {
      if (auto at = find_phrase(c, word)) {
        out.add("family-friendly", {negated_at(c, *at) ? "no" : "yes"});
        break;
      }
    }
  }

  // Likes and dislikes that need commonsense.
  scanner = Scanner(clauses);
  scanner.claim_phrases({"coffee shop", "coffee shops"});
  std::vector<std::string> liked;
  for (const auto& hit : scanner.scan(kConcepts)) {
    (hit.negative ? disliked : liked).push_back(hit.value);
  }
  if (!liked.empty()) out.add("prefer", liked);
  if (!disliked.empty()) out.add("not_prefer", disliked);

  // Requested details.
  if (positive_phrase(clauses, kAddressQuery)) out.add("address", {"query"});
  if (positive_phrase(clauses, kPhoneQuery)) out.add("phone number", {"query"});
  if (positive_phrase(clauses, kDistanceQuery)) out.add("distance", {"query"});

  if (out.empty()) {
    const bool bare_no = clauses.size() >= 1 && clauses.front().tokens.size() == 1 &&
                         clauses.front().tokens.front() == "no" && clauses.size() <= 2;
    if (any_phrase(clauses, kNoPreference) || (bare_no && !asked.empty())) {
      auto attr = mentioned_attribute(clauses);
      if (!attr && !asked.empty()) attr = asked;
      if (attr) out.add(predicate_name(*attr), {"any"});
    }
  }

  if (!out.empty()) return {Label::content, out.take()};
  if (any_phrase(clauses, kThanks)) return {Label::thank, {}};
  return {Label::irrelevant, {}};
}

}  // namespace concierge
