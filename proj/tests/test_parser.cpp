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
#include <map>

#include "concierge/errors.hpp"
#include "concierge/parse_frontend.hpp"
#include "concierge/service.hpp"
#include "doctest.h"
#include "golden.hpp"
#include "support.hpp"

using namespace concierge;

namespace {

std::string parse_text(std::string_view utterance, const ParseContext& ctx = {}) {
  const auto r = rule_parse(utterance, ctx);
  if (r.label != Label::content) return std::string(label_name(r.label));
  return serialize_term_list(r.predicates);
}

ParseContext asked(const std::string& attribute) {
  ParseContext ctx;
  ctx.last_bot_question = BotQuestion{attribute, render_question(attribute)};
  return ctx;
}

class ScriptedClient : public CompletionClient {
 public:
  explicit ScriptedClient(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string complete(const CompletionRequest& request) override {
    prompts.push_back(request.prompt);
    if (calls_ >= replies_.size()) throw BackendUnavailable("no more replies");
    const std::string r = replies_[calls_++];
    if (r == "<timeout>") throw BackendUnavailable("timed out");
    return r;
  }
  std::vector<std::string> prompts;

 private:
  std::vector<std::string> replies_;
  std::size_t calls_ = 0;
};

}  // namespace

TEST_CASE("rule parser on the reference utterances") {
  CHECK(parse_text("Can you recommend me a restaurant?") == "restaurant-name(query), establishment(restaurant)");
  CHECK(parse_text("I can try any food except curry.") == "not_prefer(curry)");
  CHECK(parse_text("Less than fifteen dollars.", asked("price range")) == "price range(cheap)");
  CHECK(parse_text("No, I'm not looking for a specific rating score.", asked("customer rating")) ==
        "customer rating(any)");
  CHECK(parse_text("Sounds nice. Can you give me its address?") == "address(query)");
  CHECK(parse_text("Thank you for your help.") == "thank");
  CHECK(parse_text("Do you know where can I find a place to drink?") ==
        "restaurant-name(query), food type(coffee, tea, bubble tea, juice, bar)");
  CHECK(parse_text("At low price, please.", asked("price range")) == "price range(cheap)");
  CHECK(parse_text("I'd prefer those with good reviews.", asked("customer rating")) == "customer rating(high)");
  CHECK(parse_text("Sorry I don't drink coffee.") == "not_prefer(coffee)");
  CHECK(parse_text("Maybe a bar suits me better.") == "establishment(bar)");
  CHECK(parse_text("I'm looking for somewhere serving pizza. I want to have dinner with my family.") ==
        "restaurant-name(query), establishment(restaurant), family-friendly(yes), prefer(pizza)");
  CHECK(parse_text("How about change the price to average?") == "price range(average)");
  CHECK(parse_text("Any other recommendations?") == "another_option");
  CHECK(parse_text("Cool. Thanks.") == "thank");
}

TEST_CASE("rule parser lexicon") {
  CHECK(parse_text("I'd like some spicy noodles, where is the place?") == "prefer(spicy, noodle), address(query)");
  CHECK(parse_text("Can you find a cheap Indian or Thai restaurant with high ratings?") ==
        "restaurant-name(query), food type(indian, thai), establishment(restaurant), price range(cheap), "
        "customer rating(high)");
  CHECK(parse_text("Nothing Italian, but Thai is fine.") == "food type(thai), not_prefer(italian)");
  CHECK(parse_text("I don't want it too expensive.") == "not_prefer(expensive)");
  CHECK(parse_text("Under $25 per person.") == "price range(cheap, moderate)");
  CHECK(parse_text("More than 50 dollars is ok.") == "price range(expensive)");
  CHECK(parse_text("Around twenty dollars.") == "price range(moderate)");
  CHECK(parse_text("At least 4 stars please.") == "customer rating(high)");
  CHECK(parse_text("Not a low rated place.") == "customer rating(average, high)");
  CHECK(parse_text("Adults only, no kids.") == "family-friendly(no)");
  CHECK(parse_text("Somewhere I can take my kids.") == "restaurant-name(query), family-friendly(yes)");
  CHECK(parse_text("What's their phone number?") == "phone number(query)");
  CHECK(parse_text("How far is it?") == "distance(query)");
  CHECK(parse_text("I want a coffee shop.") == "establishment(coffee shop)");
  CHECK(parse_text("I don't want a bar.") == "not_prefer(bar)");
  CHECK(parse_text("Let's grab a beer.") == "prefer(beer)");
  CHECK(parse_text("Can you show me the restaurant you recommended at first?") == "view_history(first)");
  CHECK(parse_text("Go back to the second one you suggested.") == "view_history(2)");
  CHECK(parse_text("What was the previous one?") == "view_history(last)");
  CHECK(parse_text("Do you have another one?") == "another_option");
  CHECK(parse_text("What's the weather tomorrow?") == "irrelevant");
  CHECK(parse_text("Hello!") == "irrelevant");
  CHECK(parse_text("Thanks a lot") == "thank");
}

TEST_CASE("no-preference answers need a target") {
  CHECK(parse_text("I don't care.", asked("price range")) == "price range(any)");
  CHECK(parse_text("No.", asked("food type")) == "food type(any)");
  CHECK(parse_text("Any rating is okay.") == "customer rating(any)");
  CHECK(parse_text("I don't care.") == "irrelevant");
}

TEST_CASE("rating words only count in a rating context") {
  CHECK(parse_text("That's great!") == "irrelevant");
  CHECK(parse_text("Something good.", asked("customer rating")) == "customer rating(high)");
  CHECK(parse_text("Low please.", asked("price range")) == "price range(low)");
}

TEST_CASE("normalize_parse routes predicates") {
  auto norm = [](std::string_view completion) { return normalize_parse(read_completion(completion), {}); };

  auto a = norm("restaurant-name(query), food type(indian, thai), price range(average), family-friendly(true)");
  CHECK(a.label == Label::content);
  CHECK(a.requirements == std::vector<Requirement>{require("name", {"query"}), require("food type", {"indian", "thai"}),
                                                   require("price range", {"moderate"}),
                                                   require("family friendly", {"yes"})});

  auto b = norm("not_prefer(curry, italian, expensive, bar), prefer(pizza)");
  CHECK(b.requirements == std::vector<Requirement>{require(kNotPreferAttribute, {"curry"}),
                                                   not_require("food type", {"italian"}),
                                                   not_require("price range", {"expensive"}),
                                                   not_require("establishment", {"bar"}),
                                                   require(kPreferAttribute, {"pizza"})});

  auto c = norm("customer rating(any), price range(less than £20)");
  CHECK(c.no_preference == std::vector<std::string>{"customer rating"});
  CHECK(c.requirements == std::vector<Requirement>{require("price range", {"cheap"})});

  auto d = norm("food type(query, thai), food type(indian)");
  CHECK(d.requirements == std::vector<Requirement>{require("food type", {"thai", "indian"})});

  CHECK(norm("another_option").special == Special{AnotherOption{}});
  CHECK(norm("view_history(first)").special == Special{HistoryRef::first()});
  CHECK(norm("view_history(3)").special == Special{HistoryRef::nth(3)});
  CHECK(norm("thank").label == Label::thank);
  CHECK(normalize_parse({Label::content, {Predicate{"near", {Value::concrete("riverside")}}}}, {}).label ==
        Label::irrelevant);
}

TEST_CASE("attribute value synonyms") {
  auto v = [](const char* attr, const char* value) { return normalize_attribute_value(attr, normalize_value(value)).text(); };
  CHECK(v("price range", "average") == "moderate");
  CHECK(v("price range", "high") == "expensive");
  CHECK(v("price range", "£20-25") == "moderate");
  CHECK(v("customer rating", "5 out of 5") == "high");
  CHECK(v("customer rating", "average") == "average");
  CHECK(v("family friendly", "false") == "no");
  CHECK(v("food type", "average") == "average");
  CHECK(normalize_attribute_value("price range", Value::query()).is_query());
}

TEST_CASE("prompt layout") {
  const auto& examples = default_prompt_examples();
  CHECK(examples.size() == 11);
  const std::string prompt = build_prompt(examples, "I want Thai food.", {});
  std::size_t marks = 0;
  for (auto p = prompt.find("###"); p != std::string::npos; p = prompt.find("###", p + 3)) ++marks;
  CHECK(marks == 12);
  CHECK(prompt.size() >= 12);
  CHECK(prompt.substr(prompt.size() - 22) == "\nI want Thai food. ###");
  CHECK(prompt.find("Bot: Are you looking for a place with a particular customer rating? User: Any rating is okay. ###") !=
        std::string::npos);

  const std::string with_q = build_prompt(examples, "cheap", asked("price range"));
  CHECK(with_q.find("Bot: Are you looking for a certain price range? User: cheap ###") != std::string::npos);

  // Every example completion reads back.
  for (const auto& ex : examples) CHECK_NOTHROW(read_completion(ex.predicates));
}

TEST_CASE("completion reading") {
  CHECK(read_completion(" thank").label == Label::thank);
  CHECK(read_completion("irrelevant\n### more").label == Label::irrelevant);
  CHECK(read_completion("\n price range(cheap)").predicates.size() == 1);
  CHECK(read_completion("price range(cheap).").predicates.size() == 1);
  CHECK(read_completion("thank, price range(cheap)").label == Label::content);
  CHECK_THROWS_AS(read_completion(""), MalformedTerm);
  CHECK_THROWS_AS(read_completion("Sure! Here you go"), MalformedTerm);
  CHECK_THROWS_AS(read_completion("price range(cheap"), MalformedTerm);
}

TEST_CASE("llm_parse retries once, then gives up") {
  ScriptedClient ok({"<timeout>", "food type(thai)"});
  auto r = llm_parse("Thai please", {}, ok);
  CHECK(r.label == Label::content);
  CHECK(ok.prompts.size() == 2);
  CHECK(ok.prompts[0] == ok.prompts[1]);

  ScriptedClient bad({"garbage words", "<timeout>", "food type(thai)"});
  CHECK(llm_parse("Thai please", {}, bad).label == Label::irrelevant);
  CHECK(bad.prompts.size() == 2);

  CHECK_THROWS_AS(LlmParser(nullptr), BackendUnavailable);
}

TEST_CASE("replay client") {
  auto client = ReplayCompletionClient::load(testsupport::fixture_path("golden_replay.jsonl"));
  CHECK(client.complete({"prompt", "Cool. Thanks."}) == " thank");
  CHECK(client.calls() == 1);
  CHECK_THROWS_AS(client.complete({"prompt", "unrecorded"}), BackendUnavailable);
  CHECK_THROWS_AS(ReplayCompletionClient::load("/nonexistent/replay.jsonl"), BackendUnavailable);
}

// Both backends must hand the reasoner the same requirements for every
// reference utterance, with the context each was asked in.
TEST_CASE("rule and replayed LLM backends agree after normalization") {
  auto replay = std::make_shared<ReplayCompletionClient>(
      ReplayCompletionClient::load(testsupport::fixture_path("golden_replay.jsonl")));
  LlmParser llm(replay);
  RuleParser rule;

  ServiceConfig config;
  config.kb = std::make_shared<const Knowledgebase>(testsupport::fixture_kb());
  for (const auto* script : golden::kAll) {
    Session session;
    for (const auto& turn : script->turns) {
      CAPTURE(turn);
      const auto from_rule = normalize_parse(rule.parse(turn, session.ctx), session.ctx);
      const auto from_llm = normalize_parse(llm.parse(turn, session.ctx), session.ctx);
      CHECK(from_rule.label == from_llm.label);
      CHECK(same_requirements(from_rule.requirements, from_llm.requirements));
      CHECK(from_rule.no_preference == from_llm.no_preference);
      CHECK(from_rule.special == from_llm.special);
      run_turn(session, turn, config);
    }
  }
  CHECK(replay->calls() == 19);
}
