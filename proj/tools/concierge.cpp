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
// concierge repl | serve | eval

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "concierge/errors.hpp"
#include "concierge/evalharness.hpp"
#include "concierge/http_api.hpp"
#include "concierge/service.hpp"

namespace {

using namespace concierge;

struct Options {
  std::string kb;
  std::string parser = "rule";
  std::string style;
  std::string templates;
  std::string replay;
  std::string llm_url = LlmEndpoint{}.base_url;
  std::string llm_model = LlmEndpoint{}.model;
  std::string merge = "union";
  bool rephrase = false;
  bool show_state = false;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string persist;
  std::string corpus;
  bool json = false;
};

void add_backend_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--parser", o.parser, "Semantic parser backend")
      ->check(CLI::IsMember({"rule", "llm"}));
  cmd->add_option("--replay", o.replay, "Serve LLM completions from a JSON-lines recording");
  cmd->add_option("--llm-url", o.llm_url, "Completion endpoint base URL");
  cmd->add_option("--llm-model", o.llm_model, "Completion model name");
}

void add_session_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--kb", o.kb, "Knowledgebase (.json or .csv)")->required();
  cmd->add_option("--style", o.style, "Commonsense style table (JSON)");
  cmd->add_option("--templates", o.templates, "Reply templates (JSON)");
  cmd->add_option("--merge", o.merge, "How repeated requirements combine")
      ->check(CLI::IsMember({"union", "replace"}));
  cmd->add_flag("--rephrase", o.rephrase, "Reword replies through the LLM backend");
  add_backend_options(cmd, o);
}

std::shared_ptr<CompletionClient> completion_client(const Options& o) {
  if (!o.replay.empty()) {
    return std::make_shared<ReplayCompletionClient>(ReplayCompletionClient::load(o.replay));
  }
  LlmEndpoint endpoint;
  endpoint.base_url = o.llm_url;
  endpoint.model = o.llm_model;
  return std::make_shared<HttpCompletionClient>(endpoint_from_env(endpoint));
}

std::shared_ptr<SemanticParser> make_parser(const Options& o) {
  if (o.parser == "llm") return std::make_shared<LlmParser>(completion_client(o));
  return std::make_shared<RuleParser>();
}

ServiceConfig make_config(const Options& o) {
  ServiceConfig config;
  config.kb = std::make_shared<const Knowledgebase>(load_kb(o.kb));
  if (!o.style.empty()) config.style = StyleTable::load(o.style);
  if (!o.templates.empty()) config.templates = Templates::load(o.templates);
  config.parser = make_parser(o);
  if (o.rephrase) config.rephraser = std::make_shared<LlmRephraser>(completion_client(o));
  config.merge = o.merge == "replace" ? MergePolicy::replace_values : MergePolicy::union_values;
  if (!o.persist.empty()) config.persist_dir = o.persist;
  return config;
}

int run_repl(const Options& o) {
  ConciergeService service(make_config(o));
  const std::string id = service.create_session();
  std::cout << "Bot: " << service.transcript(id).front().text << std::endl;
  std::string line;
  while (std::cout << "You: " << std::flush, std::getline(std::cin, line)) {
    if (line == "/quit" || line == "/exit") break;
    if (line.empty()) continue;
    try {
      const TurnReply reply = service.post_message(id, line);
      std::cout << "Bot: " << reply.text << std::endl;
      if (o.show_state) std::cout << format_state(reply.state.requirements) << std::endl;
    } catch (const MessageRejected& e) {
      std::cout << "(" << e.what() << ")" << std::endl;
    }
  }
  return 0;
}

int run_serve(const Options& o) {
  ConciergeService service(make_config(o));
  serve(service, o.host, o.port);
  return 0;
}

int run_eval(const Options& o) {
  auto parser = make_parser(o);
  const CorpusReport report = run_corpus(std::filesystem::path(o.corpus), *parser);
  if (o.json) {
    std::cout << report.to_json().dump(2) << std::endl;
  } else {
    std::cout << fmt::format("examples {}  accuracy {:.4f}  precision {:.4f}  recall {:.4f}\n",
                             report.examples.size(), report.mean_accuracy, report.precision,
                             report.recall);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restaurant concierge dialog engine"};
  app.require_subcommand(1);
  Options o;
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log at info level");

  auto* repl = app.add_subcommand("repl", "Chat on stdin/stdout");
  add_session_options(repl, o);
  repl->add_flag("--show-state", o.show_state, "Print the requirement listing after each turn");

  auto* srv = app.add_subcommand("serve", "Run the HTTP API");
  add_session_options(srv, o);
  srv->add_option("--host", o.host, "Bind address");
  srv->add_option("--port", o.port, "Port")->check(CLI::Range(1, 65535));
  srv->add_option("--persist", o.persist, "Directory for session files");

  auto* eval = app.add_subcommand("eval", "Score a parser on a predicate corpus");
  eval->add_option("--corpus", o.corpus, "JSON-lines corpus")->required();
  eval->add_flag("--json", o.json, "Print the full report as JSON");
  add_backend_options(eval, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  spdlog::set_level(verbose ? spdlog::level::info : spdlog::level::warn);

  try {
    if (repl->parsed()) return run_repl(o);
    if (srv->parsed()) return run_serve(o);
    if (eval->parsed()) return run_eval(o);
  } catch (const Error& e) {
    std::cerr << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
