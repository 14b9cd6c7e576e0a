// groundsmith command-line entry point.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "groundsmith/groundsmith.hpp"
#include "groundsmith/http.hpp"

using namespace groundsmith;
namespace fs = std::filesystem;

namespace {

#ifndef GROUNDSMITH_DATA_DIR
#define GROUNDSMITH_DATA_DIR "data"
#endif

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidState:
    case ErrorKind::CorruptLibrary:
    case ErrorKind::NoValidExample:
    case ErrorKind::InsufficientVocabulary:
    case ErrorKind::NameCollision:
    case ErrorKind::SyntaxError:
    case ErrorKind::EmptyInput:
    case ErrorKind::MalformedBody:
    case ErrorKind::Io:
      return 2;
    default:
      return 3;
  }
}

void report(const Error& e) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(e.kind());
  j["detail"] = e.detail();
  std::cerr << "error: " << j.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

WorldConfig load_world(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, path + ": " + e.what());
  }
  return j.get<WorldConfig>();
}

std::vector<CorpusRecord> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  return read_jsonl(in);
}

std::string default_world() { return std::string(GROUNDSMITH_DATA_DIR) + "/worlds/toy_4x1.json"; }
std::string default_library() { return std::string(GROUNDSMITH_DATA_DIR) + "/library.json"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural-language task specifications to grounded LTL and plans"};
  app.require_subcommand(1);

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "Generate a seen or unseen corpus as JSON lines");
  std::string split_s, domain_s, out_path;
  std::uint64_t seed = 0;
  bool homonyms = false;
  gen->add_option("--split", split_s, "seen | unseen")->required();
  gen->add_option("--domain", domain_s, "manipulation | navigation")->required();
  gen->add_option("--seed", seed, "Sampler seed")->capture_default_str();
  gen->add_option("--out", out_path, "Output .jsonl path")->required();
  gen->add_flag("--homonyms", homonyms, "Allow homonym words as fills");

  // gen-world
  auto* genw = app.add_subcommand("gen-world", "Write the world a corpus split is grounded in");
  std::string gw_split, gw_out;
  genw->add_option("--split", gw_split, "seen | unseen")->required();
  genw->add_option("--out", gw_out, "Output world JSON")->required();

  // train
  auto* train = app.add_subcommand("train", "Learn one template per task class");
  std::vector<std::string> corpora;
  std::string world_path, lib_out, train_domain;
  train->add_option("--corpus", corpora, "Training corpus (repeatable)")->required();
  train->add_option("--world", world_path, "World the corpus is grounded in")->required();
  train->add_option("--out", lib_out, "Output library JSON")->required();
  train->add_option("--domain", train_domain, "Only learn this domain's classes");
  std::size_t train_subset = 0;
  std::uint64_t train_seed = 0;
  train->add_option("--subset", train_subset, "Train on a seeded subset of this many records");
  train->add_option("--seed", train_seed, "Seed for --subset");

  // eval
  auto* eval = app.add_subcommand("eval", "Score the pipeline on a corpus");
  std::string eval_corpus, eval_lib, eval_world, metrics_path, hist_path;
  bool no_pos = false, fault = false, gold_cq = false;
  eval->add_option("--corpus", eval_corpus)->required();
  eval->add_option("--library", eval_lib)->required();
  eval->add_option("--world", eval_world)->required();
  eval->add_option("--metrics", metrics_path, "Metrics CSV path")->required();
  eval->add_option("--histogram", hist_path, "Error histogram JSON (default: <metrics>.errors.json)");
  eval->add_flag("--no-pos", no_pos, "Ground without part-of-speech hints");
  eval->add_flag("--pickup-as-noun", fault, "Inject the pickup-as-noun tagger fault");
  eval->add_flag("--gold-cq", gold_cq, "Use gold contextual queries instead of the front-end");

  // plan
  auto* planc = app.add_subcommand("plan", "Ground a command and plan it");
  std::string plan_world = default_world(), plan_lib = default_library(), text;
  bool as_json = false, plan_no_pos = false;
  int horizon = kDefaultHorizon;
  planc->add_option("--world", plan_world)->capture_default_str();
  planc->add_option("--library", plan_lib)->capture_default_str();
  planc->add_option("--text", text)->required();
  planc->add_option("--horizon", horizon)->capture_default_str();
  planc->add_flag("--json", as_json, "Print the result as JSON");
  planc->add_flag("--no-pos", plan_no_pos, "Ground without part-of-speech hints");

  // parse
  auto* parse = app.add_subcommand("parse", "Tag a command and extract its contextual query");
  std::string parse_world = default_world(), parse_text;
  bool parse_fault = false;
  parse->add_option("--world", parse_world)->capture_default_str();
  parse->add_option("--text", parse_text)->required();
  parse->add_flag("--pickup-as-noun", parse_fault, "Inject the pickup-as-noun tagger fault");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  std::vector<std::string> serve_worlds;
  std::string serve_lib = default_library(), host = "127.0.0.1";
  int port = 0;
  serve->add_option("--world", serve_worlds, "World JSON (repeatable; id is the file stem)");
  serve->add_option("--library", serve_lib)->capture_default_str();
  serve->add_option("--port", port, "Port (default: $GROUNDSMITH_PORT or 8080)");
  serve->add_option("--host", host)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      auto split = parse_split(split_s);
      auto domain = parse_domain(domain_s);
      if (!split || !domain) {
        std::cerr << "error: {\"kind\":\"Usage\",\"detail\":\"bad --split or --domain\"}\n";
        return 1;
      }
      auto records = generate_corpus(*split, *domain, seed, {homonyms});
      std::ostringstream ss;
      write_jsonl(records, ss);
      write_file(out_path, ss.str());
      std::cout << records.size() << " records -> " << out_path << "\n";
    } else if (*genw) {
      auto split = parse_split(gw_split);
      if (!split) {
        std::cerr << "error: {\"kind\":\"Usage\",\"detail\":\"bad --split\"}\n";
        return 1;
      }
      write_file(gw_out, nlohmann::json(corpus_world_config(*split)).dump(2) + "\n");
    } else if (*train) {
      GroundedWorld gw(load_world(world_path));
      std::vector<CorpusRecord> records;
      for (const auto& c : corpora) {
        auto part = load_corpus(c);
        records.insert(records.end(), part.begin(), part.end());
      }
      std::vector<TaskClass> classes(kAllTaskClasses.begin(), kAllTaskClasses.end());
      if (!train_domain.empty()) {
        auto d = parse_domain(train_domain);
        if (!d) {
          std::cerr << "error: {\"kind\":\"Usage\",\"detail\":\"bad --domain\"}\n";
          return 1;
        }
        classes = domain_classes(*d);
      }
      if (train_subset) records = sample_subset(records, train_subset, train_seed);
      auto lib = train_templates(records, *gw.registry, *gw.lexicon, classes);
      save_library(lib, lib_out);
      for (const auto& [c, t] : lib.templates())
        std::cout << task_class_name(c) << ": " << format_lifted(t.lifted) << "\n";
    } else if (*eval) {
      GroundedWorld gw(load_world(eval_world));
      auto lib = load_library(eval_lib);
      auto records = load_corpus(eval_corpus);
      auto m = evaluate(records, lib, *gw.lexicon, *gw.registry, {!no_pos, fault, gold_cq});
      auto csv = metrics_csv(m);
      write_file(metrics_path, csv);
      if (hist_path.empty()) hist_path = fs::path(metrics_path).replace_extension(".errors.json").string();
      write_file(hist_path, metrics_histogram(m).dump(2) + "\n");
      std::cout << csv;
    } else if (*planc) {
      GroundedWorld gw(load_world(plan_world));
      auto lib = load_library(plan_lib);
      auto cq = extract_cq(text, *gw.lexicon, {!plan_no_pos, false});
      Formula f = instantiate(lib.at(cq.descriptor), cq, *gw.registry, *gw.lexicon);
      PlanOptions opt;
      opt.horizon = horizon;
      opt.gamma = gw.world->config().gamma;
      auto r = plan(*gw.world, gw.world->initial_state(), f, *gw.registry, opt);
      if (as_json) {
        nlohmann::ordered_json j;
        j["cq"] = nlohmann::json(cq);
        j["ltl"] = format_ltl(f);
        j["plan"] = plan_to_json(*gw.world, r);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "cq: " << to_string(cq) << "\n";
        std::cout << "ltl: " << format_ltl(f) << "\n";
        std::cout << "plan (" << r.actions.size() << " steps):";
        for (const auto& a : r.actions) std::cout << " " << to_string(a);
        std::cout << "\naccepted: " << (r.accepted ? "true" : "false") << "\n";
        std::cout << "product states: " << r.product_states << ", wall time: " << r.wall_time_ms << " ms\n";
      }
    } else if (*parse) {
      GroundedWorld gw(load_world(parse_world));
      FrontendOptions fo{true, parse_fault};
      for (const auto& t : tag_tokens(parse_text, *gw.lexicon, fo))
        std::cout << t.token << "/" << pos_name(t.pos) << " ";
      std::cout << "\n";
      std::cout << to_string(extract_cq(parse_text, *gw.lexicon, fo)) << "\n";
    } else if (*serve) {
      if (port == 0) {
        const char* env = std::getenv("GROUNDSMITH_PORT");
        port = env ? std::atoi(env) : 8080;
      }
      if (serve_worlds.empty()) serve_worlds.push_back(default_world());
      ServiceConfig cfg;
      for (const auto& p : serve_worlds) cfg.worlds.emplace(fs::path(p).stem().string(), load_world(p));
      cfg.library = load_library(serve_lib);
      Service service(std::move(cfg));
      httplib::Server server;
      bind_routes(server, service);
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!server.listen(host, port)) throw Error(ErrorKind::Io, "cannot listen on port " + std::to_string(port));
    }
  } catch (const Error& e) {
    report(e);
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    report(Error(ErrorKind::Io, e.what()));
    return 2;
  }
  return 0;
}
