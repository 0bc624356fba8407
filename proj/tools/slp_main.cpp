#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "slp/pipeline.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(4);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_common(CLI::App* cmd, slp::RunConfig& cfg, std::string& file,
                std::string& format) {
  cmd->add_option("file", file, "program file (.slp), or - for stdin")
      ->required();
  cmd->add_flag("--dump-ground", cfg.dumpGround,
                "print the hyperresolution fixed point");
  cmd->add_flag("--dump-residual", cfg.dumpResidual,
                "print the residual program");
  cmd->add_flag("--dump-defix", cfg.dumpDefix,
                "print the surviving default valuations");
  cmd->add_flag("--possible", cfg.possible, "report disjunctive answers");
  cmd->add_flag("--oracle", cfg.oracle,
                "cross-check against the brute-force engines (small programs)");
  cmd->add_flag("--timings", cfg.timings, "report per-stage timings");
  cmd->add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--monitor", cfg.monitorExprs,
                  "additional monitored default atom, e.g. 'not(a & b)'");
  cmd->add_option("--max-critneg", cfg.limits.maxCritNeg,
                  "limit on critical default atoms (default 24)");
  cmd->add_option("--max-facts", cfg.limits.maxFacts,
                  "limit on stored conditional facts (default 1000000)");
}

int finish(const slp::RunConfig& cfg) {
  try {
    auto rep = slp::run(cfg, std::cout, std::cerr);
    return rep.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"query-answering interpreter for super logic programs"};
  app.require_subcommand(1);

  slp::RunConfig cfg;
  std::string file, format = "text", queryText;

  if (const char* env = std::getenv("SLP_MAX_CRITNEG"))
    cfg.limits.maxCritNeg = std::atoi(env);

  auto* solve = app.add_subcommand("solve", "evaluate a program and its queries");
  add_common(solve, cfg, file, format);

  auto* query = app.add_subcommand("query", "evaluate one query against a program");
  add_common(query, cfg, file, format);
  query->add_option("text", queryText, "query body, e.g. 'p(X), not r(X).'")
      ->required();

  auto* repl = app.add_subcommand("repl", "interactive queries against a cached parse");
  add_common(repl, cfg, file, format);

  CLI11_PARSE(app, argc, argv);
  cfg.json = format == "json";

  if (solve->parsed()) {
    cfg.source = read_input(file);
    return finish(cfg);
  }
  if (query->parsed()) {
    cfg.source = read_input(file);
    if (!queryText.empty() && queryText[0] == '?')
      queryText = queryText.substr(1);
    if (queryText.empty() || queryText.back() != '.') queryText += ".";
    cfg.extraQueries.push_back(queryText);
    return finish(cfg);
  }

  // repl: cached parse, one evaluation per query line
  cfg.source = read_input(file);
  try {
    slp::Session session(cfg.source, cfg.limits);
    std::string line;
    std::cout << "?- " << std::flush;
    while (std::getline(std::cin, line)) {
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) {
        std::cout << "?- " << std::flush;
        continue;
      }
      std::string q = line.substr(first);
      if (q == "quit." || q == "quit" || q == "exit." || q == "exit") break;
      if (q[0] == '?') q = q.substr(1);
      if (q.back() != '.') q += ".";
      try {
        auto ans = session.ask(q);
        if (ans.inconsistentCompletion) {
          std::cout << "inconsistent-completion\n";
        } else if (ans.definite.size() == 1 && ans.definite[0].empty()) {
          std::cout << "yes\n";
        } else if (ans.definite.empty()) {
          std::cout << "no\n";
        } else {
          for (const auto& t : ans.definite) {
            std::cout << "(";
            for (size_t i = 0; i < t.size(); ++i)
              std::cout << (i ? ", " : "")
                        << session.vocabulary().symbols.text(t[i]);
            std::cout << ")\n";
          }
        }
      } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << "\n";
      }
      std::cout << "?- " << std::flush;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
