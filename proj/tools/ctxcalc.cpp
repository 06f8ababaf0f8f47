#include "ctxcalc/session.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <unistd.h>

int main(int argc, char** argv) {
  CLI::App app{"Context calculus and intensional stream calculator"};
  std::uint64_t seed = 0;
  bool json = false;
  std::string script;
  std::uint64_t budget = ctxcalc::streams::default_budget;
  app.add_option("--seed", seed, "Seed for the choice operator");
  app.add_flag("--json", json, "Print line-delimited JSON records");
  app.add_option("--script", script, "Run a script file instead of the interactive prompt");
  app.add_option("--budget", budget, "Demand limit for each stream query")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  ctxcalc::Session session(seed, json ? ctxcalc::OutputMode::json : ctxcalc::OutputMode::plain, budget);
  if (!script.empty()) return ctxcalc::run_script(session, script, std::cout, std::cerr);

  if (!isatty(STDIN_FILENO)) return ctxcalc::run_lines(session, std::cin, std::cout, std::cerr);

  std::string line;
  while (true) {
    std::cout << "ctx> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    try {
      if (!session.run_command(line, std::cout)) break;
    } catch (const ctxcalc::Error& e) {
      std::cerr << ctxcalc::render_error(e) << '\n';
    }
  }
  std::cout << '\n';
  return 0;
}
