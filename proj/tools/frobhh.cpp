#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "frobhh/cli.hpp"

using namespace frobhh;

int main(int argc, char** argv) {
  CLI::App app{"Complete Hochschild cohomology of Frobenius algebras"};
  std::string command, input, window, bar_window;
  JobConfig cfg;
  app.add_option("command", command, "info | cohomology | eval | verify")
      ->required()
      ->check(CLI::IsMember({"info", "cohomology", "eval", "verify"}));
  app.add_option("--input,-i", input, "algebra file (JSON)")->required();
  app.add_option("--window,-w", window, "degree window lo:hi");
  app.add_option("--bar-window", bar_window, "bar-side window for --preset-resolution (default: --window)");
  app.add_option("--budget", cfg.budget, "cap on the size of any single cochain space");
  app.add_option("--seed", cfg.seed, "seed for random classes in verify");
  app.add_flag("--json", cfg.json, "machine-readable output");
  app.add_option("--expr,-e", cfg.expr, "expression for eval");
  app.add_flag("--preset-resolution", cfg.preset_resolution, "also compute through the periodic preset resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.command = command;
  try {
    std::ifstream in(input);
    if (!in) fail(ErrorKind::ParseError, "cannot read " + input);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg.input = parse_input(ss.str(), input);
    if (!window.empty()) cfg.window = parse_window(window);
    if (!bar_window.empty()) cfg.bar_window = parse_window(bar_window);
    if (command == "eval" && cfg.expr.empty()) fail(ErrorKind::ParseError, "eval needs --expr");
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.kind());
  }

  auto res = run_job(cfg);
  if (cfg.json)
    std::cout << res.report.dump(2) << "\n";
  else if (res.report.contains("error"))
    std::cerr << res.text;
  else
    std::cout << res.text;
  return res.exit_code;
}
