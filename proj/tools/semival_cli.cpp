#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "semival/commands.hpp"
#include "semival/errors.hpp"
#include "semival/version.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  bool oracle = false;
  int threads = 1;
};

void add_common(CLI::App* sub, Options& opt, bool with_oracle) {
  sub->add_option("--config", opt.config_path, "JSON run configuration")
      ->required();
  sub->add_option("--out", opt.out_dir, "output directory (overrides config)");
  sub->add_option("--threads", opt.threads,
                  "worker threads; affects speed only");
  if (with_oracle) {
    sub->add_flag("--oracle", opt.oracle,
                  "cross-check the result against brute force");
  }
}

int run(const std::string& command, const Options& opt) {
  semival::RunConfig cfg = semival::load_config(opt.config_path);
  if (opt.threads < 1) {
    throw semival::ConfigError("--threads must be >= 1");
  }
  std::string out_dir = opt.out_dir.empty() ? cfg.out_dir : opt.out_dir;
  semival::Json report;
  if (command == "value") {
    report = semival::cmd_value(cfg, out_dir);
  } else if (command == "range") {
    report = semival::cmd_range(cfg, out_dir);
  } else if (command == "game") {
    report = semival::cmd_game(cfg, out_dir, opt.oracle);
  } else {
    report = semival::cmd_filter_flips(cfg, out_dir);
  }
  std::cout << "wrote " << out_dir << "/report.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semivalue data valuation: exact and sampled semivalues, "
               "utility ambiguity, favorability gaming"};
  app.set_version_flag("--version", semival::kVersion);
  app.require_subcommand(1);

  Options opt;
  std::string command;
  auto* value = app.add_subcommand("value", "semivalues of the base utility");
  add_common(value, opt, false);
  value->callback([&] { command = "value"; });
  auto* range = app.add_subcommand(
      "range", "favorability spread over a candidate family");
  add_common(range, opt, false);
  range->callback([&] { command = "range"; });
  auto* game = app.add_subcommand(
      "game", "most and least favorable candidate utility");
  add_common(game, opt, true);
  game->callback([&] { command = "game"; });
  auto* flips = app.add_subcommand(
      "filter-flips", "points whose filter survival depends on the utility");
  add_common(flips, opt, false);
  flips->callback([&] { command = "filter-flips"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run(command, opt);
  } catch (const semival::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const semival::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const semival::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
