// systematic-k run <config.json> [--seed N] [--out report.json]
// systematic-k selftest

#include "sysk/acceptance.hpp"
#include "sysk/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Exact K_0 experiments for G-systematic rings"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out_path, "write the JSON report here");

  std::uint64_t self_seed = 20240601;
  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--seed", self_seed, "seed for the sampled checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*self) {
    bool ok = true;
    for (const auto& c : sysk::acceptance::criteria()) {
      auto r = sysk::acceptance::run_criterion(c, self_seed);
      ok = ok && r.passed;
      std::printf("%s criterion %d: %s (%.2fs)%s%s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                  r.passed ? "" : " -- ", r.first_failure().c_str());
    }
    return ok ? 0 : 1;
  }

  sysk::cli::Outcome outcome;
  try {
    outcome = sysk::cli::run(sysk::io::read_json_file(config_path), seed);
  } catch (const sysk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  std::cout << sysk::cli::human(outcome.report);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << outcome.report.dump(2) << "\n";
  }
  return outcome.exit_code;
}
