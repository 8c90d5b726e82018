// Batch front-end: configuration-driven experiments with CSV/JSON outputs.
//
//   minorant-cli run --config cfg.json [--seed N] [--workers N] [--output DIR]
//   minorant-cli describe EXPERIMENT
//   minorant-cli list
//
// Exit status of `run` is 0 iff every criterion of the experiment passed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "minorant/experiments.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convex minorant length experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::uint64_t seed_override = 0;
  bool seed_set = false;
  unsigned workers = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment config");
  run_cmd->add_option("--config", config_path, "JSON config file")->required();
  run_cmd->add_option("--seed", seed_override, "override config seed")
      ->each([&seed_set](const std::string&) { seed_set = true; });
  run_cmd->add_option("--workers", workers, "worker threads (0 = auto)");
  run_cmd->add_option("--output", output_dir, "override output directory");

  std::string experiment;
  CLI::App* describe_cmd =
      app.add_subcommand("describe", "explain an experiment");
  describe_cmd->add_option("experiment", experiment, "experiment name")
      ->required();

  CLI::App* list_cmd = app.add_subcommand("list", "list experiment names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) {
      for (const auto& name : minorant::experiment_names()) {
        std::puts(name.c_str());
      }
      return 0;
    }
    if (describe_cmd->parsed()) {
      std::puts(minorant::describe(experiment).c_str());
      return 0;
    }
    minorant::ExperimentConfig cfg =
        minorant::ExperimentConfig::from_json(slurp(config_path));
    if (seed_set) cfg.seed = seed_override;
    if (workers > 0) cfg.workers = workers;
    if (!output_dir.empty()) cfg.output_dir = output_dir;

    const minorant::ExitReport report = minorant::run(cfg);
    for (const minorant::Criterion& c : report.criteria) {
      std::printf("[%s] %s statistic=%.6g threshold=%.6g\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.statistic,
                  c.threshold);
    }
    std::printf("%s: %zu/%zu criteria passed in %.1fs; outputs in %s\n",
                cfg.experiment.c_str(),
                static_cast<std::size_t>(
                    std::count_if(report.criteria.begin(),
                                  report.criteria.end(),
                                  [](const auto& c) { return c.pass; })),
                report.criteria.size(), report.runtime_seconds,
                cfg.output_dir.c_str());
    return report.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
