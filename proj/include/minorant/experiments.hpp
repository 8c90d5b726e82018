#ifndef MINORANT_EXPERIMENTS_HPP
#define MINORANT_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "minorant/increments.hpp"
#include "minorant/stats.hpp"

namespace minorant {

// One experiment run: a law, an n grid, a replication count and a seed.
// Parsed from a single JSON document (see from_json / canonical_json).
struct ExperimentConfig {
  std::string experiment;
  IncrementLaw law = IncrementLaw::gaussian(0.0, 1.0);
  std::vector<std::uint64_t> n_grid;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  unsigned workers = 0;       // 0 = MINORANT_WORKERS env or hardware
  double ks_level = 0.01;     // fixed by contract

  static ExperimentConfig from_json(const std::string& text);
  std::string canonical_json() const;
  std::string digest() const;
};

const std::vector<std::string>& experiment_names();

struct Criterion {
  std::string name;
  std::string tag;  // serialized as "paper_ref" in summary.json
  bool pass = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
};

struct CsvRow {
  std::string statistic;
  std::uint64_t n = 0;
  double value = 0.0;
  double stderr_ = 0.0;
  int pass = -1;  // 1 pass, 0 fail, -1 n/a
};

struct NamedSample {
  std::string name;
  EmpiricalSample sample;
};

struct ExitReport {
  std::vector<Criterion> criteria;
  std::vector<CsvRow> rows;
  std::vector<NamedSample> samples;
  double runtime_seconds = 0.0;

  bool pass() const;
};

// Runs the experiment in memory (no filesystem access).
ExitReport run_experiment(const ExperimentConfig& config);

// Runs and writes results.csv, summary.json and raw sample files into
// config.output_dir. Returns the report; process exit status should be
// 0 iff report.pass().
ExitReport run(const ExperimentConfig& config);

// Human-readable description of an experiment: what is verified, the
// hypotheses, the acceptance criterion and default parameters.
std::string describe(const std::string& experiment);

IncrementLaw law_from_json(const std::string& text);
std::string law_to_json(const IncrementLaw& law);

// Walk-statistic jobs shared by experiments and the acceptance suite.
// All lengths are computed with streaming hulls (no path buffer).
double walk_minorant_excess(const IncrementLaw& law, std::uint64_t n,
                            RngStream& rng);  // L(minorant) - n
struct WalkLengths {
  double minorant = 0.0;
  double majorant = 0.0;
};
WalkLengths walk_lengths(const IncrementLaw& law, std::uint64_t n,
                         RngStream& rng);

// Single sampling stage seed: mixes the base seed with a stage label and up
// to two indices (e.g. grid position and repeat number).
std::uint64_t sub_seed(std::uint64_t base, const char* label,
                       std::uint64_t a = 0, std::uint64_t b = 0);

}  // namespace minorant

#endif  // MINORANT_EXPERIMENTS_HPP
