// Copyright 2026 The gpopt Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gpopt: run experiments, the paper benchmark suite and the bound diagnostics.
//
//   gpopt run --config exp.cfg --out results/
//   gpopt bench --suite paper --out bench/ --seed 7
//   gpopt diagnose --suite bounds --out diag/
//
// Exit status: 0 success, 1 configuration/usage/I/O error, 2 numerical failure.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gpopt/config.hpp"
#include "gpopt/errors.hpp"
#include "gpopt/log.hpp"
#include "gpopt/suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> horizon;
  std::size_t threads = 0;
};

void AddOverrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--trials", o.trials, "Number of trials");
  cmd->add_option("--horizon", o.horizon, "Horizon T");
  cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GP sequential optimization experiments"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

  std::string config_path;
  std::string out_dir;
  std::string suite;
  Overrides run_o;
  Overrides bench_o;
  Overrides diag_o;

  CLI::App* run = app.add_subcommand("run", "Run one experiment from a config file");
  run->add_option("--config", config_path, "key = value config file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  AddOverrides(run, run_o);

  CLI::App* bench = app.add_subcommand("bench", "Every paper task with gp_mi, gp_ucb and ei");
  bench->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember({"paper"}));
  bench->add_option("--out", out_dir, "Output directory")->required();
  AddOverrides(bench, bench_o);

  CLI::App* diagnose = app.add_subcommand("diagnose", "Empirical checks of the regret bounds");
  diagnose->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember({"bounds"}));
  diagnose->add_option("--out", out_dir, "Output directory")->required();
  AddOverrides(diagnose, diag_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (verbose) gpopt::SetLogLevel(gpopt::LogLevel::kInfo);

  try {
    if (run->parsed()) {
      gpopt::ExperimentConfig config = gpopt::LoadConfig(config_path);
      if (run_o.seed) config.master_seed = *run_o.seed;
      if (run_o.trials) config.trials = *run_o.trials;
      if (run_o.horizon) config.horizon = *run_o.horizon;
      if (run_o.threads) config.threads = run_o.threads;
      const gpopt::RunSummary s = gpopt::RunAndExport(config, out_dir);
      std::cout << "run: " << s.trials << " trials, " << s.failed << " failed -> " << out_dir << "\n";
      return s.failed == s.trials && s.trials > 0 ? kExitNumerical : kExitOk;
    }
    if (bench->parsed()) {
      gpopt::BenchOptions options;
      if (bench_o.seed) options.seed = *bench_o.seed;
      if (bench_o.trials) options.trials = *bench_o.trials;
      if (bench_o.horizon) options.horizon = *bench_o.horizon;
      options.threads = bench_o.threads;
      const gpopt::RunSummary s = gpopt::RunBenchSuite(options, out_dir);
      std::cout << "bench: " << s.trials << " trials, " << s.failed << " failed -> " << out_dir << "\n";
      return kExitOk;
    }
    gpopt::BoundsOptions options;
    if (diag_o.seed) options.seed = *diag_o.seed;
    options.trials = diag_o.trials;
    options.horizon = diag_o.horizon;
    options.threads = diag_o.threads;
    for (const auto& gate : gpopt::RunBoundsSuite(options, out_dir)) {
      std::cout << (gate.passed ? "PASS " : "FAIL ") << gate.name << ": " << gate.detail << "\n";
    }
    return kExitOk;
  } catch (const gpopt::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    // Config, input, usage and I/O errors alike.
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
