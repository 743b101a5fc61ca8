// Copyright 2026 The starglider-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment runner: starglider <frr|validate|multigs|assumptions|bench>.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "starglider/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"LEO grid routing laboratory"};
  app.require_subcommand(1);
  std::string config_path, out_path, mode;
  std::uint64_t seed = 0;
  int trials = -1, failures = -1;
  for (const char* name : {"frr", "validate", "multigs", "assumptions", "bench"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON experiment config")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--trials", trials, "trial count")->check(CLI::NonNegativeNumber);
    sub->add_option("--failures", failures, "failures per trial")
        ->check(CLI::Range(0, 3));
    sub->add_option("--mode", mode, "failure mode")
        ->check(CLI::IsMember({"simultaneous", "consecutive"}));
  }
  CLI11_PARSE(app, argc, argv);

  try {
    const std::string kind = app.get_subcommands().front()->get_name();
    starglider::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = starglider::LoadExperimentConfig(config_path);
    cfg.kind = starglider::ParseScenarioKind(kind);
    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--seed")) cfg.rng_seed = seed;
    if (trials >= 0) cfg.trials = trials;
    if (failures >= 0) cfg.failure_count = failures;
    if (!mode.empty()) cfg.failure_mode = starglider::ParseFailureMode(mode);
    if (!out_path.empty()) cfg.output_path = out_path;
    cfg.Validate();

    const std::string text = starglider::run_experiment(cfg);
    if (cfg.output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output_path, std::ios::binary);
      if (!out || !(out << text)) {
        std::cerr << "cannot write " << cfg.output_path << "\n";
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
