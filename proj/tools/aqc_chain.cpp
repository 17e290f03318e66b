// Copyright 2026 The aqc-chain Authors
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

#include "aqc/config.hpp"
#include "aqc/errors.hpp"
#include "aqc/pipeline.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string profile = "paper";
};

aqc::ExperimentConfig resolve(const Flags& flags) {
  const aqc::Profile profile = aqc::parse_profile(flags.profile);
  aqc::ExperimentConfig config = flags.config.empty()
                                     ? aqc::default_config(profile)
                                     : aqc::load_config(flags.config, profile);
  if (const char* env = std::getenv("AQC_WORKERS"); env && *env) {
    const std::string text(env);
    int workers = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), workers);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw aqc::ConfigError("AQC_WORKERS", "expected an integer, got '" + text + "'");
    }
    config.workers = workers;
  }
  if (flags.workers) config.workers = *flags.workers;
  if (flags.seed) config.master_seed = *flags.seed;
  if (!flags.out.empty()) config.output = flags.out;
  aqc::validate_config(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic evolution of disordered Ising chains"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config, "Experiment configuration file");
  app.add_option("--out", flags.out, "Output directory");
  app.add_option("--seed", flags.seed, "Master seed for disorder ensembles");
  app.add_option("--workers", flags.workers, "Worker threads (overrides AQC_WORKERS)");
  app.add_option("--profile", flags.profile, "Default profile")
      ->check(CLI::IsMember({"paper", "ci"}));

  const std::pair<const char*, aqc::Stage> stages[] = {
      {"calibrate", aqc::Stage::calibrate},
      {"spectrum", aqc::Stage::spectrum},
      {"evolve", aqc::Stage::evolve},
      {"ensemble", aqc::Stage::ensemble},
      {"conditions", aqc::Stage::conditions},
      {"report", aqc::Stage::report},
      {"run", aqc::Stage::run},
  };
  const char* help[] = {
      "Calibrate t_f per chain length",
      "Write ideal-chain gap traces",
      "Write eigenbasis populations along the ideal evolution",
      "Run the disorder ensembles",
      "Run only the ensembles that carry C1..C4",
      "Validate outputs and summarize",
      "All stages in order",
  };
  std::optional<aqc::Stage> chosen;
  for (std::size_t i = 0; i < std::size(stages); ++i) {
    const auto stage = stages[i].second;
    app.add_subcommand(stages[i].first, help[i])->callback([&chosen, stage] {
      chosen = stage;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? aqc::kExitOk : aqc::kExitConfig;
  }

  aqc::ExperimentConfig config;
  try {
    config = resolve(flags);
  } catch (const aqc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return aqc::kExitConfig;
  }
  return aqc::run_stage(*chosen, config, std::cout, std::cerr);
}
