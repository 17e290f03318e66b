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

// Experiment configuration. Text format, one "key = value" per line:
//
//   # comment
//   n_list = 2, 3, 4, 5, 6, 8
//   sigma_list = [0, 0.05, 0.1]
//   [disorder.lambda]
//   targets = lambda
//   conditions_n = 5
//
// Lists accept optional brackets. Top-level keys must precede the first
// section. Each [disorder.NAME] section is one disorder experiment; its
// sigma_list defaults to the top-level one. Without sections the three
// single-parameter experiments lambda, h and j are used, with conditions at
// N = 5 for lambda. Unknown or repeated keys are errors.

#pragma once

#include "aqc/calibration.hpp"
#include "aqc/disorder.hpp"
#include "aqc/model.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace aqc {

enum class Profile { paper, ci };

// "paper" or "ci"; throws ConfigError.
Profile parse_profile(const std::string& name);

struct DisorderSection {
  std::string name;
  ParamTargets targets;
  std::vector<double> sigma_list;
  std::vector<int> conditions_n;  // chains that also get C1..C4 at max sigma

  bool operator==(const DisorderSection&) const = default;
};

struct ExperimentConfig {
  std::vector<int> n_list{2, 3, 4, 5, 6, 8};
  double lambda = 1.0;
  double h = 5.0;
  double j = 2.5;
  double epsilon0 = kDefaultEpsilon0;
  double target_fidelity = kDefaultTargetFidelity;
  std::vector<double> sigma_list{0.0, 0.02, 0.04, 0.06, 0.08, 0.10};
  int ensemble_size = 1024;
  std::uint64_t master_seed = 1729;
  int spectrum_grid = 1001;
  int ensemble_grid = 201;
  int condition_grid = 1001;
  int levels = 6;
  int population_samples = 201;
  double propagation_tol = 1e-8;
  int ensemble_steps = 0;  // 0: auto_propagate on the ideal chain per N
  int workers = 1;
  std::string output = "aqc-out";
  int histogram_bins = 20;
  int max_qubits = kDefaultMaxQubits;
  std::vector<DisorderSection> disorder;

  bool operator==(const ExperimentConfig&) const = default;

  ChainParams ideal(int n) const { return ChainParams::uniform(n, lambda, h, j); }
};

// Defaults for a profile, disorder sections filled in.
ExperimentConfig default_config(Profile profile = Profile::paper);

// Parses text on top of default_config(profile) and validates. Throws
// ConfigError naming the offending key (or "line N" for syntax errors).
ExperimentConfig parse_config(const std::string& text,
                              Profile profile = Profile::paper);
ExperimentConfig load_config(const std::filesystem::path& path,
                             Profile profile = Profile::paper);

// Every field explicitly, reals with 17 significant digits, so that
// parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// Throws ConfigError on the first violated constraint.
void validate_config(const ExperimentConfig& config);

}  // namespace aqc
