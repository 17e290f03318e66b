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

// Experiment orchestration. Artifacts under the output directory:
//
//   config.resolved, calibration.csv, ensemble_summary.csv,
//   ensemble_extra.csv, failures.csv, report.txt
//   N<k>/gap_trace.csv, N<k>/populations.csv
//   N<k>/instances_<name>_s<sigma>.csv, N<k>/dmin_hist_<name>_s<sigma>.csv
//   N<k>/scatter_<name>_s<sigma>.csv   (condition runs only)
//
// Stages after calibrate read calibration.csv back from disk. Every file is
// written by one thread after its results are complete.

#pragma once

#include "aqc/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// A stage cannot produce its artifacts (missing inputs, every instance of an
// ensemble failed, invalid outputs).
class SystemicFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Stage { calibrate, spectrum, evolve, ensemble, conditions, report, run };

// File-name fragment for a sigma value: "s0", "s0.05", ...
std::string sigma_tag(double sigma);

void write_resolved_config(const ExperimentConfig& config);

void stage_calibrate(const ExperimentConfig& config, std::ostream& log);
void stage_spectrum(const ExperimentConfig& config, std::ostream& log);
void stage_evolve(const ExperimentConfig& config, std::ostream& log);
// conditions_only restricts the sweep to (section, N in conditions_n, max
// sigma) and leaves the aggregate CSVs untouched.
void stage_ensemble(const ExperimentConfig& config, std::ostream& log,
                    bool conditions_only = false);
// Validates every artifact and writes report.txt; the text is also returned.
std::string stage_report(const ExperimentConfig& config);

// Schema problems found under an output directory; empty when valid.
std::vector<std::string> validate_outputs(const std::filesystem::path& out);

// Runs a stage and maps failures to exit codes: ConfigError -> 2, anything
// else -> 3. Messages go to log.
int run_stage(Stage stage, const ExperimentConfig& config, std::ostream& out,
              std::ostream& log);

}  // namespace aqc
