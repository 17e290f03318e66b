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

#pragma once

#include "aqc/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace aqc {

inline constexpr double kDefaultTargetFidelity = 0.999975;

struct CalibrationOptions {
  double epsilon0 = kDefaultEpsilon0;
  double t_f_floor = 1.0;       // ns, first lattice point
  double t_f_cap = 1e6;         // ns
  // Upward search ratio. Fidelity oscillates in t_f; a coarse ratio can step
  // over the first window that meets the target.
  double growth_factor = 1.0905077326652577;  // 2^(1/8)
  double relative_resolution = 1e-3;
  double propagation_tol = 1e-8;
  int max_qubits = kDefaultMaxQubits;
  // Uniform ideal-instance values.
  double lambda = 1.0;
  double h = 5.0;
  double j = 2.5;
};

struct CalibrationRecord {
  int n_qubits = 0;
  double t_f = 0.0;               // ns
  double achieved_fidelity = 0.0;
  double target = kDefaultTargetFidelity;
  double delta_min = 0.0;         // rad/ns
  int steps = 0;                  // step count auto_propagate settled on

  bool operator==(const CalibrationRecord&) const = default;
};

// Smallest lattice t_f whose ideal-instance fidelity (auto_propagate) reaches
// target: geometric search from t_f_floor, then bisection of the last bracket to the
// relative resolution. Candidate durations are rounded to 12 significant
// digits so the persisted value reproduces the fidelity exactly. Throws
// ConvergenceError when the target is not reached below t_f_cap.
CalibrationRecord calibrate_tf(int n, double target = kDefaultTargetFidelity,
                               const CalibrationOptions& options = {});

std::vector<CalibrationRecord> calibration_table(
    const std::vector<int>& n_list, double target = kDefaultTargetFidelity,
    const CalibrationOptions& options = {});

// calibration.csv: "N,t_f_ns,fidelity,delta_min".
void write_calibration_csv(std::ostream& out,
                           const std::vector<CalibrationRecord>& records);
// Reads calibration.csv; target and steps are not persisted and come back
// as kDefaultTargetFidelity and 0.
std::vector<CalibrationRecord> read_calibration_csv(
    const std::filesystem::path& path);

// Rounds to 12 significant digits, the persisted precision.
double round_to_persisted(double value);

}  // namespace aqc
