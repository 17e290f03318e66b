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

#include "aqc/calibration.hpp"

#include "aqc/csv.hpp"
#include "aqc/errors.hpp"
#include "aqc/propagation.hpp"
#include "aqc/spectrum.hpp"

#include <ostream>
#include <string>

namespace aqc {

double round_to_persisted(double value) {
  return csv::parse_real(csv::format_real(value));
}

CalibrationRecord calibrate_tf(int n, double target,
                               const CalibrationOptions& options) {
  if (n < 2 || n > options.max_qubits) {
    throw std::invalid_argument("calibrate_tf: n must lie in [2, " +
                                std::to_string(options.max_qubits) + "]");
  }
  if (!(target >= 0.0 && target < 1.0)) {
    throw std::invalid_argument("calibrate_tf: target must lie in [0, 1)");
  }
  if (!(options.growth_factor > 1.0)) {
    throw std::invalid_argument("calibrate_tf: growth_factor must exceed 1");
  }
  const ChainParams ideal =
      ChainParams::uniform(n, options.lambda, options.h, options.j);

  struct Probe {
    double t_f;
    EvolutionResult result;
  };
  auto evaluate = [&](double t_f) {
    const IsingChainPath path(ideal, Schedule(t_f, options.epsilon0),
                              options.max_qubits);
    return Probe{t_f, auto_propagate(path, options.propagation_tol)};
  };

  Probe hi = evaluate(round_to_persisted(options.t_f_floor));
  double lo_t = 0.0;
  while (hi.result.success_probability < target) {
    lo_t = hi.t_f;
    const double next = round_to_persisted(options.growth_factor * hi.t_f);
    if (next > options.t_f_cap) {
      throw ConvergenceError("calibrate_tf: target " + std::to_string(target) +
                             " unreachable below t_f cap for N = " +
                             std::to_string(n));
    }
    hi = evaluate(next);
  }
  if (lo_t > 0.0) {
    while ((hi.t_f - lo_t) > options.relative_resolution * hi.t_f) {
      const double mid = round_to_persisted(0.5 * (lo_t + hi.t_f));
      if (mid <= lo_t || mid >= hi.t_f) break;
      Probe probe = evaluate(mid);
      if (probe.result.success_probability >= target) {
        hi = std::move(probe);
      } else {
        lo_t = mid;
      }
    }
  }

  const SpectrumTrace trace =
      gap_trace(ideal, Schedule(hi.t_f, options.epsilon0), kDefaultGridPoints, 2);
  return {n, hi.t_f, hi.result.success_probability, target, trace.delta_min,
          hi.result.steps_used};
}

std::vector<CalibrationRecord> calibration_table(
    const std::vector<int>& n_list, double target,
    const CalibrationOptions& options) {
  std::vector<CalibrationRecord> table;
  table.reserve(n_list.size());
  for (int n : n_list) table.push_back(calibrate_tf(n, target, options));
  return table;
}

void write_calibration_csv(std::ostream& out,
                           const std::vector<CalibrationRecord>& records) {
  csv::write_row(out, {"N", "t_f_ns", "fidelity", "delta_min"});
  for (const auto& r : records) {
    csv::write_row(out, {std::to_string(r.n_qubits), csv::format_real(r.t_f),
                         csv::format_real(r.achieved_fidelity),
                         csv::format_real(r.delta_min)});
  }
}

std::vector<CalibrationRecord> read_calibration_csv(
    const std::filesystem::path& path) {
  const csv::Table table = csv::read_table(path);
  if (table.header != std::vector<std::string>{"N", "t_f_ns", "fidelity", "delta_min"}) {
    throw std::runtime_error(path.string() + ": unexpected calibration header");
  }
  std::vector<CalibrationRecord> records;
  for (const auto& row : table.rows) {
    if (row.size() != 4) throw std::runtime_error(path.string() + ": bad row width");
    CalibrationRecord r;
    r.n_qubits = static_cast<int>(csv::parse_integer(row[0]));
    r.t_f = csv::parse_real(row[1]);
    r.achieved_fidelity = csv::parse_real(row[2]);
    r.delta_min = csv::parse_real(row[3]);
    records.push_back(r);
  }
  return records;
}

}  // namespace aqc
