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

// Adiabaticity figures of merit evaluated on a gauge-aligned spectrum trace.
// Time derivatives use Hdot = H'(s) / t_f; hbar = 1. For a level pair (m, n):
//
//   C1 = max_s |Hdot_mn| / Delta_nm^2
//   C2 = int_0^t_f |d/dt (Hdot_nm / Delta_nm^2)| dt
//   C3 = max_s |(Hdot_mn / Delta_mn) / (Delta_mn + delta_nm)|
//   C4 = max(|H'|^3 / Delta_min^4, |H'| |H''| / Delta_min^3)
//
// with Delta_nm = E_n - E_m, delta_nm = A_n - A_m the difference of Berry
// connections A_k = i <k|d_t k>, and |O| = max_s of the spectral norm.
// C1..C3 take the maximum over the pair set.

#pragma once

#include "aqc/model.hpp"
#include "aqc/spectrum.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace aqc {

enum class PairSet {
  ground_to_excited,  // (0, n), 1 <= n < k
  all_tracked,        // every m < n < k
};

struct LevelPair {
  int m = 0;
  int n = 0;
  bool operator==(const LevelPair&) const = default;
};

std::vector<LevelPair> make_pairs(PairSet set, int levels);

struct ConditionOptions {
  int grid_points = kDefaultGridPoints;
  int levels = kDefaultTrackedLevels;
  PairSet pair_set = PairSet::ground_to_excited;
};

struct ConditionValue {
  double value = 0.0;
  double s = 0.0;       // grid location of the maximum (C1, C3)
  LevelPair pair;       // pair attaining the maximum
};

struct ConditionReport {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;  // ns
  double c1_s = 0.0;
  LevelPair c1_pair;
  double c3_s = 0.0;
  LevelPair c3_pair;
  LevelPair c2_pair;
  PairSet pair_set = PairSet::ground_to_excited;
  int grid_points = 0;
  double max_abs_geometric_potential = 0.0;
  double h_prime_norm = 0.0;   // max_s |H'(s)|
  double h_second_norm = 0.0;  // max_s |H''(s)|
  double delta_min = 0.0;
  int skipped_pairs = 0;       // degenerate somewhere on the grid
  int singular_points = 0;     // Delta_mn + delta_nm ~ 0 in C3
};

// <E_m|Hdot|E_n> at a trace grid point. Throws std::out_of_range for
// untracked levels and std::invalid_argument if the trace holds no states.
std::complex<double> hdot_matrix_element(const ParametrizedHamiltonian& family,
                                         const SpectrumTrace& trace,
                                         std::size_t grid_index, int m, int n,
                                         double t_f);

// A_k(s_i) = i <k|d_t k> on the grid (real part; the imaginary part is a
// normalization artefact that vanishes analytically). Centered differences,
// one-sided at the ends. Zero for real eigenvectors.
std::vector<double> berry_connection(const SpectrumTrace& trace, int level,
                                     double t_f);

// delta_nm(s_i) = A_n(s_i) - A_m(s_i).
std::vector<double> geometric_potential(const SpectrumTrace& trace, int m,
                                        int n, double t_f);

ConditionValue condition_c1(const ParametrizedHamiltonian& family, double t_f,
                            const SpectrumTrace& trace,
                            const std::vector<LevelPair>& pairs);
ConditionValue condition_c2(const ParametrizedHamiltonian& family, double t_f,
                            const SpectrumTrace& trace,
                            const std::vector<LevelPair>& pairs);
ConditionValue condition_c3(const ParametrizedHamiltonian& family, double t_f,
                            const SpectrumTrace& trace,
                            const std::vector<LevelPair>& pairs);
// Bracketed kernel of the running-time bound; uses trace.delta_min.
double condition_c4(const ParametrizedHamiltonian& family,
                    const SpectrumTrace& trace);

// All four on one trace, with bookkeeping.
ConditionReport evaluate_conditions(const ParametrizedHamiltonian& family,
                                    double t_f, const SpectrumTrace& trace,
                                    PairSet pair_set);

// Traces the chain on options.grid_points and evaluates every condition.
ConditionReport evaluate_conditions(const ChainParams& params,
                                    const Schedule& sched,
                                    const ConditionOptions& options = {});

// Running-time bound t_f >= 1e5 / delta^2 * C4 for a target distance delta.
double running_time_bound(double c4, double delta);

struct ScatterInput {
  long long index;
  ConditionReport report;
  double p_s;
};

struct ScatterRow {
  long long index;  // -1 for the ideal instance
  double c[4];
  double c_rel[4];  // c_i / c_i(ideal)
  double p_s;
};

// Ideal row first, then the instances in the given order.
std::vector<ScatterRow> scatter_export(const ScatterInput& ideal,
                                       const std::vector<ScatterInput>& rows);

// scatter.csv: "index,c1,c2,c3,c4,c1_rel,c2_rel,c3_rel,c4_rel,ps".
void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows);

}  // namespace aqc
