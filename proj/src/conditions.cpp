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

#include "aqc/conditions.hpp"

#include "aqc/csv.hpp"
#include "aqc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace aqc {

namespace {

using cd = std::complex<double>;

// Hdot in the instantaneous eigenbasis, one k x k block per grid point.
struct CouplingTable {
  std::vector<ComplexMatrix> hdot;
};

void require_states(const SpectrumTrace& trace) {
  if (trace.states.size() != trace.size() || trace.size() < 2) {
    throw std::invalid_argument("conditions: trace carries no eigenvectors");
  }
}

void require_level(const SpectrumTrace& trace, int level) {
  if (level < 0 || level >= trace.levels()) {
    throw std::out_of_range("conditions: level " + std::to_string(level) +
                            " is not tracked");
  }
}

ComplexMatrix derivative_block(const ParametrizedHamiltonian& family,
                               const SpectrumTrace& trace, std::size_t i,
                               double t_f) {
  const ComplexMatrix& v = trace.states[i];
  return v.adjoint() * (family.first_derivative(trace.s_grid[i]) * v) / t_f;
}

CouplingTable couplings(const ParametrizedHamiltonian& family,
                        const SpectrumTrace& trace, double t_f) {
  require_states(trace);
  if (!(t_f > 0.0)) throw std::invalid_argument("conditions: t_f must be > 0");
  CouplingTable table;
  table.hdot.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    table.hdot.push_back(derivative_block(family, trace, i, t_f));
  }
  return table;
}

double level_gap(const SpectrumTrace& trace, std::size_t i, int m, int n) {
  const auto row = static_cast<Eigen::Index>(i);
  return trace.energies(row, n) - trace.energies(row, m);
}

bool pair_is_degenerate(const ParametrizedHamiltonian& family,
                        const SpectrumTrace& trace, const LevelPair& p) {
  const double threshold = kDegeneracyThreshold * family.energy_scale();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (std::abs(level_gap(trace, i, p.m, p.n)) < threshold) return true;
  }
  return false;
}

void check_pairs(const SpectrumTrace& trace, const std::vector<LevelPair>& pairs) {
  for (const auto& p : pairs) {
    require_level(trace, p.m);
    require_level(trace, p.n);
    if (p.m == p.n) throw std::invalid_argument("conditions: pair with m == n");
  }
}

struct PairScan {
  ConditionValue best;
  int skipped = 0;
  int singular = 0;
};

PairScan scan_c1(const ParametrizedHamiltonian& family, const SpectrumTrace& trace,
                 const CouplingTable& table, const std::vector<LevelPair>& pairs) {
  PairScan scan;
  for (const auto& p : pairs) {
    if (pair_is_degenerate(family, trace, p)) {
      ++scan.skipped;
      continue;
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const double gap = level_gap(trace, i, p.m, p.n);
      const double v = std::abs(table.hdot[i](p.n, p.m)) / (gap * gap);
      if (v > scan.best.value) scan.best = {v, trace.s_grid[i], p};
    }
  }
  return scan;
}

PairScan scan_c2(const ParametrizedHamiltonian& family, const SpectrumTrace& trace,
                 const CouplingTable& table, const std::vector<LevelPair>& pairs) {
  PairScan scan;
  const std::size_t count = trace.size();
  const auto& s = trace.s_grid;
  std::vector<cd> x(count);
  std::vector<double> slope(count);
  for (const auto& p : pairs) {
    if (pair_is_degenerate(family, trace, p)) {
      ++scan.skipped;
      continue;
    }
    for (std::size_t i = 0; i < count; ++i) {
      const double gap = level_gap(trace, i, p.m, p.n);
      x[i] = table.hdot[i](p.n, p.m) / (gap * gap);
    }
    // |dX/ds|; integrating over s equals integrating |dX/dt| over t.
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = i + 1 == count ? i : i + 1;
      slope[i] = std::abs(x[hi] - x[lo]) / (s[hi] - s[lo]);
    }
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < count; ++i) {
      integral += 0.5 * (slope[i] + slope[i + 1]) * (s[i + 1] - s[i]);
    }
    if (integral > scan.best.value) scan.best = {integral, 0.0, p};
  }
  return scan;
}

PairScan scan_c3(const ParametrizedHamiltonian& family, double t_f,
                 const SpectrumTrace& trace, const CouplingTable& table,
                 const std::vector<LevelPair>& pairs, double* max_abs_delta) {
  PairScan scan;
  const double threshold = kDegeneracyThreshold * family.energy_scale();
  for (const auto& p : pairs) {
    if (pair_is_degenerate(family, trace, p)) {
      ++scan.skipped;
      continue;
    }
    const std::vector<double> delta = geometric_potential(trace, p.m, p.n, t_f);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      if (max_abs_delta) *max_abs_delta = std::max(*max_abs_delta, std::abs(delta[i]));
      const double gap_mn = -level_gap(trace, i, p.m, p.n);  // E_m - E_n
      const double denom = gap_mn + delta[i];
      if (std::abs(denom) < threshold) {
        ++scan.singular;
        continue;
      }
      const double v = std::abs(table.hdot[i](p.m, p.n) / gap_mn / denom);
      if (v > scan.best.value) scan.best = {v, trace.s_grid[i], p};
    }
  }
  return scan;
}

double max_norm(const ParametrizedHamiltonian& family, const SpectrumTrace& trace,
                bool second) {
  double best = 0.0;
  for (double s : trace.s_grid) {
    const ComplexMatrix d =
        second ? family.second_derivative(s) : family.first_derivative(s);
    const double norm = family.real_symmetric() ? spectral_norm(RealMatrix(d.real()))
                                                : spectral_norm(d);
    best = std::max(best, norm);
  }
  return best;
}

double c4_kernel(double hp, double hpp, double delta_min) {
  if (!(delta_min > 0.0)) {
    throw DegenerateSpectrumError("condition_c4: minimum gap must be positive");
  }
  return std::max(hp * hp * hp / std::pow(delta_min, 4),
                  hp * hpp / std::pow(delta_min, 3));
}

}  // namespace

std::vector<LevelPair> make_pairs(PairSet set, int levels) {
  std::vector<LevelPair> pairs;
  if (set == PairSet::ground_to_excited) {
    for (int n = 1; n < levels; ++n) pairs.push_back({0, n});
  } else {
    for (int m = 0; m < levels; ++m) {
      for (int n = m + 1; n < levels; ++n) pairs.push_back({m, n});
    }
  }
  return pairs;
}

std::complex<double> hdot_matrix_element(const ParametrizedHamiltonian& family,
                                         const SpectrumTrace& trace,
                                         std::size_t grid_index, int m, int n,
                                         double t_f) {
  require_states(trace);
  require_level(trace, m);
  require_level(trace, n);
  if (grid_index >= trace.size()) {
    throw std::out_of_range("hdot_matrix_element: grid index out of range");
  }
  const ComplexMatrix& v = trace.states[grid_index];
  return v.col(m).dot(family.first_derivative(trace.s_grid[grid_index]) * v.col(n)) /
         t_f;
}

std::vector<double> berry_connection(const SpectrumTrace& trace, int level,
                                     double t_f) {
  require_states(trace);
  require_level(trace, level);
  const std::size_t count = trace.size();
  std::vector<double> a(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == count ? i : i + 1;
    const auto& here = trace.states[i].col(level);
    const cd forward = here.dot(trace.states[hi].col(level));
    const cd backward = here.dot(trace.states[lo].col(level));
    // i <k|d_s k> ~ i (forward - backward) / ds; keep the real part.
    const double ds = trace.s_grid[hi] - trace.s_grid[lo];
    a[i] = -(forward - backward).imag() / ds / t_f;
  }
  return a;
}

std::vector<double> geometric_potential(const SpectrumTrace& trace, int m,
                                        int n, double t_f) {
  const std::vector<double> a_m = berry_connection(trace, m, t_f);
  const std::vector<double> a_n = berry_connection(trace, n, t_f);
  std::vector<double> delta(a_m.size());
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = a_n[i] - a_m[i];
  return delta;
}

ConditionValue condition_c1(const ParametrizedHamiltonian& family, double t_f,
                            const SpectrumTrace& trace,
                            const std::vector<LevelPair>& pairs) {
  check_pairs(trace, pairs);
  return scan_c1(family, trace, couplings(family, trace, t_f), pairs).best;
}

ConditionValue condition_c2(const ParametrizedHamiltonian& family, double t_f,
                            const SpectrumTrace& trace,
                            const std::vector<LevelPair>& pairs) {
  check_pairs(trace, pairs);
  return scan_c2(family, trace, couplings(family, trace, t_f), pairs).best;
}

ConditionValue condition_c3(const ParametrizedHamiltonian& family, double t_f,
                            const SpectrumTrace& trace,
                            const std::vector<LevelPair>& pairs) {
  check_pairs(trace, pairs);
  return scan_c3(family, t_f, trace, couplings(family, trace, t_f), pairs, nullptr)
      .best;
}

double condition_c4(const ParametrizedHamiltonian& family,
                    const SpectrumTrace& trace) {
  return c4_kernel(max_norm(family, trace, false), max_norm(family, trace, true),
                   trace.delta_min);
}

ConditionReport evaluate_conditions(const ParametrizedHamiltonian& family,
                                    double t_f, const SpectrumTrace& trace,
                                    PairSet pair_set) {
  const std::vector<LevelPair> pairs = make_pairs(pair_set, trace.levels());
  check_pairs(trace, pairs);
  const CouplingTable table = couplings(family, trace, t_f);

  ConditionReport report;
  report.pair_set = pair_set;
  report.grid_points = static_cast<int>(trace.size());
  report.delta_min = trace.delta_min;

  const PairScan c1 = scan_c1(family, trace, table, pairs);
  const PairScan c2 = scan_c2(family, trace, table, pairs);
  const PairScan c3 =
      scan_c3(family, t_f, trace, table, pairs, &report.max_abs_geometric_potential);
  report.c1 = c1.best.value;
  report.c1_s = c1.best.s;
  report.c1_pair = c1.best.pair;
  report.c2 = c2.best.value;
  report.c2_pair = c2.best.pair;
  report.c3 = c3.best.value;
  report.c3_s = c3.best.s;
  report.c3_pair = c3.best.pair;
  report.skipped_pairs = c1.skipped;
  report.singular_points = c3.singular;

  report.h_prime_norm = max_norm(family, trace, false);
  report.h_second_norm = max_norm(family, trace, true);
  report.c4 = c4_kernel(report.h_prime_norm, report.h_second_norm, trace.delta_min);
  return report;
}

ConditionReport evaluate_conditions(const ChainParams& params,
                                    const Schedule& sched,
                                    const ConditionOptions& options) {
  const IsingChainPath path(params, sched);
  const int levels =
      static_cast<int>(std::min<Eigen::Index>(options.levels, path.dim()));
  if (levels < 2) throw std::invalid_argument("conditions: need >= 2 levels");
  SpectrumTrace trace = trace_spectrum(path, options.grid_points, levels, true);
  const MinimumGap m = minimum_gap(trace, path);
  trace.delta_min = m.delta_min;
  trace.s_star = m.s_star;
  trace.refined = m.refined;
  return evaluate_conditions(path, sched.t_f(), trace, options.pair_set);
}

double running_time_bound(double c4, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("running_time_bound: delta must be > 0");
  return 1e5 / (delta * delta) * c4;
}

std::vector<ScatterRow> scatter_export(const ScatterInput& ideal,
                                       const std::vector<ScatterInput>& rows) {
  const double ref[4] = {ideal.report.c1, ideal.report.c2, ideal.report.c3,
                         ideal.report.c4};
  auto to_row = [&](long long index, const ScatterInput& in) {
    ScatterRow row{index, {in.report.c1, in.report.c2, in.report.c3, in.report.c4},
                   {}, in.p_s};
    for (int i = 0; i < 4; ++i) row.c_rel[i] = ref[i] > 0.0 ? row.c[i] / ref[i] : 0.0;
    return row;
  };
  std::vector<ScatterRow> out;
  out.reserve(rows.size() + 1);
  out.push_back(to_row(-1, ideal));
  for (const auto& r : rows) out.push_back(to_row(r.index, r));
  return out;
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterRow>& rows) {
  csv::write_row(out, {"index", "c1", "c2", "c3", "c4", "c1_rel", "c2_rel",
                       "c3_rel", "c4_rel", "ps"});
  for (const auto& r : rows) {
    std::vector<std::string> fields{std::to_string(r.index)};
    for (double c : r.c) fields.push_back(csv::format_real(c));
    for (double c : r.c_rel) fields.push_back(csv::format_real(c));
    fields.push_back(csv::format_real(r.p_s));
    csv::write_row(out, fields);
  }
}

}  // namespace aqc
