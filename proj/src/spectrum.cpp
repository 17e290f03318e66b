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

#include "aqc/spectrum.hpp"

#include "aqc/csv.hpp"
#include "aqc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace aqc {

namespace {

template <typename Matrix>
void check_hermitian(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("eigh_lowest: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-12 * scale)) {
    throw NotHermitianError("eigh_lowest: Hermiticity defect " +
                            std::to_string(defect));
  }
}

void check_levels(Eigen::Index dim, int k) {
  if (k < 1 || k > dim) {
    throw std::invalid_argument("eigh_lowest: k must lie in [1, dim]");
  }
}

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

RealVector lowest_values(const ParametrizedHamiltonian& family, double s, int k) {
  RealVector values;
  if (family.real_symmetric()) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(family.real_at(s),
                                                 Eigen::EigenvaluesOnly);
    values = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(family.at(s),
                                                    Eigen::EigenvaluesOnly);
    values = es.eigenvalues();
  }
  return values.head(std::min<Eigen::Index>(k, values.size()));
}

// Golden-section search of f on [a, b]; returns the best point seen, seeded
// with (x0, f0).
template <typename F>
std::pair<double, double> golden_section(F&& f, double a, double b, double x0,
                                         double f0, double tol) {
  double best_x = x0;
  double best_f = f0;
  auto consider = [&](double x, double fx) {
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  };
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c);
  double fd = f(d);
  consider(c, fc);
  consider(d, fd);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return {best_x, best_f};
}

std::vector<double> uniform_grid(int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  }
  grid.back() = 1.0;
  return grid;
}

MinimumGap refine_from_grid(const std::vector<double>& grid,
                            const std::vector<double>& gap,
                            const ParametrizedHamiltonian& family,
                            double s_tol) {
  const auto it = std::min_element(gap.begin(), gap.end());
  const auto i = static_cast<std::size_t>(it - gap.begin());
  if (i == 0 || i + 1 == gap.size()) {
    return {*it, grid[i], false};
  }
  auto f = [&](double s) { return instantaneous_gap(family, s); };
  const auto [s_star, delta] =
      golden_section(f, grid[i - 1], grid[i + 1], grid[i], *it, s_tol);
  return {delta, s_star, true};
}

}  // namespace

EigenPairs eigh_lowest(const ComplexMatrix& matrix, int k) {
  check_hermitian(matrix);
  check_levels(matrix.rows(), k);
  if (matrix.imag().cwiseAbs().maxCoeff() == 0.0) {
    return eigh_lowest(RealMatrix(matrix.real()), k);
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eigh_lowest: eigensolver did not converge");
  }
  return {es.eigenvalues().head(k), es.eigenvectors().leftCols(k)};
}

EigenPairs eigh_lowest(const RealMatrix& matrix, int k) {
  check_hermitian(matrix);
  check_levels(matrix.rows(), k);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(matrix);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eigh_lowest: eigensolver did not converge");
  }
  return {es.eigenvalues().head(k),
          es.eigenvectors().leftCols(k).cast<std::complex<double>>()};
}

double spectral_norm(const ComplexMatrix& matrix) {
  check_hermitian(matrix);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const RealMatrix& matrix) {
  check_hermitian(matrix);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

GaugeAlignment smooth_gauge(const ComplexMatrix& prev, const ComplexMatrix& curr,
                            double flag_threshold) {
  if (prev.rows() != curr.rows() || prev.cols() != curr.cols()) {
    throw std::invalid_argument("smooth_gauge: shape mismatch");
  }
  GaugeAlignment out{curr, {}, 1.0};
  for (Eigen::Index j = 0; j < curr.cols(); ++j) {
    const std::complex<double> overlap = prev.col(j).dot(curr.col(j));
    const double mag = std::abs(overlap);
    out.min_overlap = std::min(out.min_overlap, mag);
    if (mag < flag_threshold) out.flagged_levels.push_back(static_cast<int>(j));
    if (mag > 0.0) out.vectors.col(j) *= std::conj(overlap) / mag;
  }
  return out;
}

SpectrumTrace trace_spectrum(const ParametrizedHamiltonian& family,
                             int grid_points, int k, bool keep_states) {
  if (grid_points < 11) {
    throw std::invalid_argument("trace_spectrum: grid_points must be >= 11");
  }
  check_levels(family.dim(), k);
  SpectrumTrace trace;
  trace.s_grid = uniform_grid(grid_points);
  trace.energies.resize(grid_points, k);
  trace.gap.resize(static_cast<std::size_t>(grid_points));
  if (keep_states) trace.states.resize(static_cast<std::size_t>(grid_points));

  for (std::size_t i = 0; i < trace.s_grid.size(); ++i) {
    const double s = trace.s_grid[i];
    if (keep_states) {
      EigenPairs pairs = family.real_symmetric()
                             ? eigh_lowest(family.real_at(s), k)
                             : eigh_lowest(family.at(s), k);
      trace.energies.row(static_cast<Eigen::Index>(i)) = pairs.values.transpose();
      trace.states[i] = std::move(pairs.vectors);
    } else {
      trace.energies.row(static_cast<Eigen::Index>(i)) =
          lowest_values(family, s, k).transpose();
    }
  }

  const double threshold = kDegeneracyThreshold * family.energy_scale();
  for (std::size_t i = 0; i < trace.gap.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    trace.gap[i] = k > 1 ? trace.energies(row, 1) - trace.energies(row, 0) : 0.0;
    if (trace.gap[i] < threshold) trace.degenerate = true;
  }
  const auto it = std::min_element(trace.gap.begin(), trace.gap.end());
  trace.delta_min = *it;
  trace.s_star = trace.s_grid[static_cast<std::size_t>(it - trace.gap.begin())];

  if (keep_states) align_gauge(trace);
  return trace;
}

SpectrumTrace gap_trace(const ChainParams& params, const Schedule& sched,
                        int grid_points, int k) {
  const IsingChainPath path(params, sched);
  if (k == 0) {
    k = static_cast<int>(std::min<Eigen::Index>(path.dim(), kDefaultTrackedLevels));
  }
  SpectrumTrace trace = trace_spectrum(path, grid_points, k, true);
  if (!trace.degenerate) {
    const MinimumGap m = minimum_gap(trace, path);
    trace.delta_min = m.delta_min;
    trace.s_star = m.s_star;
    trace.refined = m.refined;
  }
  return trace;
}

void align_gauge(SpectrumTrace& trace) {
  trace.tracking_events.clear();
  for (std::size_t i = 1; i < trace.states.size(); ++i) {
    GaugeAlignment aligned = smooth_gauge(trace.states[i - 1], trace.states[i]);
    for (int level : aligned.flagged_levels) {
      const std::complex<double> ov =
          trace.states[i - 1].col(level).dot(aligned.vectors.col(level));
      trace.tracking_events.push_back({i, level, std::abs(ov)});
    }
    trace.states[i] = std::move(aligned.vectors);
  }
}

double instantaneous_gap(const ParametrizedHamiltonian& family, double s) {
  const RealVector values = lowest_values(family, s, 2);
  if (values.size() < 2) return 0.0;
  return values(1) - values(0);
}

MinimumGap minimum_gap(const SpectrumTrace& trace,
                       const ParametrizedHamiltonian& family, double s_tol) {
  if (trace.size() < 3) throw std::invalid_argument("minimum_gap: empty trace");
  if (trace.degenerate) {
    throw DegenerateSpectrumError(
        "minimum_gap: gap closes along the schedule (degenerate ground state)");
  }
  return refine_from_grid(trace.s_grid, trace.gap, family, s_tol);
}

MinimumGap minimum_gap(const SpectrumTrace& trace, const ChainParams& params,
                       const Schedule& sched, double s_tol) {
  const IsingChainPath path(params, sched);
  return minimum_gap(trace, path, s_tol);
}

MinimumGap locate_minimum_gap(const ParametrizedHamiltonian& family,
                              int grid_points, double s_tol) {
  if (grid_points < 11) {
    throw std::invalid_argument("locate_minimum_gap: grid_points must be >= 11");
  }
  const std::vector<double> grid = uniform_grid(grid_points);
  std::vector<double> gap(grid.size());
  const double threshold = kDegeneracyThreshold * family.energy_scale();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    gap[i] = instantaneous_gap(family, grid[i]);
    if (gap[i] < threshold) {
      throw DegenerateSpectrumError("locate_minimum_gap: gap closes at s = " +
                                    std::to_string(grid[i]));
    }
  }
  return refine_from_grid(grid, gap, family, s_tol);
}

void write_gap_trace_csv(std::ostream& out, const SpectrumTrace& trace) {
  std::vector<std::string> fields{"s"};
  for (int j = 0; j < trace.levels(); ++j) fields.push_back("E" + std::to_string(j));
  fields.emplace_back("gap");
  csv::write_row(out, fields);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    fields.clear();
    fields.push_back(csv::format_real(trace.s_grid[i]));
    for (int j = 0; j < trace.levels(); ++j) {
      fields.push_back(
          csv::format_real(trace.energies(static_cast<Eigen::Index>(i), j)));
    }
    fields.push_back(csv::format_real(trace.gap[i]));
    csv::write_row(out, fields);
  }
}

}  // namespace aqc
