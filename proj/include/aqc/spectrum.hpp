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

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace aqc {

struct EigenPairs {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns, orthonormal
};

// Lowest k eigenpairs of a Hermitian matrix. Throws NotHermitianError when
// any |A_ij - conj(A_ji)| exceeds 1e-12 * max(1, max|A|), and
// std::invalid_argument unless 1 <= k <= dim.
EigenPairs eigh_lowest(const ComplexMatrix& matrix, int k);
EigenPairs eigh_lowest(const RealMatrix& matrix, int k);

// Largest |eigenvalue| of a Hermitian matrix.
double spectral_norm(const ComplexMatrix& matrix);
double spectral_norm(const RealMatrix& matrix);

struct GaugeAlignment {
  ComplexMatrix vectors;
  std::vector<int> flagged_levels;  // |overlap| below threshold
  double min_overlap = 1.0;         // smallest |<prev_j|curr_j>|
};

// Rephase each column of curr so <prev_j|curr_j> is real and non-negative.
// For real vectors this is a sign choice. Columns whose overlap magnitude is
// below flag_threshold are reported as a level crossing or tracking failure.
GaugeAlignment smooth_gauge(const ComplexMatrix& prev, const ComplexMatrix& curr,
                            double flag_threshold = 0.5);

struct TrackingEvent {
  std::size_t grid_index;
  int level;
  double overlap;
};

struct SpectrumTrace {
  std::vector<double> s_grid;
  RealMatrix energies;                // grid_points x k, rows ascending
  std::vector<ComplexMatrix> states;  // dim x k per grid point; may be empty
  std::vector<double> gap;            // E1 - E0
  double delta_min = 0.0;
  double s_star = 0.0;
  bool refined = false;
  bool degenerate = false;            // some gap below the degeneracy threshold
  std::vector<TrackingEvent> tracking_events;

  std::size_t size() const noexcept { return s_grid.size(); }
  int levels() const noexcept { return static_cast<int>(energies.cols()); }
};

inline constexpr int kDefaultGridPoints = 1001;
inline constexpr int kDefaultTrackedLevels = 6;
// Gaps below this multiple of the family's energy scale count as degenerate.
inline constexpr double kDegeneracyThreshold = 1e-10;

// Eigendecomposition on a uniform s-grid followed by a sequential gauge pass
// from s = 0. With keep_states false only energies are computed.
SpectrumTrace trace_spectrum(const ParametrizedHamiltonian& family,
                             int grid_points, int k, bool keep_states = true);

// k defaults to min(2^N, 6) when passed as 0. Unless the trace is
// degenerate, delta_min and s_star are refined with minimum_gap.
SpectrumTrace gap_trace(const ChainParams& params, const Schedule& sched,
                        int grid_points = kDefaultGridPoints, int k = 0);

// Re-runs the sequential gauge pass over stored states, replacing
// tracking_events.
void align_gauge(SpectrumTrace& trace);

struct MinimumGap {
  double delta_min;
  double s_star;
  bool refined;  // false when the coarse minimum sits on a grid endpoint
};

// Golden-section refinement of the coarse minimum to |ds| <= s_tol. The
// result never exceeds the coarse grid minimum. Throws
// DegenerateSpectrumError when the trace is degenerate.
MinimumGap minimum_gap(const SpectrumTrace& trace,
                       const ParametrizedHamiltonian& family,
                       double s_tol = 1e-8);
MinimumGap minimum_gap(const SpectrumTrace& trace, const ChainParams& params,
                       const Schedule& sched, double s_tol = 1e-8);

// Delta_10(s) from an eigenvalue-only solve.
double instantaneous_gap(const ParametrizedHamiltonian& family, double s);

// Energies-only coarse scan plus refinement; the ensemble path.
MinimumGap locate_minimum_gap(const ParametrizedHamiltonian& family,
                              int grid_points, double s_tol = 1e-8);

// CSV "s,E0,...,E{k-1},gap" with 12 significant digits.
void write_gap_trace_csv(std::ostream& out, const SpectrumTrace& trace);

}  // namespace aqc
