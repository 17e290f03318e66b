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

// Unitary evolution under H(s) with the midpoint product formula
//
//   psi(1) = U_{M-1} ... U_0 psi(0),  U_k = exp(-i H(s_k + ds/2) t_f ds),
//
// starting from the ground state of H(0). Each U_k is applied exactly: by
// dense eigendecomposition of the midpoint Hamiltonian, or by a Chebyshev
// expansion truncated below double precision for larger chains.

#pragma once

#include "aqc/model.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace aqc {

enum class StepMethod {
  automatic,          // eigendecomposition up to dim 4, Chebyshev above
  eigendecomposition,
  chebyshev,
};

struct PopulationTrace {
  std::vector<double> s;
  RealMatrix populations;  // samples x levels, |<E_m(s)|psi(s)>|^2
};

struct PropagationOptions {
  StepMethod method = StepMethod::automatic;
  // State scored by success_probability; defaults to the ground state of the
  // instance's own H_P.
  std::optional<StateVector> target;
  // When > 0, record eigenbasis populations at this many uniform s points.
  // steps is then rounded up to a multiple of (population_samples - 1).
  int population_samples = 0;
  int population_levels = 6;
};

struct EvolutionResult {
  StateVector final_state;
  double success_probability = 0.0;
  int steps_used = 0;
  bool converged = true;
  std::optional<PopulationTrace> population_trace;
};

inline constexpr int kMinSteps = 10;
inline constexpr int kAutoStartSteps = 256;
inline constexpr int kAutoMaxSteps = 1 << 20;

// Applies exp(-i H(s) tau) in place. tau may be negative.
class StepPropagator {
 public:
  StepPropagator(const IsingChainPath& path, StepMethod method);

  void apply(StateVector& psi, double s, double tau) const;
  StepMethod method() const noexcept { return method_; }

 private:
  void apply_eigen(StateVector& psi, double s, double tau) const;
  void apply_chebyshev(StateVector& psi, double s, double tau) const;

  const IsingChainPath& path_;
  StepMethod method_;
};

// Dense exp(-i H(s) tau) from the eigendecomposition of H(s).
ComplexMatrix step_unitary(const IsingChainPath& path, double s, double tau);

// Ground state of H(0). Throws DegenerateSpectrumError when E1 - E0 falls
// below the degeneracy threshold.
StateVector initial_ground_state(const IsingChainPath& path);

// Computational basis state minimizing H_P; this is also the ground state of
// H(1) = 2 eps0 H_P. Throws DegenerateSpectrumError on ties.
StateVector problem_ground_state(const ChainParams& params);

// Throws std::invalid_argument unless steps >= 10.
EvolutionResult propagate(const IsingChainPath& path, int steps,
                          const PropagationOptions& options = {});
EvolutionResult propagate(const ChainParams& params, const Schedule& sched,
                          int steps, const PropagationOptions& options = {});

// Doubles the step count from 256 until |P_S(2M) - P_S(M)| < tol on two
// consecutive doublings. Past 2^20 steps the last value is returned with
// converged = false.
EvolutionResult auto_propagate(const IsingChainPath& path, double tol = 1e-8,
                               const PropagationOptions& options = {});
EvolutionResult auto_propagate(const ChainParams& params, const Schedule& sched,
                               double tol = 1e-8,
                               const PropagationOptions& options = {});

// |<ideal|state>|^2. Throws std::invalid_argument on dimension mismatch or
// inputs that are not unit-norm within 1e-8.
double success_probability(const StateVector& final_state,
                           const StateVector& ideal_final_ground);

// steps = 0 picks the step count from auto_propagate on the same instance.
PopulationTrace eigenbasis_populations(const ChainParams& params,
                                       const Schedule& sched,
                                       int sample_points = 201, int k = 6,
                                       int steps = 0);

// CSV "s,p0,...,p{k-1}".
void write_population_csv(std::ostream& out, const PopulationTrace& trace);

}  // namespace aqc
