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

#include "aqc/propagation.hpp"

#include "aqc/csv.hpp"
#include "aqc/errors.hpp"
#include "aqc/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <string>

namespace aqc {

namespace {

using cd = std::complex<double>;

constexpr Eigen::Index kEigenStepMaxDim = 4;

StepMethod resolve(StepMethod method, Eigen::Index dim) {
  if (method != StepMethod::automatic) return method;
  return dim <= kEigenStepMaxDim ? StepMethod::eigendecomposition
                                 : StepMethod::chebyshev;
}

PopulationTrace make_population_trace(int samples, int levels) {
  PopulationTrace trace;
  trace.s.resize(static_cast<std::size_t>(samples));
  trace.populations = RealMatrix::Zero(samples, levels);
  return trace;
}

void record_populations(const IsingChainPath& path, const StateVector& psi,
                        int row, double s, PopulationTrace& trace) {
  const int levels = static_cast<int>(trace.populations.cols());
  const EigenPairs pairs = eigh_lowest(path.real_at(s), levels);
  trace.s[static_cast<std::size_t>(row)] = s;
  for (int m = 0; m < levels; ++m) {
    trace.populations(row, m) = std::norm(pairs.vectors.col(m).dot(psi));
  }
}

}  // namespace

StepPropagator::StepPropagator(const IsingChainPath& path, StepMethod method)
    : path_(path), method_(resolve(method, path.dim())) {}

void StepPropagator::apply(StateVector& psi, double s, double tau) const {
  if (method_ == StepMethod::eigendecomposition) {
    apply_eigen(psi, s, tau);
  } else {
    apply_chebyshev(psi, s, tau);
  }
}

void StepPropagator::apply_eigen(StateVector& psi, double s, double tau) const {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(path_.real_at(s));
  const RealMatrix& v = es.eigenvectors();
  const RealVector re = v.transpose() * psi.real();
  const RealVector im = v.transpose() * psi.imag();
  RealVector rot_re(re.size());
  RealVector rot_im(re.size());
  for (Eigen::Index i = 0; i < re.size(); ++i) {
    const cd c = std::polar(1.0, -es.eigenvalues()(i) * tau) * cd(re(i), im(i));
    rot_re(i) = c.real();
    rot_im(i) = c.imag();
  }
  psi.real() = v * rot_re;
  psi.imag() = v * rot_im;
}

// exp(-i H tau) = exp(-i c tau) sum_k (2 - delta_k0) (-i)^k J_k(r tau) T_k(H~),
// H~ = (H - c) / r with the spectrum of H inside [c - r, c + r].
void StepPropagator::apply_chebyshev(StateVector& psi, double s,
                                     double tau) const {
  const auto [lo, hi] = path_.spectral_bounds(s);
  const double center = 0.5 * (hi + lo);
  const double radius = 0.5 * (hi - lo);
  const cd global_phase = std::polar(1.0, -center * tau);
  const double x = radius * std::abs(tau);
  if (x == 0.0) {
    psi *= global_phase;
    return;
  }
  // (-i sign(tau))^k
  const cd step_phase = tau > 0 ? cd(0.0, -1.0) : cd(0.0, 1.0);

  const Eigen::Index dim = psi.size();
  StateVector t_prev = psi;
  StateVector t_curr(dim);
  StateVector scratch(dim);
  path_.apply(s, t_prev, scratch);
  t_curr = (scratch - center * t_prev) / radius;

  StateVector acc = std::cyl_bessel_j(0.0, x) * t_prev;
  cd phase = step_phase;
  acc += 2.0 * phase * std::cyl_bessel_j(1.0, x) * t_curr;

  const int max_terms = static_cast<int>(x + 20.0 * std::cbrt(x) + 40.0);
  int small = 0;
  for (int k = 2; k < max_terms; ++k) {
    path_.apply(s, t_curr, scratch);
    StateVector t_next = 2.0 * (scratch - center * t_curr) / radius - t_prev;
    phase *= step_phase;
    const double coeff = std::cyl_bessel_j(static_cast<double>(k), x);
    acc += 2.0 * phase * coeff * t_next;
    t_prev.swap(t_curr);
    t_curr.swap(t_next);
    if (k > x && std::abs(coeff) < 1e-18) {
      if (++small == 2) break;
    } else {
      small = 0;
    }
  }
  psi = global_phase * acc;
}

ComplexMatrix step_unitary(const IsingChainPath& path, double s, double tau) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(path.real_at(s));
  const ComplexMatrix v = es.eigenvectors().cast<cd>();
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -es.eigenvalues()(i) * tau);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

StateVector initial_ground_state(const IsingChainPath& path) {
  const int k = static_cast<int>(std::min<Eigen::Index>(2, path.dim()));
  const EigenPairs pairs = eigh_lowest(path.real_at(0.0), k);
  if (k == 2 && pairs.values(1) - pairs.values(0) <
                    kDegeneracyThreshold * path.energy_scale()) {
    throw DegenerateSpectrumError("initial ground state is degenerate");
  }
  return pairs.vectors.col(0);
}

StateVector problem_ground_state(const ChainParams& params) {
  const auto [index, unique] = problem_ground_index(params);
  if (!unique) {
    throw DegenerateSpectrumError("problem Hamiltonian ground state is degenerate");
  }
  StateVector target = StateVector::Zero(Eigen::Index{1} << params.n_qubits);
  target(static_cast<Eigen::Index>(index)) = 1.0;
  return target;
}

EvolutionResult propagate(const IsingChainPath& path, int steps,
                          const PropagationOptions& options) {
  if (steps < kMinSteps) {
    throw std::invalid_argument("propagate: steps must be >= " +
                                std::to_string(kMinSteps));
  }
  const int samples = options.population_samples;
  if (samples == 1) {
    throw std::invalid_argument("propagate: population_samples must be 0 or >= 2");
  }
  if (samples > 1) {
    const int stride = samples - 1;
    steps = ((steps + stride - 1) / stride) * stride;
  }

  const StateVector target =
      options.target ? *options.target : problem_ground_state(path.params());
  if (target.size() != path.dim()) {
    throw std::invalid_argument("propagate: target dimension mismatch");
  }

  const StepPropagator stepper(path, options.method);
  StateVector psi = initial_ground_state(path);
  const double ds = 1.0 / steps;
  const double tau = path.schedule().t_f() * ds;

  EvolutionResult result;
  if (samples > 1) {
    const int levels = static_cast<int>(
        std::min<Eigen::Index>(options.population_levels, path.dim()));
    result.population_trace = make_population_trace(samples, levels);
    record_populations(path, psi, 0, 0.0, *result.population_trace);
  }
  const int stride = samples > 1 ? steps / (samples - 1) : 0;
  for (int k = 0; k < steps; ++k) {
    stepper.apply(psi, (k + 0.5) * ds, tau);
    if (stride && (k + 1) % stride == 0) {
      const int row = (k + 1) / stride;
      const double s = row == samples - 1 ? 1.0 : static_cast<double>(k + 1) * ds;
      record_populations(path, psi, row, s, *result.population_trace);
    }
  }
  result.success_probability = success_probability(psi, target);
  result.final_state = std::move(psi);
  result.steps_used = steps;
  result.converged = true;
  return result;
}

EvolutionResult propagate(const ChainParams& params, const Schedule& sched,
                          int steps, const PropagationOptions& options) {
  const IsingChainPath path(params, sched);
  return propagate(path, steps, options);
}

EvolutionResult auto_propagate(const IsingChainPath& path, double tol,
                               const PropagationOptions& options) {
  if (!(tol > 0.0)) throw std::invalid_argument("auto_propagate: tol must be > 0");
  PropagationOptions plain = options;
  plain.population_samples = 0;

  EvolutionResult prev = propagate(path, kAutoStartSteps, plain);
  int hits = 0;
  for (int steps = 2 * kAutoStartSteps; steps <= kAutoMaxSteps; steps *= 2) {
    EvolutionResult next = propagate(path, steps, plain);
    hits = std::abs(next.success_probability - prev.success_probability) < tol
               ? hits + 1
               : 0;
    prev = std::move(next);
    if (hits == 2) {
      prev.converged = true;
      if (options.population_samples > 0) {
        prev = propagate(path, prev.steps_used, options);
      }
      return prev;
    }
  }
  prev.converged = false;
  return prev;
}

EvolutionResult auto_propagate(const ChainParams& params, const Schedule& sched,
                               double tol, const PropagationOptions& options) {
  const IsingChainPath path(params, sched);
  return auto_propagate(path, tol, options);
}

double success_probability(const StateVector& final_state,
                           const StateVector& ideal_final_ground) {
  if (final_state.size() != ideal_final_ground.size()) {
    throw std::invalid_argument("success_probability: dimension mismatch");
  }
  if (std::abs(final_state.norm() - 1.0) > 1e-8 ||
      std::abs(ideal_final_ground.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("success_probability: states must be unit-norm");
  }
  return std::min(1.0, std::norm(ideal_final_ground.dot(final_state)));
}

PopulationTrace eigenbasis_populations(const ChainParams& params,
                                       const Schedule& sched, int sample_points,
                                       int k, int steps) {
  if (sample_points < 2) {
    throw std::invalid_argument("eigenbasis_populations: need >= 2 samples");
  }
  const IsingChainPath path(params, sched);
  if (k < 1 || k > path.dim()) {
    throw std::invalid_argument("eigenbasis_populations: k outside [1, dim]");
  }
  if (steps == 0) steps = auto_propagate(path).steps_used;
  PropagationOptions options;
  options.population_samples = sample_points;
  options.population_levels = k;
  return *propagate(path, steps, options).population_trace;
}

void write_population_csv(std::ostream& out, const PopulationTrace& trace) {
  std::vector<std::string> fields{"s"};
  for (Eigen::Index m = 0; m < trace.populations.cols(); ++m) {
    fields.push_back("p" + std::to_string(m));
  }
  csv::write_row(out, fields);
  for (std::size_t i = 0; i < trace.s.size(); ++i) {
    fields.clear();
    fields.push_back(csv::format_real(trace.s[i]));
    for (Eigen::Index m = 0; m < trace.populations.cols(); ++m) {
      fields.push_back(
          csv::format_real(trace.populations(static_cast<Eigen::Index>(i), m)));
    }
    csv::write_row(out, fields);
  }
}

}  // namespace aqc
