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

#include "aqc/model.hpp"

#include "aqc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aqc {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Index checked_dim(const ChainParams& params, int max_qubits) {
  params.validate();
  if (params.n_qubits > max_qubits) {
    throw DimensionError("chain of " + std::to_string(params.n_qubits) +
                         " qubits exceeds the cap of " +
                         std::to_string(max_qubits));
  }
  return Eigen::Index{1} << params.n_qubits;
}

inline int spin(Eigen::Index b, int site, int n) {
  return ((b >> (n - 1 - site)) & 1) ? -1 : 1;
}

void check_unit_interval(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::out_of_range("schedule parameter s = " + std::to_string(s) +
                            " outside [0, 1]");
  }
}

}  // namespace

ChainParams ChainParams::uniform(int n, double lambda, double h, double j) {
  ChainParams p;
  p.n_qubits = n;
  p.lambda.assign(static_cast<std::size_t>(std::max(n, 0)), lambda);
  p.h.assign(static_cast<std::size_t>(std::max(n, 0)), h);
  p.j.assign(static_cast<std::size_t>(std::max(n - 1, 0)), j);
  return p;
}

ChainParams ChainParams::ideal(int n) { return uniform(n, 1.0, 5.0, 2.5); }

void ChainParams::validate() const {
  if (n_qubits < 1) {
    throw std::invalid_argument("ChainParams: n_qubits must be >= 1");
  }
  const auto n = static_cast<std::size_t>(n_qubits);
  if (lambda.size() != n || h.size() != n || j.size() != n - 1) {
    throw std::invalid_argument(
        "ChainParams: expected lengths (N, N, N-1) for (lambda, h, j)");
  }
}

Schedule::Schedule(double t_f, double epsilon0)
    : t_f_(t_f), epsilon0_(epsilon0) {
  if (!(t_f > 0.0) || !std::isfinite(t_f)) {
    throw std::invalid_argument("Schedule: t_f must be positive and finite");
  }
  if (!(epsilon0 > 0.0) || !std::isfinite(epsilon0)) {
    throw std::invalid_argument("Schedule: epsilon0 must be positive");
  }
}

Envelopes envelopes(double s, const Schedule& sched) {
  check_unit_interval(s);
  const double c = std::cos(kPi * s);
  return {sched.epsilon0() * (1.0 + c), sched.epsilon0() * (1.0 - c)};
}

OperatorMatrix build_initial_hamiltonian(const ChainParams& params,
                                         int max_qubits) {
  const Eigen::Index dim = checked_dim(params, max_qubits);
  const int n = params.n_qubits;
  RealMatrix h_i = RealMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    for (int i = 0; i < n; ++i) {
      const Eigen::Index flipped = b ^ (Eigen::Index{1} << (n - 1 - i));
      h_i(flipped, b) += -0.5 * params.lambda[static_cast<std::size_t>(i)];
    }
  }
  return h_i;
}

RealVector problem_diagonal(const ChainParams& params, int max_qubits) {
  const Eigen::Index dim = checked_dim(params, max_qubits);
  const int n = params.n_qubits;
  RealVector diag(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      e -= params.h[static_cast<std::size_t>(i)] * spin(b, i, n);
    }
    for (int i = 0; i + 1 < n; ++i) {
      e -= params.j[static_cast<std::size_t>(i)] * spin(b, i, n) *
           spin(b, i + 1, n);
    }
    diag(b) = e;
  }
  return diag;
}

OperatorMatrix build_problem_hamiltonian(const ChainParams& params,
                                         int max_qubits) {
  return problem_diagonal(params, max_qubits).asDiagonal();
}

OperatorMatrix hamiltonian_at(double s, const ChainParams& params,
                              const Schedule& sched) {
  const Envelopes env = envelopes(s, sched);
  return env.omega * build_initial_hamiltonian(params) +
         env.gamma * build_problem_hamiltonian(params);
}

ScheduleDerivatives hamiltonian_s_derivatives(double s,
                                              const ChainParams& params,
                                              const Schedule& sched) {
  check_unit_interval(s);
  const RealMatrix diff =
      build_problem_hamiltonian(params) - build_initial_hamiltonian(params);
  const double e0 = sched.epsilon0();
  return {e0 * kPi * std::sin(kPi * s) * diff,
          e0 * kPi * kPi * std::cos(kPi * s) * diff};
}

IsingChainPath::IsingChainPath(ChainParams params, Schedule sched,
                               int max_qubits)
    : params_(std::move(params)),
      sched_(sched),
      h_i_(build_initial_hamiltonian(params_, max_qubits)),
      diag_p_(aqc::problem_diagonal(params_, max_qubits)) {}

RealMatrix IsingChainPath::real_at(double s) const {
  const Envelopes env = envelopes(s, sched_);
  RealMatrix h = env.omega * h_i_;
  h.diagonal() += env.gamma * diag_p_;
  return h;
}

RealMatrix IsingChainPath::difference() const {
  RealMatrix d = -h_i_;
  d.diagonal() += diag_p_;
  return d;
}

RealMatrix IsingChainPath::real_first_derivative(double s) const {
  check_unit_interval(s);
  return sched_.epsilon0() * kPi * std::sin(kPi * s) * difference();
}

RealMatrix IsingChainPath::real_second_derivative(double s) const {
  check_unit_interval(s);
  return sched_.epsilon0() * kPi * kPi * std::cos(kPi * s) * difference();
}

ComplexMatrix IsingChainPath::at(double s) const {
  return real_at(s).cast<std::complex<double>>();
}

ComplexMatrix IsingChainPath::first_derivative(double s) const {
  return real_first_derivative(s).cast<std::complex<double>>();
}

ComplexMatrix IsingChainPath::second_derivative(double s) const {
  return real_second_derivative(s).cast<std::complex<double>>();
}

void IsingChainPath::apply(double s, const StateVector& in,
                           StateVector& out) const {
  const Envelopes env = envelopes(s, sched_);
  const int n = params_.n_qubits;
  const Eigen::Index dim = this->dim();
  out.resize(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    out(b) = env.gamma * diag_p_(b) * in(b);
  }
  for (int i = 0; i < n; ++i) {
    const double w = -0.5 * env.omega * params_.lambda[static_cast<std::size_t>(i)];
    const Eigen::Index mask = Eigen::Index{1} << (n - 1 - i);
    for (Eigen::Index b = 0; b < dim; ++b) {
      out(b) += w * in(b ^ mask);
    }
  }
}

std::pair<double, double> IsingChainPath::spectral_bounds(double s) const {
  const Envelopes env = envelopes(s, sched_);
  double radius = 0.0;
  for (double l : params_.lambda) radius += 0.5 * std::abs(l);
  radius *= env.omega;
  const double lo = env.gamma * diag_p_.minCoeff();
  const double hi = env.gamma * diag_p_.maxCoeff();
  return {lo - radius, hi + radius};
}

std::pair<std::uint64_t, bool> problem_ground_index(const ChainParams& params,
                                                    double rel_tol) {
  const RealVector diag = problem_diagonal(params);
  Eigen::Index best = 0;
  diag.minCoeff(&best);
  const double scale = std::max(1.0, diag.cwiseAbs().maxCoeff());
  bool unique = true;
  for (Eigen::Index b = 0; b < diag.size(); ++b) {
    if (b != best && diag(b) - diag(best) <= rel_tol * scale) {
      unique = false;
      break;
    }
  }
  return {static_cast<std::uint64_t>(best), unique};
}

}  // namespace aqc
