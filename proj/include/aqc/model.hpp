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

// Disordered transverse-field Ising chain driven by cosine envelopes.
//
//   H(s) = Omega(s) H_I + Gamma(s) H_P,   s = t / t_f in [0, 1]
//   H_I  = - sum_i (lambda_i / 2) X_i
//   H_P  = - sum_i h_i Z_i - sum_i J_{i,i+1} Z_i Z_{i+1}
//   Omega(s) = eps0 (1 + cos(pi s)),  Gamma(s) = eps0 (1 - cos(pi s))
//
// Units: hbar = 1, time in ns, energies in rad/ns. Basis index b encodes
// qubit 0 in the most significant bit; Z|0> = +|0>. Open boundaries.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace aqc {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using StateVector = Eigen::VectorXcd;

// The Ising operators are real symmetric; complex families go through
// ParametrizedHamiltonian below.
using OperatorMatrix = RealMatrix;

inline constexpr double kDefaultEpsilon0 = 2.0 * std::numbers::pi * 0.3183;
inline constexpr int kDefaultMaxQubits = 14;

struct ChainParams {
  int n_qubits = 0;
  std::vector<double> lambda;  // transverse fields, N
  std::vector<double> h;       // longitudinal fields, N
  std::vector<double> j;       // nearest-neighbour couplings, N-1

  static ChainParams uniform(int n, double lambda, double h, double j);
  // lambda = 1, h = 5, J = 2.5 on every site/bond.
  static ChainParams ideal(int n);

  // Throws std::invalid_argument on inconsistent lengths or N < 1.
  void validate() const;

  bool operator==(const ChainParams&) const = default;
};

class Schedule {
 public:
  // Throws std::invalid_argument unless t_f > 0 and epsilon0 > 0.
  explicit Schedule(double t_f, double epsilon0 = kDefaultEpsilon0);

  double t_f() const noexcept { return t_f_; }
  double epsilon0() const noexcept { return epsilon0_; }
  // alpha * t_f = pi
  double alpha() const noexcept { return std::numbers::pi / t_f_; }

  bool operator==(const Schedule&) const = default;

 private:
  double t_f_;
  double epsilon0_;
};

struct Envelopes {
  double omega;
  double gamma;
};

// Throws std::out_of_range for s outside [0, 1].
Envelopes envelopes(double s, const Schedule& sched);

// Dimensionless operators. Throw DimensionError if N > max_qubits.
OperatorMatrix build_initial_hamiltonian(const ChainParams& params,
                                         int max_qubits = kDefaultMaxQubits);
OperatorMatrix build_problem_hamiltonian(const ChainParams& params,
                                         int max_qubits = kDefaultMaxQubits);
// Diagonal of H_P indexed by computational basis state.
RealVector problem_diagonal(const ChainParams& params,
                            int max_qubits = kDefaultMaxQubits);

OperatorMatrix hamiltonian_at(double s, const ChainParams& params,
                              const Schedule& sched);

struct ScheduleDerivatives {
  OperatorMatrix first;   // dH/ds
  OperatorMatrix second;  // d^2H/ds^2
};

ScheduleDerivatives hamiltonian_s_derivatives(double s,
                                              const ChainParams& params,
                                              const Schedule& sched);

// A one-parameter Hermitian family H(s), s in [0, 1], with analytic
// s-derivatives. Spectral and condition analysis work against this
// interface so synthetic complex families can be checked with the same code.
class ParametrizedHamiltonian {
 public:
  virtual ~ParametrizedHamiltonian() = default;

  virtual Eigen::Index dim() const = 0;
  virtual ComplexMatrix at(double s) const = 0;
  virtual ComplexMatrix first_derivative(double s) const = 0;
  virtual ComplexMatrix second_derivative(double s) const = 0;
  // Energy scale used for relative degeneracy thresholds.
  virtual double energy_scale() const = 0;

  // Real-symmetric families override both to take the real eigensolver path.
  virtual bool real_symmetric() const { return false; }
  virtual RealMatrix real_at(double s) const { return at(s).real(); }
};

class IsingChainPath final : public ParametrizedHamiltonian {
 public:
  IsingChainPath(ChainParams params, Schedule sched,
                 int max_qubits = kDefaultMaxQubits);

  Eigen::Index dim() const override { return diag_p_.size(); }
  ComplexMatrix at(double s) const override;
  ComplexMatrix first_derivative(double s) const override;
  ComplexMatrix second_derivative(double s) const override;
  double energy_scale() const override { return sched_.epsilon0(); }

  bool real_symmetric() const override { return true; }
  RealMatrix real_at(double s) const override;
  RealMatrix real_first_derivative(double s) const;
  RealMatrix real_second_derivative(double s) const;

  // out = H(s) in, without forming H(s).
  void apply(double s, const StateVector& in, StateVector& out) const;
  // Gershgorin interval containing the spectrum of H(s).
  std::pair<double, double> spectral_bounds(double s) const;

  const ChainParams& params() const noexcept { return params_; }
  const Schedule& schedule() const noexcept { return sched_; }
  const RealMatrix& initial_hamiltonian() const noexcept { return h_i_; }
  const RealVector& problem_diagonal() const noexcept { return diag_p_; }
  // H_P - H_I, the direction of every schedule derivative.
  RealMatrix difference() const;

 private:
  ChainParams params_;
  Schedule sched_;
  RealMatrix h_i_;
  RealVector diag_p_;
};

// Index of the lowest entry of H_P's diagonal; second member is false when
// the minimum is tied within rel_tol of the diagonal's scale.
std::pair<std::uint64_t, bool> problem_ground_index(const ChainParams& params,
                                                    double rel_tol = 1e-12);

}  // namespace aqc
