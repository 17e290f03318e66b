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

#include "aqc/errors.hpp"
#include "aqc/propagation.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace aqc;

namespace {

constexpr double kTf2 = 21.4390051701;  // calibrated N=2 duration

double unitarity_defect(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("midpoint propagator matches a fine-step RK4 reference") {
  const ChainParams p = ChainParams::ideal(2);
  const Schedule sched(kTf2);
  PropagationOptions options;
  options.method = StepMethod::eigendecomposition;
  const EvolutionResult ours = auto_propagate(p, sched, 1e-8, options);
  CHECK(ours.converged);
  const oracle::VectorXcd psi0 =
      oracle::ground_state(oracle::hamiltonian(p, 0.0, sched.epsilon0()));
  oracle::VectorXcd target = oracle::VectorXcd::Zero(4);
  target(0) = 1.0;
  const double ref = oracle::rk4_success(p, kTf2, sched.epsilon0(),
                                         100LL * ours.steps_used, psi0, target);
  CHECK(std::abs(ours.success_probability - ref) <= 1e-8);
  CHECK(ours.success_probability >= 0.999975);
}

TEST_CASE("step doubling converges at second order") {
  // below ~256 steps each step still turns the phase by O(10) rad
  const IsingChainPath path(ChainParams::ideal(3), Schedule(22.9954091294));
  const double p1 = propagate(path, 512).success_probability;
  const double p2 = propagate(path, 1024).success_probability;
  const double p3 = propagate(path, 2048).success_probability;
  const double order = std::log2(std::abs(p1 - p2) / std::abs(p2 - p3));
  CHECK(order > 1.7);
  CHECK(order < 2.3);
}

TEST_CASE("Chebyshev and eigendecomposition steps agree") {
  for (int n : {2, 3, 5}) {
    const IsingChainPath path(ChainParams::ideal(n), Schedule(22.0));
    PropagationOptions eig, cheb;
    eig.method = StepMethod::eigendecomposition;
    cheb.method = StepMethod::chebyshev;
    const EvolutionResult a = propagate(path, 512, eig);
    const EvolutionResult b = propagate(path, 512, cheb);
    CHECK(std::abs(a.success_probability - b.success_probability) < 1e-10);
    const auto overlap = std::abs(a.final_state.dot(b.final_state));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("step unitary equals the Taylor exponential and is unitary") {
  for (int n : {1, 2, 3}) {
    const IsingChainPath path(ChainParams::ideal(n), Schedule(30.0));
    for (double s : {0.0, 0.4, 1.0}) {
      for (double tau : {0.01, 0.3, -0.2}) {
        const ComplexMatrix u = step_unitary(path, s, tau);
        const ComplexMatrix ref = oracle::expm_i(path.real_at(s), tau);
        CHECK((u - ref).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(unitarity_defect(u) <= 1e-11);
      }
    }
  }
}

TEST_CASE("Chebyshev step is unitary column by column") {
  const IsingChainPath path(ChainParams::ideal(5), Schedule(25.0));
  const StepPropagator step(path, StepMethod::chebyshev);
  ComplexMatrix u(path.dim(), path.dim());
  for (Eigen::Index c = 0; c < path.dim(); ++c) {
    StateVector e = StateVector::Zero(path.dim());
    e(c) = 1.0;
    step.apply(e, 0.3, 25.0 / 4096);
    u.col(c) = e;
  }
  CHECK(unitarity_defect(u) <= 1e-11);
  CHECK((u - step_unitary(path, 0.3, 25.0 / 4096)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("norm drift and forward-reverse round trip") {
  const IsingChainPath path(ChainParams::ideal(4), Schedule(24.0));
  const int steps = 2048;
  const double ds = 1.0 / steps;
  const double tau = ds * path.schedule().t_f();
  const StepPropagator step(path, StepMethod::automatic);
  const StateVector psi0 = initial_ground_state(path);
  StateVector psi = psi0;
  for (int k = 0; k < steps; ++k) step.apply(psi, (k + 0.5) * ds, tau);
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-9);
  for (int k = steps - 1; k >= 0; --k) step.apply(psi, (k + 0.5) * ds, -tau);
  CHECK((psi - psi0).norm() <= 1e-8);
}

TEST_CASE("vanishing duration leaves the state unchanged") {
  const ChainParams p = ChainParams::ideal(2);
  const IsingChainPath path(p, Schedule(1e-12));
  const EvolutionResult r = propagate(path, kMinSteps);
  const StateVector psi0 = initial_ground_state(path);
  CHECK(std::abs(std::abs(r.final_state.dot(psi0)) - 1.0) < 1e-12);
  CHECK(r.success_probability == doctest::Approx(std::norm(psi0(0))).epsilon(1e-12));
}

TEST_CASE("rescaling t_f by c and eps0 by 1/c leaves P_S unchanged") {
  const ChainParams p = ChainParams::ideal(3);
  const double a = propagate(p, Schedule(20.0), 1024).success_probability;
  const double b = propagate(p, Schedule(40.0, kDefaultEpsilon0 / 2), 1024).success_probability;
  CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("longer schedules are more adiabatic at N=5") {
  const ChainParams p = ChainParams::ideal(5);
  const EvolutionResult slow = auto_propagate(p, Schedule(4 * 24.3713797072));
  CHECK(slow.success_probability >= 0.999975);
}

TEST_CASE("precondition errors") {
  const IsingChainPath path(ChainParams::ideal(2), Schedule(5.0));
  CHECK_THROWS_AS(propagate(path, 9), std::invalid_argument);
  const StateVector a = StateVector::Unit(4, 0);
  CHECK_THROWS_AS(success_probability(a, StateVector::Unit(8, 0)), std::invalid_argument);
  CHECK_THROWS_AS(success_probability(2.0 * a, a), std::invalid_argument);
  CHECK(success_probability(a, a) == 1.0);
  // lambda = 0 leaves H(0) = 0: no unique initial ground state
  const IsingChainPath flat(ChainParams::uniform(2, 0.0, 5.0, 2.5), Schedule(5.0));
  CHECK_THROWS_AS(initial_ground_state(flat), DegenerateSpectrumError);
  CHECK_THROWS_AS(problem_ground_state(ChainParams::uniform(2, 1.0, 0.0, 0.0)),
                  DegenerateSpectrumError);
}

TEST_CASE("eigenbasis populations track the evolution") {
  const ChainParams p = ChainParams::ideal(3);
  const Schedule sched(22.9954091294);
  const PopulationTrace t = eigenbasis_populations(p, sched, 21, 4);
  REQUIRE(t.s.size() == 21);
  CHECK(t.populations.rows() == 21);
  CHECK(t.populations.cols() == 4);
  CHECK(t.populations(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  for (Eigen::Index i = 0; i < t.populations.rows(); ++i) {
    CHECK(t.populations.row(i).sum() <= 1.0 + 1e-12);
  }
  const double ps = auto_propagate(p, sched).success_probability;
  CHECK(t.populations(20, 0) == doctest::Approx(ps).epsilon(1e-8));
  std::ostringstream out;
  write_population_csv(out, t);
  CHECK(out.str().rfind("s,p0,p1,p2,p3\n", 0) == 0);
}
