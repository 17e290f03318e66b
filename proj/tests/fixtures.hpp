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

// Synthetic Hamiltonian families with closed-form eigensystems.

#pragma once

#include "aqc/model.hpp"
#include "aqc/spectrum.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace fixture {

using cd = std::complex<double>;
using aqc::ComplexMatrix;

inline ComplexMatrix pauli(double x, double y, double z) {
  ComplexMatrix m(2, 2);
  m << cd(z, 0), cd(x, -y), cd(x, y), cd(-z, 0);
  return m;
}

// Spin in a field of strength b at polar angle theta, azimuth 2 pi s:
// H = -(b / 2) n(s) . sigma.
class RotatingSpin final : public aqc::ParametrizedHamiltonian {
 public:
  RotatingSpin(double b, double theta) : b_(b), theta_(theta) {}

  Eigen::Index dim() const override { return 2; }
  ComplexMatrix at(double s) const override {
    const double phi = 2 * std::numbers::pi * s;
    const double st = std::sin(theta_);
    return -0.5 * b_ * pauli(st * std::cos(phi), st * std::sin(phi), std::cos(theta_));
  }
  ComplexMatrix first_derivative(double s) const override {
    const double w = 2 * std::numbers::pi;
    const double phi = w * s;
    const double st = std::sin(theta_);
    return -0.5 * b_ * w * pauli(-st * std::sin(phi), st * std::cos(phi), 0.0);
  }
  ComplexMatrix second_derivative(double s) const override {
    const double w = 2 * std::numbers::pi;
    const double phi = w * s;
    const double st = std::sin(theta_);
    return -0.5 * b_ * w * w * pauli(-st * std::cos(phi), -st * std::sin(phi), 0.0);
  }
  double energy_scale() const override { return b_; }

  // Eigenvectors in the single-valued analytic gauge, ground first.
  ComplexMatrix states(double s) const {
    const double phi = 2 * std::numbers::pi * s;
    const cd e = std::polar(1.0, phi);
    ComplexMatrix v(2, 2);
    v << std::cos(theta_ / 2), std::sin(theta_ / 2), e * std::sin(theta_ / 2),
        -e * std::cos(theta_ / 2);
    return v;
  }

  // Trace on a uniform grid with the analytic gauge, no smoothing.
  aqc::SpectrumTrace analytic_trace(int points) const {
    aqc::SpectrumTrace t;
    t.energies.resize(points, 2);
    for (int i = 0; i < points; ++i) {
      const double s = static_cast<double>(i) / (points - 1);
      t.s_grid.push_back(s);
      t.energies(i, 0) = -0.5 * b_;
      t.energies(i, 1) = 0.5 * b_;
      t.states.push_back(states(s));
      t.gap.push_back(b_);
    }
    t.delta_min = b_;
    return t;
  }

  double theta() const { return theta_; }

 private:
  double b_;
  double theta_;
};

// H = b (cos a(s) Z + sin a(s) X) with a = a0 + kappa s. Constant gap 2b and
// constant |<0|H'|1>| = b kappa.
class UniformRotation final : public aqc::ParametrizedHamiltonian {
 public:
  UniformRotation(double b, double a0, double kappa) : b_(b), a0_(a0), kappa_(kappa) {}

  Eigen::Index dim() const override { return 2; }
  ComplexMatrix at(double s) const override {
    const double a = a0_ + kappa_ * s;
    return b_ * pauli(std::sin(a), 0.0, std::cos(a));
  }
  ComplexMatrix first_derivative(double s) const override {
    const double a = a0_ + kappa_ * s;
    return b_ * kappa_ * pauli(std::cos(a), 0.0, -std::sin(a));
  }
  ComplexMatrix second_derivative(double s) const override {
    const double a = a0_ + kappa_ * s;
    return -b_ * kappa_ * kappa_ * pauli(std::sin(a), 0.0, std::cos(a));
  }
  double energy_scale() const override { return b_; }

 private:
  double b_;
  double a0_;
  double kappa_;
};

// H = (b - r s) Z + c X. The gap 2 sqrt((b - r s)^2 + c^2) falls
// monotonically to its minimum at s = 1 when b > r > 0.
class ShrinkingField final : public aqc::ParametrizedHamiltonian {
 public:
  ShrinkingField(double b, double r, double c) : b_(b), r_(r), c_(c) {}

  Eigen::Index dim() const override { return 2; }
  ComplexMatrix at(double s) const override { return pauli(c_, 0.0, b_ - r_ * s); }
  ComplexMatrix first_derivative(double) const override { return pauli(0.0, 0.0, -r_); }
  ComplexMatrix second_derivative(double) const override {
    return ComplexMatrix::Zero(2, 2);
  }
  double energy_scale() const override { return b_; }

 private:
  double b_;
  double r_;
  double c_;
};

}  // namespace fixture
