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

// Acceptance gate. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria (capped at 1).

#include "aqc/calibration.hpp"
#include "aqc/conditions.hpp"
#include "aqc/config.hpp"
#include "aqc/csv.hpp"
#include "aqc/disorder.hpp"
#include "aqc/pipeline.hpp"
#include "aqc/propagation.hpp"
#include "aqc/spectrum.hpp"
#include "aqc/statistics.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace aqc;
namespace fs = std::filesystem;

namespace {

// Frozen from the first full run (seed 1729, 128 instances).
constexpr double kFrozenStdRatio = 12.8169501503;     // std(dmin | lambda) / std(dmin | h), N = 8
constexpr double kFrozenC4Threshold = 174078.765377;  // max C4 over rows with P_S > 0.999, N = 5

constexpr std::uint64_t kSeed = 1729;
constexpr int kEnsemble = 128;
constexpr int kBootstrap = 2000;

int failures = 0;

void verdict(const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

void info(const std::string& name, const std::string& detail) {
  std::cout << "INFO " << name << ": " << detail << std::endl;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DisorderSpec spec(const char* targets, double sigma, int size = kEnsemble) {
  DisorderSpec s;
  s.sigma_rel = sigma;
  s.targets = parse_targets(targets);
  s.master_seed = kSeed;
  s.ensemble_size = size;
  return s;
}

std::vector<double> column(const EnsembleResult& r, double InstanceRecord::*field) {
  std::vector<double> out;
  for (const auto& rec : r.records) out.push_back(rec.*field);
  return out;
}

double separation(const std::vector<double>& hi, const std::vector<double>& lo,
                  std::uint64_t seed) {
  const double se = std::hypot(stats::bootstrap_se(hi, kBootstrap, seed),
                               stats::bootstrap_se(lo, kBootstrap, seed + 1));
  return (stats::mean(hi) - stats::mean(lo)) / se;
}

std::map<std::string, std::string> csv_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file() || e.path().extension() != ".csv") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    files[fs::relative(e.path(), root).generic_string()] = buf.str();
  }
  return files;
}

// ---------------------------------------------------------------------------

std::map<int, CalibrationRecord> check_calibration() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<int> ns{2, 3, 4, 5, 6, 7, 8};
  const auto table = calibration_table(ns);
  const fs::path path = fs::temp_directory_path() / "aqc_acceptance_calibration.csv";
  {
    std::ofstream out(path);
    write_calibration_csv(out, table);
  }
  std::map<int, CalibrationRecord> persisted;
  for (const auto& r : read_calibration_csv(path)) persisted[r.n_qubits] = r;
  fs::remove(path);

  bool ok = true;
  std::string detail;
  for (int n : {2, 3, 4, 5, 6, 8}) {
    const double f =
        auto_propagate(ChainParams::ideal(n), Schedule(persisted.at(n).t_f)).success_probability;
    ok = ok && f >= kDefaultTargetFidelity;
    detail += "N=" + std::to_string(n) + " t_f=" + num(persisted.at(n).t_f) + " F=" +
              csv::format_real(f) + "; ";
  }
  verdict("calibration", ok, detail + "recheck >= 0.999975 (" + num(elapsed(t0)) + " s)");

  bool dmin_down = true, tf_up = true;
  std::string trend;
  for (std::size_t i = 0; i < table.size(); ++i) {
    trend += "N=" + std::to_string(table[i].n_qubits) + " dmin=" + num(table[i].delta_min) +
             " t_f=" + num(table[i].t_f) + "; ";
    if (i == 0) continue;
    dmin_down = dmin_down && table[i].delta_min < table[i - 1].delta_min;
    tf_up = tf_up && table[i].t_f > table[i - 1].t_f;
  }
  verdict("gap scaling", dmin_down && tf_up,
          trend + "dmin strictly decreasing=" + (dmin_down ? "yes" : "no") +
              ", t_f strictly increasing=" + (tf_up ? "yes" : "no"));
  return persisted;
}

void check_integrator(const std::map<int, CalibrationRecord>& cal) {
  double worst = 0.0;
  std::string detail;
  for (auto [n, t_f] : {std::pair{1, 12.0}, std::pair{2, cal.at(2).t_f}}) {
    const ChainParams p = ChainParams::ideal(n);
    const Schedule sched(t_f);
    const EvolutionResult ours = auto_propagate(p, sched);
    const oracle::VectorXcd psi0 =
        oracle::ground_state(oracle::hamiltonian(p, 0.0, sched.epsilon0()));
    oracle::VectorXcd target = oracle::VectorXcd::Zero(psi0.size());
    target(0) = 1.0;
    const double ref = oracle::rk4_success(p, t_f, sched.epsilon0(),
                                           100LL * ours.steps_used, psi0, target);
    worst = std::max(worst, std::abs(ours.success_probability - ref));
    detail += "N=" + std::to_string(n) + " |dP|=" + num(std::abs(ours.success_probability - ref)) + "; ";
  }
  // asymptotic regime: from 512 steps the per-step phase is below ~2 rad
  const IsingChainPath path(ChainParams::ideal(2), Schedule(cal.at(2).t_f));
  const double p1 = propagate(path, 512).success_probability;
  const double p2 = propagate(path, 1024).success_probability;
  const double p3 = propagate(path, 2048).success_probability;
  const double order = std::log2(std::abs(p1 - p2) / std::abs(p2 - p3));
  verdict("integrator oracle", worst <= 1e-8 && order >= 1.7 && order <= 2.3,
          detail + "RK4 x100 reference, tol 1e-8; step-doubling order (512/1024/2048) " + num(order));
}

void check_unitarity(const std::map<int, CalibrationRecord>& cal) {
  double step_defect = 0.0;
  for (int n = 1; n <= 5; ++n) {
    const IsingChainPath path(ChainParams::ideal(n), Schedule(25.0));
    for (double s : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      for (double tau : {25.0 / 4096, 0.5, -0.3}) {
        const ComplexMatrix u = step_unitary(path, s, tau);
        step_defect = std::max(step_defect,
            (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff());
      }
    }
  }
  {
    const IsingChainPath path(ChainParams::ideal(6), Schedule(cal.at(6).t_f));
    const StepPropagator step(path, StepMethod::chebyshev);
    ComplexMatrix u(path.dim(), path.dim());
    for (Eigen::Index c = 0; c < path.dim(); ++c) {
      StateVector e = StateVector::Unit(path.dim(), c);
      step.apply(e, 0.1, cal.at(6).t_f / 4096);
      u.col(c) = e;
    }
    step_defect = std::max(step_defect,
        (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff());
  }

  const IsingChainPath path(ChainParams::ideal(8), Schedule(cal.at(8).t_f));
  const int steps = auto_propagate(path).steps_used;
  const double ds = 1.0 / steps;
  const double tau = ds * path.schedule().t_f();
  const StepPropagator step(path, StepMethod::automatic);
  const StateVector psi0 = initial_ground_state(path);
  StateVector psi = psi0;
  for (int k = 0; k < steps; ++k) step.apply(psi, (k + 0.5) * ds, tau);
  const double drift = std::abs(psi.norm() - 1.0);
  for (int k = steps - 1; k >= 0; --k) step.apply(psi, (k + 0.5) * ds, -tau);
  const double round_trip = (psi - psi0).norm();
  verdict("unitarity suite", step_defect <= 1e-11 && drift <= 1e-9 && round_trip <= 1e-8,
          "per-step defect " + num(step_defect) + " (<= 1e-11), N=8 norm drift " + num(drift) +
              " over " + std::to_string(steps) + " steps (<= 1e-9), round trip " +
              num(round_trip) + " (<= 1e-8)");
}

void check_ensembles(const std::map<int, CalibrationRecord>& cal) {
  const auto t0 = std::chrono::steady_clock::now();
  EnsembleOptions options;
  std::map<std::string, EnsembleResult> at8;
  for (const char* target : {"lambda", "h", "j"}) {
    at8[target] = run_ensemble(ChainParams::ideal(8), spec(target, 0.10),
                               Schedule(cal.at(8).t_f), options);
  }
  const EnsembleResult lambda2 =
      run_ensemble(ChainParams::ideal(2), spec("lambda", 0.10), Schedule(cal.at(2).t_f), options);

  const double ideal8 = at8["lambda"].ideal_ps;
  const auto ps_l8 = column(at8["lambda"], &InstanceRecord::p_s);
  const auto ps_h8 = column(at8["h"], &InstanceRecord::p_s);
  const auto ps_j8 = column(at8["j"], &InstanceRecord::p_s);
  const auto ps_l2 = column(lambda2, &InstanceRecord::p_s);
  const double drop_h = ideal8 - stats::mean(ps_h8);
  const double drop_j = ideal8 - stats::mean(ps_j8);
  const double sep_h = separation(ps_h8, ps_l8, 11);
  const double sep_j = separation(ps_j8, ps_l8, 13);
  const double sep_n = separation(ps_l2, ps_l8, 17);
  bool failed = false;
  for (const EnsembleResult* r : std::vector<const EnsembleResult*>{&at8["lambda"], &at8["h"], &at8["j"], &lambda2}) {
    failed = failed || !r->failures.empty();
  }
  // "Small drop": within 1e-5 of the ideal, i.e. under half the ideal infidelity.
  const bool a = drop_h <= 1e-5 && drop_j <= 1e-5 && sep_h > 3 && sep_j > 3;
  const bool b = sep_n > 3;
  verdict("ensemble trends", a && b && !failed,
          "N=8 sigma=0.1 ideal=" + csv::format_real(ideal8) + " mean_ps h=" +
              csv::format_real(stats::mean(ps_h8)) + " j=" + csv::format_real(stats::mean(ps_j8)) +
              " lambda=" + csv::format_real(stats::mean(ps_l8)) + "; (a) drops h=" + num(drop_h) +
              " j=" + num(drop_j) + " (<= 1e-5), separation over lambda h=" + num(sep_h) +
              " j=" + num(sep_j) + " SE (> 3); (b) lambda N=2 " +
              csv::format_real(stats::mean(ps_l2)) + " vs N=8, separation " + num(sep_n) +
              " SE (> 3); " + num(elapsed(t0)) + " s");

  const double ratio = at8["lambda"].summary.std_dmin / at8["h"].summary.std_dmin;
  const bool frozen = std::abs(ratio / kFrozenStdRatio - 1) < 1e-6;
  verdict("histogram contrast", ratio > 3 && frozen,
          "std(dmin) lambda=" + num(at8["lambda"].summary.std_dmin) + " h=" +
              num(at8["h"].summary.std_dmin) + " ratio " + csv::format_real(ratio) +
              " (> 3; frozen " + csv::format_real(kFrozenStdRatio) + ")");
}

void check_second_order(const std::map<int, CalibrationRecord>& cal) {
  const ChainParams ideal = ChainParams::ideal(5);
  const Schedule sched(cal.at(5).t_f);
  std::mt19937_64 rng(kSeed);
  std::normal_distribution<double> z;
  std::vector<double> direction(5);
  for (double& d : direction) d = z(rng);

  auto dmin = [&](double a) {
    ChainParams p = ideal;
    for (int i = 0; i < 5; ++i) p.h[i] = ideal.h[i] * (1 + a * direction[i]);
    return locate_minimum_gap(IsingChainPath(p, sched), 1001, 1e-12).delta_min;
  };
  const double base = dmin(0.0);
  std::vector<double> amps, shift, even;
  for (int k = 1; k <= 8; ++k) {
    const double a = 0.01 * k;
    amps.push_back(a);
    const double up = dmin(a) - base;
    const double down = dmin(-a) - base;
    shift.push_back(up);
    even.push_back(0.5 * (up + down));
  }
  const double slope = stats::loglog_slope(amps, shift);
  std::string detail = "N=5 fixed seeded h-direction, |dmin(a) - dmin(0)| for a=0.01..0.08: ";
  for (double s : shift) detail += num(s) + " ";
  verdict("second-order perturbation", std::abs(slope - 2.0) <= 0.3,
          detail + "; log-log slope " + num(slope) + " (target 2.0 +- 0.3)");
  info("second-order perturbation",
       "even part [dmin(a) + dmin(-a)]/2 - dmin(0) has slope " +
           num(stats::loglog_slope(amps, even)) +
           "; the odd part is linear because d(dmin)/dh_i is non-zero at s*");
}

void check_conditions(const std::map<int, CalibrationRecord>& cal) {
  const auto t0 = std::chrono::steady_clock::now();
  const Schedule sched(cal.at(5).t_f);
  EnsembleOptions options;
  options.with_conditions = true;
  const EnsembleResult r = run_ensemble(ChainParams::ideal(5), spec("lambda", 0.10), sched, options);

  std::vector<double> ps, c[4];
  double c4_reliable = 0.0;
  double max_delta = r.ideal_conditions->max_abs_geometric_potential;
  for (const auto& rec : r.records) {
    ps.push_back(rec.p_s);
    const ConditionReport& cr = *rec.conditions;
    const double v[4] = {cr.c1, cr.c2, cr.c3, cr.c4};
    for (int i = 0; i < 4; ++i) c[i].push_back(v[i]);
    if (rec.p_s > 0.999) c4_reliable = std::max(c4_reliable, cr.c4);
    max_delta = std::max(max_delta, cr.max_abs_geometric_potential);
  }
  bool ok = r.failures.empty();
  std::string detail = std::to_string(r.records.size()) + " instances; ";
  for (int i = 0; i < 3; ++i) {
    const double w = stats::discordant_fraction(c[i], ps);
    const double rho = stats::spearman(c[i], ps);
    ok = ok && w >= 0.10 && rho > -0.95;
    detail += "C" + std::to_string(i + 1) + " witnesses " + num(w) + " spearman " + num(rho) + "; ";
  }
  // the frozen value carries 12 digits
  const double threshold = kFrozenC4Threshold * (1 + 1e-9);
  ok = ok && c4_reliable <= threshold;
  verdict("conditions negative result", ok,
          detail + "max C4 over P_S > 0.999 = " + csv::format_real(c4_reliable) +
              " (frozen threshold " + csv::format_real(kFrozenC4Threshold) + "); " + num(elapsed(t0)) + " s");

  // gauge invariance of C3 on the ideal chain and the first instances
  double worst = 0.0;
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<ChainParams> chains{ChainParams::ideal(5)};
  for (std::size_t i = 0; i < 8 && i < r.records.size(); ++i) chains.push_back(r.records[i].params);
  for (const auto& p : chains) {
    const IsingChainPath path(p, sched);
    SpectrumTrace t = trace_spectrum(path, 1001, 6, true);
    t.delta_min = locate_minimum_gap(path, 201).delta_min;
    const ConditionReport before = evaluate_conditions(path, sched.t_f(), t, PairSet::ground_to_excited);
    for (auto& v : t.states) {
      for (Eigen::Index k = 0; k < v.cols(); ++k) v.col(k) *= coin(rng) ? -1.0 : 1.0;
    }
    const ConditionReport flipped = evaluate_conditions(path, sched.t_f(), t, PairSet::ground_to_excited);
    for (auto& v : t.states) {
      for (Eigen::Index k = 0; k < v.cols(); ++k) v.col(k) *= std::polar(1.0, phase(rng));
    }
    align_gauge(t);
    const ConditionReport rephased = evaluate_conditions(path, sched.t_f(), t, PairSet::ground_to_excited);
    worst = std::max({worst, std::abs(flipped.c3 / before.c3 - 1),
                      std::abs(rephased.c3 / before.c3 - 1)});
    max_delta = std::max(max_delta, rephased.max_abs_geometric_potential);
  }
  verdict("delta identity", max_delta < 1e-8 && worst <= 1e-8,
          "max |delta_nm| over ideal + " + std::to_string(r.records.size()) +
              " instances and rephased traces " + num(max_delta) + " (< 1e-8); C3 relative change under random sign flips / phases " +
              num(worst) + " (<= 1e-8)");
}

void check_determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig c = parse_config(
      "n_list = 2, 3\n"
      "ensemble_size = 12\n"
      "sigma_list = 0, 0.1\n"
      "spectrum_grid = 101\n"
      "condition_grid = 201\n"
      "population_samples = 21\n"
      "[disorder.lambda]\ntargets = lambda\nconditions_n = 3\n"
      "[disorder.h]\ntargets = h\n"
      "[disorder.j]\ntargets = j\n",
      Profile::ci);
  c.master_seed = kSeed;
  std::map<std::string, std::string> reference;
  bool identical = true;
  std::string detail;
  for (int workers : {1, 4, 16, 1}) {
    const fs::path dir = fs::temp_directory_path() / ("aqc_acceptance_w" + std::to_string(workers));
    fs::remove_all(dir);
    c.output = dir.string();
    c.workers = workers;
    std::ostringstream out, log;
    const int code = run_stage(Stage::run, c, out, log);
    const auto tree = csv_tree(dir);
    if (code != kExitOk) identical = false;
    if (reference.empty()) {
      reference = tree;
    } else {
      identical = identical && tree == reference;
    }
    fs::remove_all(dir);
  }
  verdict("determinism", identical && !reference.empty(),
          std::to_string(reference.size()) +
              " CSV files compared byte for byte across workers 1, 4, 16 and a rerun (" +
              num(elapsed(t0)) + " s)");
}

}  // namespace

int main() {
  std::cout << "acceptance: seed " << kSeed << ", " << kEnsemble << "-instance ensembles" << std::endl;
  try {
    const auto cal = check_calibration();
    check_integrator(cal);
    check_unitarity(cal);
    check_ensembles(cal);
    check_second_order(cal);
    check_conditions(cal);
    check_determinism();
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << "acceptance: " << failures << " criterion(s) failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
