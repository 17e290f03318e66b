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

// Gaussian disorder ensembles around an ideal chain. A targeted parameter x
// is drawn as x = xbar + sigma_rel |xbar| z with z ~ N(0, 1). Draws for
// instance i come from a private stream seeded by (master_seed, i), in the
// fixed order lambda_0.., h_0.., J_0.. over targeted kinds only, so the same
// z is reused across sigma values.

#pragma once

#include "aqc/conditions.hpp"
#include "aqc/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aqc {

inline constexpr double kMaxSigmaRel = 0.5;

struct ParamTargets {
  bool lambda = false;
  bool h = false;
  bool j = false;

  bool any() const noexcept { return lambda || h || j; }
  bool operator==(const ParamTargets&) const = default;
};

// "lambda", "h", "j", or a '+'-joined combination such as "h+j".
std::string targets_label(const ParamTargets& targets);
// Inverse of targets_label; throws std::invalid_argument.
ParamTargets parse_targets(const std::string& label);

struct DisorderSpec {
  double sigma_rel = 0.0;
  ParamTargets targets;
  std::uint64_t master_seed = 0;
  int ensemble_size = 1024;

  // Throws std::invalid_argument on sigma outside [0, 0.5], no targets or
  // ensemble_size < 1.
  void validate() const;
};

std::uint64_t instance_seed(std::uint64_t master_seed, std::uint64_t index);

ChainParams sample_instance(const ChainParams& ideal, const DisorderSpec& spec,
                            std::uint64_t index);

struct GroundStateMatch {
  bool matches = false;
  bool degenerate = false;  // tie in the instance's H_P; reported as no match
};

// Compares the argmin bitstrings of the diagonal problem Hamiltonians.
GroundStateMatch ground_state_matches(const ChainParams& instance,
                                      const ChainParams& ideal);

struct InstanceRecord {
  long long index = 0;
  std::uint64_t seed = 0;
  ChainParams params;
  double p_s = 0.0;
  double delta_min = 0.0;
  double s_star = 0.0;
  bool gs_match = false;
  bool gs_degenerate = false;
  std::optional<ConditionReport> conditions;
};

struct InstanceFailure {
  long long index = 0;
  std::string message;
};

struct Histogram {
  std::vector<double> edges;  // bins + 1
  std::vector<long long> counts;
  double ideal_dmin = 0.0;
  double mean_dmin = 0.0;
};

// Uniform bins over [min, max] of the recorded delta_min; a single bin when
// all values coincide. Throws std::invalid_argument on empty input.
Histogram dmin_histogram(const std::vector<InstanceRecord>& records, int bins,
                         double ideal_dmin);

struct EnsembleSummary {
  DisorderSpec spec;
  int n_qubits = 0;
  int size = 0;  // successful instances
  double mean_ps = 0.0;
  double std_ps = 0.0;
  double mean_dmin = 0.0;
  double std_dmin = 0.0;
  double gs_match_fraction = 0.0;
  double mean_ps_matched = 0.0;  // over gs_match instances only
  int matched_count = 0;
  int failed_count = 0;
  Histogram dmin_histogram;
};

struct EnsembleOptions {
  int workers = 1;
  // Fixed step count for every instance; 0 takes it from auto_propagate on
  // the ideal instance at the same schedule.
  int steps = 0;
  double propagation_tol = 1e-8;
  int gap_grid = 201;  // eigenvalue-only scan for delta_min
  bool with_conditions = false;
  ConditionOptions condition_options;
  int histogram_bins = 20;
};

struct EnsembleResult {
  EnsembleSummary summary;
  std::vector<InstanceRecord> records;  // ascending index, failures removed
  std::vector<InstanceFailure> failures;
  int steps = 0;
  double ideal_ps = 0.0;
  double ideal_dmin = 0.0;
  std::optional<ConditionReport> ideal_conditions;
};

// Each instance starts in the ground state of its own H(0) and is scored
// against the ideal chain's final ground state. Per-instance exceptions are
// collected as failures. Results do not depend on options.workers.
EnsembleResult run_ensemble(const ChainParams& ideal, const DisorderSpec& spec,
                            const Schedule& sched,
                            const EnsembleOptions& options = {});

// instances.csv: "index,seed,ps,dmin,s_star,gs_match,c1,c2,c3,c4".
void write_instances_csv(std::ostream& out,
                         const std::vector<InstanceRecord>& records);
// ensemble_summary.csv: "param_kind,sigma_rel,N,size,mean_ps,std_ps,
// mean_dmin,std_dmin,gs_match_fraction".
void write_summary_csv(std::ostream& out,
                       const std::vector<EnsembleSummary>& summaries);
// dmin_hist.csv: "bin_left,bin_right,count" then "ideal_dmin,<v>" and
// "mean_dmin,<v>".
void write_histogram_csv(std::ostream& out, const Histogram& histogram);
// ensemble_extra.csv: "param_kind,sigma_rel,N,mean_ps_matched,matched_count,
// failed_count".
void write_extra_csv(std::ostream& out,
                     const std::vector<EnsembleSummary>& summaries);
// failures.csv: "N,param_kind,sigma_rel,index,message".
void write_failures_csv(std::ostream& out, int n_qubits,
                        const DisorderSpec& spec,
                        const std::vector<InstanceFailure>& failures,
                        bool header = true);

}  // namespace aqc
