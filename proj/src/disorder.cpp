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

#include "aqc/disorder.hpp"

#include "aqc/csv.hpp"
#include "aqc/parallel.hpp"
#include "aqc/propagation.hpp"
#include "aqc/spectrum.hpp"
#include "aqc/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>

namespace aqc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void perturb(std::vector<double>& values, double sigma_rel, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  for (double& x : values) x += sigma_rel * std::abs(x) * z(rng);
}

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

struct Outcome {
  std::optional<InstanceRecord> record;
  std::string error;
};

}  // namespace

std::string targets_label(const ParamTargets& targets) {
  std::string label;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!label.empty()) label += '+';
    label += name;
  };
  add(targets.lambda, "lambda");
  add(targets.h, "h");
  add(targets.j, "j");
  return label;
}

ParamTargets parse_targets(const std::string& label) {
  ParamTargets t;
  for (const std::string& part : csv::split(label, '+')) {
    bool* slot = part == "lambda" ? &t.lambda
                 : part == "h"    ? &t.h
                 : part == "j"    ? &t.j
                                  : nullptr;
    if (!slot || *slot) {
      throw std::invalid_argument("unknown or repeated disorder target '" + part + "'");
    }
    *slot = true;
  }
  return t;
}

void DisorderSpec::validate() const {
  if (!(sigma_rel >= 0.0 && sigma_rel <= kMaxSigmaRel)) {
    throw std::invalid_argument("DisorderSpec: sigma_rel must lie in [0, 0.5]");
  }
  if (!targets.any()) throw std::invalid_argument("DisorderSpec: no target parameters");
  if (ensemble_size < 1) throw std::invalid_argument("DisorderSpec: ensemble_size < 1");
}

std::uint64_t instance_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(master_seed ^ splitmix64(index));
}

ChainParams sample_instance(const ChainParams& ideal, const DisorderSpec& spec,
                            std::uint64_t index) {
  spec.validate();
  ideal.validate();
  ChainParams p = ideal;
  std::mt19937_64 rng(instance_seed(spec.master_seed, index));
  if (spec.targets.lambda) perturb(p.lambda, spec.sigma_rel, rng);
  if (spec.targets.h) perturb(p.h, spec.sigma_rel, rng);
  if (spec.targets.j) perturb(p.j, spec.sigma_rel, rng);
  return p;
}

GroundStateMatch ground_state_matches(const ChainParams& instance,
                                      const ChainParams& ideal) {
  if (instance.n_qubits != ideal.n_qubits) {
    throw std::invalid_argument("ground_state_matches: chain lengths differ");
  }
  const auto [got, unique] = problem_ground_index(instance);
  const auto [want, ideal_unique] = problem_ground_index(ideal);
  (void)ideal_unique;
  if (!unique) return {false, true};
  return {got == want, false};
}

Histogram dmin_histogram(const std::vector<InstanceRecord>& records, int bins,
                         double ideal_dmin) {
  if (records.empty()) throw std::invalid_argument("dmin_histogram: no records");
  if (bins < 1) throw std::invalid_argument("dmin_histogram: bins < 1");
  std::vector<double> d;
  d.reserve(records.size());
  for (const auto& r : records) d.push_back(r.delta_min);
  const auto [lo_it, hi_it] = std::minmax_element(d.begin(), d.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  Histogram hist;
  hist.ideal_dmin = ideal_dmin;
  hist.mean_dmin = stats::mean(d);
  if (hi == lo) {
    hist.edges = {lo, hi};
    hist.counts = {static_cast<long long>(d.size())};
    return hist;
  }
  const double width = (hi - lo) / bins;
  hist.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) hist.edges[static_cast<std::size_t>(b)] = lo + b * width;
  hist.edges.back() = hi;
  hist.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : d) {
    const int b = std::min(bins - 1, static_cast<int>((v - lo) / width));
    ++hist.counts[static_cast<std::size_t>(b)];
  }
  return hist;
}

EnsembleResult run_ensemble(const ChainParams& ideal, const DisorderSpec& spec,
                            const Schedule& sched, const EnsembleOptions& options) {
  spec.validate();
  ideal.validate();
  if (options.steps < 0 || (options.steps > 0 && options.steps < kMinSteps)) {
    throw std::invalid_argument("run_ensemble: steps must be 0 or >= 10");
  }

  EnsembleResult result;
  const IsingChainPath ideal_path(ideal, sched);
  PropagationOptions prop;
  prop.target = problem_ground_state(ideal);
  if (options.steps == 0) {
    const EvolutionResult probe = auto_propagate(ideal_path, options.propagation_tol, prop);
    result.steps = probe.steps_used;
  } else {
    result.steps = options.steps;
  }
  result.ideal_ps = propagate(ideal_path, result.steps, prop).success_probability;
  result.ideal_dmin = locate_minimum_gap(ideal_path, options.gap_grid).delta_min;
  if (options.with_conditions) {
    result.ideal_conditions = evaluate_conditions(ideal, sched, options.condition_options);
  }

  const auto count = static_cast<std::size_t>(spec.ensemble_size);
  std::vector<Outcome> outcomes(count);
  parallel_for(count, options.workers, [&](std::size_t i) {
    try {
      InstanceRecord rec;
      rec.index = static_cast<long long>(i);
      rec.seed = instance_seed(spec.master_seed, i);
      rec.params = sample_instance(ideal, spec, i);
      const GroundStateMatch match = ground_state_matches(rec.params, ideal);
      rec.gs_match = match.matches;
      rec.gs_degenerate = match.degenerate;
      const IsingChainPath path(rec.params, sched);
      rec.p_s = propagate(path, result.steps, prop).success_probability;
      const MinimumGap gap = locate_minimum_gap(path, options.gap_grid);
      rec.delta_min = gap.delta_min;
      rec.s_star = gap.s_star;
      if (options.with_conditions) {
        rec.conditions = evaluate_conditions(rec.params, sched, options.condition_options);
      }
      outcomes[i].record = std::move(rec);
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });

  for (std::size_t i = 0; i < count; ++i) {
    if (outcomes[i].record) {
      result.records.push_back(std::move(*outcomes[i].record));
    } else {
      result.failures.push_back({static_cast<long long>(i), outcomes[i].error});
    }
  }

  EnsembleSummary& s = result.summary;
  s.spec = spec;
  s.n_qubits = ideal.n_qubits;
  s.size = static_cast<int>(result.records.size());
  s.failed_count = static_cast<int>(result.failures.size());
  if (result.records.empty()) return result;

  std::vector<double> ps, dmin, matched;
  for (const auto& r : result.records) {
    ps.push_back(r.p_s);
    dmin.push_back(r.delta_min);
    if (r.gs_match) matched.push_back(r.p_s);
  }
  s.mean_ps = stats::mean(ps);
  s.std_ps = stats::sample_std(ps);
  s.mean_dmin = stats::mean(dmin);
  s.std_dmin = stats::sample_std(dmin);
  s.matched_count = static_cast<int>(matched.size());
  s.gs_match_fraction = static_cast<double>(matched.size()) / static_cast<double>(s.size);
  s.mean_ps_matched = matched.empty() ? 0.0 : stats::mean(matched);
  s.dmin_histogram = dmin_histogram(result.records, options.histogram_bins, result.ideal_dmin);
  return result;
}

void write_instances_csv(std::ostream& out,
                         const std::vector<InstanceRecord>& records) {
  csv::write_row(out, {"index", "seed", "ps", "dmin", "s_star", "gs_match", "c1",
                       "c2", "c3", "c4"});
  for (const auto& r : records) {
    std::vector<std::string> f{std::to_string(r.index), std::to_string(r.seed),
                               csv::format_real(r.p_s), csv::format_real(r.delta_min),
                               csv::format_real(r.s_star), r.gs_match ? "1" : "0"};
    if (r.conditions) {
      for (double c : {r.conditions->c1, r.conditions->c2, r.conditions->c3,
                       r.conditions->c4}) {
        f.push_back(csv::format_real(c));
      }
    } else {
      f.insert(f.end(), 4, "");
    }
    csv::write_row(out, f);
  }
}

void write_summary_csv(std::ostream& out,
                       const std::vector<EnsembleSummary>& summaries) {
  csv::write_row(out, {"param_kind", "sigma_rel", "N", "size", "mean_ps", "std_ps",
                       "mean_dmin", "std_dmin", "gs_match_fraction"});
  for (const auto& s : summaries) {
    csv::write_row(out, {targets_label(s.spec.targets), csv::format_real(s.spec.sigma_rel),
                         std::to_string(s.n_qubits), std::to_string(s.size),
                         csv::format_real(s.mean_ps), csv::format_real(s.std_ps),
                         csv::format_real(s.mean_dmin), csv::format_real(s.std_dmin),
                         csv::format_real(s.gs_match_fraction)});
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram) {
  csv::write_row(out, {"bin_left", "bin_right", "count"});
  for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
    csv::write_row(out, {csv::format_real(histogram.edges[b]),
                         csv::format_real(histogram.edges[b + 1]),
                         std::to_string(histogram.counts[b])});
  }
  csv::write_row(out, {"ideal_dmin", csv::format_real(histogram.ideal_dmin)});
  csv::write_row(out, {"mean_dmin", csv::format_real(histogram.mean_dmin)});
}

void write_extra_csv(std::ostream& out,
                     const std::vector<EnsembleSummary>& summaries) {
  csv::write_row(out, {"param_kind", "sigma_rel", "N", "mean_ps_matched",
                       "matched_count", "failed_count"});
  for (const auto& s : summaries) {
    csv::write_row(out, {targets_label(s.spec.targets), csv::format_real(s.spec.sigma_rel),
                         std::to_string(s.n_qubits), csv::format_real(s.mean_ps_matched),
                         std::to_string(s.matched_count), std::to_string(s.failed_count)});
  }
}

void write_failures_csv(std::ostream& out, int n_qubits, const DisorderSpec& spec,
                        const std::vector<InstanceFailure>& failures, bool header) {
  if (header) csv::write_row(out, {"N", "param_kind", "sigma_rel", "index", "message"});
  for (const auto& f : failures) {
    csv::write_row(out, {std::to_string(n_qubits), targets_label(spec.targets),
                         csv::format_real(spec.sigma_rel), std::to_string(f.index),
                         one_line(f.message)});
  }
}

}  // namespace aqc
