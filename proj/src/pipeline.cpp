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

#include "aqc/pipeline.hpp"

#include "aqc/calibration.hpp"
#include "aqc/conditions.hpp"
#include "aqc/csv.hpp"
#include "aqc/disorder.hpp"
#include "aqc/errors.hpp"
#include "aqc/parallel.hpp"
#include "aqc/propagation.hpp"
#include "aqc/spectrum.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

namespace fs = std::filesystem;

namespace aqc {

namespace {

fs::path out_dir(const ExperimentConfig& c) { return fs::path(c.output); }

fs::path chain_dir(const ExperimentConfig& c, int n) {
  return out_dir(c) / ("N" + std::to_string(n));
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SystemicFailure("cannot write " + path.string());
  writer(out);
  if (!out) throw SystemicFailure("write failed for " + path.string());
}

CalibrationOptions calibration_options(const ExperimentConfig& c) {
  CalibrationOptions o;
  o.epsilon0 = c.epsilon0;
  o.propagation_tol = c.propagation_tol;
  o.max_qubits = c.max_qubits;
  o.lambda = c.lambda;
  o.h = c.h;
  o.j = c.j;
  return o;
}

// Calibrated schedules for every N in n_list, read back from disk.
std::map<int, Schedule> load_schedules(const ExperimentConfig& c) {
  const fs::path path = out_dir(c) / "calibration.csv";
  if (!fs::exists(path)) {
    throw SystemicFailure(path.string() + " missing; run the calibrate stage first");
  }
  std::map<int, Schedule> schedules;
  for (const auto& r : read_calibration_csv(path)) {
    schedules.emplace(r.n_qubits, Schedule(r.t_f, c.epsilon0));
  }
  for (int n : c.n_list) {
    if (!schedules.count(n)) {
      throw SystemicFailure("calibration.csv has no entry for N = " + std::to_string(n));
    }
  }
  return schedules;
}

int tracked_levels(const ExperimentConfig& c, int n) {
  return static_cast<int>(std::min<long long>(c.levels, 1LL << n));
}

std::string artifact_stem(const DisorderSection& s, double sigma) {
  return s.name + "_" + sigma_tag(sigma);
}

bool all_numeric(const std::vector<std::string>& row, bool allow_empty = false) {
  for (const auto& f : row) {
    if (f.empty() && allow_empty) continue;
    try {
      csv::parse_real(f);
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string sigma_tag(double sigma) { return "s" + csv::format_real(sigma); }

void write_resolved_config(const ExperimentConfig& config) {
  write_file(out_dir(config) / "config.resolved",
             [&](std::ostream& o) { o << serialize_config(config); });
}

void stage_calibrate(const ExperimentConfig& config, std::ostream& log) {
  const CalibrationOptions options = calibration_options(config);
  std::vector<CalibrationRecord> records(config.n_list.size());
  parallel_for(records.size(), config.workers, [&](std::size_t i) {
    records[i] = calibrate_tf(config.n_list[i], config.target_fidelity, options);
  });
  for (const auto& r : records) {
    log << "calibrate: N=" << r.n_qubits << " t_f=" << csv::format_real(r.t_f)
        << " ns fidelity=" << csv::format_real(r.achieved_fidelity)
        << " delta_min=" << csv::format_real(r.delta_min) << '\n';
  }
  write_file(out_dir(config) / "calibration.csv",
             [&](std::ostream& o) { write_calibration_csv(o, records); });
}

void stage_spectrum(const ExperimentConfig& config, std::ostream& log) {
  const auto schedules = load_schedules(config);
  std::vector<SpectrumTrace> traces(config.n_list.size());
  parallel_for(traces.size(), config.workers, [&](std::size_t i) {
    const int n = config.n_list[i];
    traces[i] = gap_trace(config.ideal(n), schedules.at(n), config.spectrum_grid,
                          tracked_levels(config, n));
  });
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const int n = config.n_list[i];
    log << "spectrum: N=" << n << " delta_min=" << csv::format_real(traces[i].delta_min)
        << " s*=" << csv::format_real(traces[i].s_star) << '\n';
    write_file(chain_dir(config, n) / "gap_trace.csv",
               [&](std::ostream& o) { write_gap_trace_csv(o, traces[i]); });
  }
}

void stage_evolve(const ExperimentConfig& config, std::ostream& log) {
  const auto schedules = load_schedules(config);
  std::vector<PopulationTrace> traces(config.n_list.size());
  parallel_for(traces.size(), config.workers, [&](std::size_t i) {
    const int n = config.n_list[i];
    traces[i] = eigenbasis_populations(config.ideal(n), schedules.at(n),
                                       config.population_samples,
                                       tracked_levels(config, n));
  });
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const int n = config.n_list[i];
    log << "evolve: N=" << n << " final p0="
        << csv::format_real(traces[i].populations(traces[i].populations.rows() - 1, 0))
        << '\n';
    write_file(chain_dir(config, n) / "populations.csv",
               [&](std::ostream& o) { write_population_csv(o, traces[i]); });
  }
}

void stage_ensemble(const ExperimentConfig& config, std::ostream& log,
                    bool conditions_only) {
  const auto schedules = load_schedules(config);
  std::vector<EnsembleSummary> summaries;
  std::ostringstream failures;
  write_failures_csv(failures, 0, {}, {}, true);

  for (int n : config.n_list) {
    const Schedule& sched = schedules.at(n);
    const ChainParams ideal = config.ideal(n);
    int steps = config.ensemble_steps;
    if (steps == 0) {
      PropagationOptions prop;
      prop.target = problem_ground_state(ideal);
      steps = auto_propagate(IsingChainPath(ideal, sched, config.max_qubits),
                             config.propagation_tol, prop)
                  .steps_used;
    }
    for (const auto& section : config.disorder) {
      const double max_sigma =
          *std::max_element(section.sigma_list.begin(), section.sigma_list.end());
      const bool wants_conditions =
          std::count(section.conditions_n.begin(), section.conditions_n.end(), n) > 0;
      for (double sigma : section.sigma_list) {
        const bool with_conditions = wants_conditions && sigma == max_sigma;
        if (conditions_only && !with_conditions) continue;

        DisorderSpec spec;
        spec.sigma_rel = sigma;
        spec.targets = section.targets;
        spec.master_seed = config.master_seed;
        spec.ensemble_size = config.ensemble_size;
        EnsembleOptions options;
        options.workers = config.workers;
        options.steps = steps;
        options.gap_grid = config.ensemble_grid;
        options.with_conditions = with_conditions;
        options.condition_options.grid_points = config.condition_grid;
        options.condition_options.levels = tracked_levels(config, n);
        options.histogram_bins = config.histogram_bins;

        EnsembleResult result = run_ensemble(ideal, spec, sched, options);
        if (result.records.empty()) {
          throw SystemicFailure("every instance failed for N=" + std::to_string(n) +
                                " " + section.name + " sigma=" + csv::format_real(sigma) +
                                ": " + result.failures.front().message);
        }
        log << "ensemble: N=" << n << ' ' << section.name << " sigma="
            << csv::format_real(sigma) << " mean_ps=" << csv::format_real(result.summary.mean_ps)
            << " mean_dmin=" << csv::format_real(result.summary.mean_dmin)
            << " failed=" << result.failures.size() << '\n';

        const std::string stem = artifact_stem(section, sigma);
        const fs::path dir = chain_dir(config, n);
        write_file(dir / ("instances_" + stem + ".csv"),
                   [&](std::ostream& o) { write_instances_csv(o, result.records); });
        write_file(dir / ("dmin_hist_" + stem + ".csv"), [&](std::ostream& o) {
          write_histogram_csv(o, result.summary.dmin_histogram);
        });
        if (with_conditions) {
          std::vector<ScatterInput> rows;
          for (const auto& r : result.records) rows.push_back({r.index, *r.conditions, r.p_s});
          const ScatterInput ideal_row{-1, *result.ideal_conditions, result.ideal_ps};
          write_file(dir / ("scatter_" + stem + ".csv"), [&](std::ostream& o) {
            write_scatter_csv(o, scatter_export(ideal_row, rows));
          });
        }
        write_failures_csv(failures, n, spec, result.failures, false);
        summaries.push_back(result.summary);
      }
    }
  }
  if (conditions_only) return;
  write_file(out_dir(config) / "ensemble_summary.csv",
             [&](std::ostream& o) { write_summary_csv(o, summaries); });
  write_file(out_dir(config) / "ensemble_extra.csv",
             [&](std::ostream& o) { write_extra_csv(o, summaries); });
  write_file(out_dir(config) / "failures.csv",
             [&](std::ostream& o) { o << failures.str(); });
}

std::vector<std::string> validate_outputs(const fs::path& out) {
  std::vector<std::string> problems;
  if (!fs::is_directory(out)) return {out.string() + ": not a directory"};

  using Header = std::vector<std::string>;
  const std::map<std::string, Header> fixed{
      {"calibration.csv", {"N", "t_f_ns", "fidelity", "delta_min"}},
      {"ensemble_summary.csv",
       {"param_kind", "sigma_rel", "N", "size", "mean_ps", "std_ps", "mean_dmin",
        "std_dmin", "gs_match_fraction"}},
      {"ensemble_extra.csv",
       {"param_kind", "sigma_rel", "N", "mean_ps_matched", "matched_count", "failed_count"}},
      {"failures.csv", {"N", "param_kind", "sigma_rel", "index", "message"}},
  };
  const Header instances{"index", "seed", "ps", "dmin", "s_star", "gs_match",
                         "c1", "c2", "c3", "c4"};
  const Header histogram{"bin_left", "bin_right", "count"};
  const Header scatter{"index", "c1", "c2", "c3", "c4", "c1_rel",
                       "c2_rel", "c3_rel", "c4_rel", "ps"};
  const std::regex chain_dir_re("N[0-9]+");

  auto check_rows = [&](const std::string& name, const csv::Table& t, bool numeric,
                        bool allow_empty) {
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (t.rows[r].size() != t.header.size()) {
        problems.push_back(name + ": row " + std::to_string(r + 1) + " has wrong width");
        return;
      }
      if (numeric && !all_numeric(t.rows[r], allow_empty)) {
        problems.push_back(name + ": row " + std::to_string(r + 1) + " is not numeric");
        return;
      }
    }
  };
  auto level_header = [](const Header& h, const std::string& prefix, bool gap) {
    const std::size_t levels = h.size() - 1 - (gap ? 1 : 0);
    if (h.size() < (gap ? 3u : 2u) || h.front() != "s") return false;
    if (gap && h.back() != "gap") return false;
    for (std::size_t k = 0; k < levels; ++k) {
      if (h[k + 1] != prefix + std::to_string(k)) return false;
    }
    return true;
  };

  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(out)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  for (const auto& path : files) {
    const std::string rel = fs::relative(path, out).generic_string();
    const std::string name = path.filename().string();
    if (path.extension() != ".csv") continue;
    const csv::Table t = csv::read_table(path);
    const bool top = path.parent_path() == out;
    if (top) {
      const auto it = fixed.find(name);
      if (it == fixed.end()) {
        problems.push_back(rel + ": unexpected file");
      } else if (t.header != it->second) {
        problems.push_back(rel + ": bad header");
      } else {
        check_rows(rel, t, name == "calibration.csv", false);
      }
      continue;
    }
    if (!std::regex_match(path.parent_path().filename().string(), chain_dir_re)) {
      problems.push_back(rel + ": unexpected location");
      continue;
    }
    if (name == "gap_trace.csv") {
      if (!level_header(t.header, "E", true)) problems.push_back(rel + ": bad header");
      else check_rows(rel, t, true, false);
    } else if (name == "populations.csv") {
      if (!level_header(t.header, "p", false)) problems.push_back(rel + ": bad header");
      else check_rows(rel, t, true, false);
    } else if (name.rfind("instances_", 0) == 0) {
      if (t.header != instances) problems.push_back(rel + ": bad header");
      else check_rows(rel, t, true, true);
    } else if (name.rfind("scatter_", 0) == 0) {
      if (t.header != scatter) problems.push_back(rel + ": bad header");
      else check_rows(rel, t, true, false);
    } else if (name.rfind("dmin_hist_", 0) == 0) {
      if (t.header != histogram || t.rows.size() < 3) {
        problems.push_back(rel + ": bad header or too few rows");
        continue;
      }
      csv::Table body = t;
      body.rows.resize(t.rows.size() - 2);
      check_rows(rel, body, true, false);
      const auto& a = t.rows[t.rows.size() - 2];
      const auto& b = t.rows.back();
      if (a.size() != 2 || a[0] != "ideal_dmin" || b.size() != 2 || b[0] != "mean_dmin" ||
          !all_numeric({a[1], b[1]})) {
        problems.push_back(rel + ": bad footer");
      }
    } else {
      problems.push_back(rel + ": unexpected file");
    }
  }

  const fs::path resolved = out / "config.resolved";
  if (fs::exists(resolved)) {
    try {
      load_config(resolved);
    } catch (const std::exception& e) {
      problems.push_back("config.resolved: " + std::string(e.what()));
    }
  }
  return problems;
}

std::string stage_report(const ExperimentConfig& config) {
  const fs::path out = out_dir(config);
  const std::vector<std::string> problems = validate_outputs(out);
  if (!problems.empty()) {
    std::string message = "schema validation failed:";
    for (const auto& p : problems) message += "\n  " + p;
    throw SystemicFailure(message);
  }
  std::ostringstream text;
  text << "calibration\n";
  if (fs::exists(out / "calibration.csv")) {
    for (const auto& row : csv::read_table(out / "calibration.csv").rows) {
      text << "  N=" << row[0] << " t_f=" << row[1] << " ns fidelity=" << row[2]
           << " delta_min=" << row[3] << '\n';
    }
  }
  text << "ensembles\n";
  if (fs::exists(out / "ensemble_summary.csv")) {
    for (const auto& row : csv::read_table(out / "ensemble_summary.csv").rows) {
      text << "  " << row[0] << " sigma=" << row[1] << " N=" << row[2] << " size=" << row[3]
           << " mean_ps=" << row[4] << " std_ps=" << row[5] << " mean_dmin=" << row[6]
           << " std_dmin=" << row[7] << " gs_match=" << row[8] << '\n';
    }
  }
  if (fs::exists(out / "failures.csv")) {
    text << "failed instances: " << csv::read_table(out / "failures.csv").rows.size()
         << '\n';
  }
  text << "schema: ok\n";
  write_file(out / "report.txt", [&](std::ostream& o) { o << text.str(); });
  return text.str();
}

int run_stage(Stage stage, const ExperimentConfig& config, std::ostream& out,
              std::ostream& log) {
  try {
    validate_config(config);
    write_resolved_config(config);
    switch (stage) {
      case Stage::calibrate: stage_calibrate(config, log); break;
      case Stage::spectrum: stage_spectrum(config, log); break;
      case Stage::evolve: stage_evolve(config, log); break;
      case Stage::ensemble: stage_ensemble(config, log); break;
      case Stage::conditions: stage_ensemble(config, log, true); break;
      case Stage::report: out << stage_report(config); break;
      case Stage::run:
        stage_calibrate(config, log);
        stage_spectrum(config, log);
        stage_evolve(config, log);
        stage_ensemble(config, log);
        out << stage_report(config);
        break;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace aqc
