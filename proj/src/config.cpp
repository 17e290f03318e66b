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

#include "aqc/config.hpp"

#include "aqc/errors.hpp"
#include "aqc/propagation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

namespace aqc {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> list_items(const std::string& key, std::string value) {
  if (!value.empty() && value.front() == '[') {
    if (value.back() != ']') throw ConfigError(key, "unbalanced brackets");
    value = value.substr(1, value.size() - 2);
  }
  std::vector<std::string> items;
  if (trim(value).empty()) return items;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(key, "empty list item");
    items.push_back(item);
  }
  return items;
}

double to_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a real number, got '" + text + "'");
  }
  return v;
}

template <typename Int>
Int to_integer(const std::string& key, const std::string& text) {
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return v;
}

std::vector<double> to_reals(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : list_items(key, value)) out.push_back(to_real(key, item));
  return out;
}

std::vector<int> to_integers(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const auto& item : list_items(key, value)) out.push_back(to_integer<int>(key, item));
  return out;
}

std::string real_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F render) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += render(values[i]);
  }
  return out;
}

std::vector<DisorderSection> default_sections(const std::vector<double>& sigma) {
  return {{"lambda", {true, false, false}, sigma, {5}},
          {"h", {false, true, false}, sigma, {}},
          {"j", {false, false, true}, sigma, {}}};
}

struct PendingSection {
  DisorderSection section;
  bool has_targets = false;
  bool has_sigma = false;
};

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(key, message);
}

}  // namespace

Profile parse_profile(const std::string& name) {
  if (name == "paper") return Profile::paper;
  if (name == "ci") return Profile::ci;
  throw ConfigError("profile", "expected 'paper' or 'ci', got '" + name + "'");
}

ExperimentConfig default_config(Profile profile) {
  ExperimentConfig c;
  if (profile == Profile::ci) c.ensemble_size = 128;
  c.disorder = default_sections(c.sigma_list);
  return c;
}

ExperimentConfig parse_config(const std::string& text, Profile profile) {
  ExperimentConfig c = default_config(profile);
  std::vector<PendingSection> sections;
  std::set<std::string> seen_top;
  std::set<std::string> seen_section;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;

    if (line.front() == '[') {
      require(line.back() == ']', where, "malformed section header");
      const std::string header = trim(std::string_view(line).substr(1, line.size() - 2));
      require(header.rfind("disorder.", 0) == 0, where,
              "unknown section '" + header + "'");
      const std::string name = header.substr(9);
      require(!name.empty() && name.find_first_of(" ,/\\") == std::string::npos, where,
              "invalid section name '" + name + "'");
      for (const auto& s : sections) {
        require(s.section.name != name, header, "section repeated");
      }
      sections.push_back({{name, {}, {}, {}}, false, false});
      seen_section.clear();
      continue;
    }

    const auto eq = line.find('=');
    require(eq != std::string::npos, where, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    require(!key.empty(), where, "empty key");

    if (!sections.empty()) {
      PendingSection& s = sections.back();
      const std::string full = "disorder." + s.section.name + "." + key;
      require(seen_section.insert(key).second, full, "key repeated");
      if (key == "targets") {
        try {
          s.section.targets = parse_targets(value);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(full, e.what());
        }
        s.has_targets = true;
      } else if (key == "sigma_list") {
        s.section.sigma_list = to_reals(full, value);
        s.has_sigma = true;
      } else if (key == "conditions_n") {
        s.section.conditions_n = to_integers(full, value);
      } else {
        throw ConfigError(full, "unknown key");
      }
      continue;
    }

    require(seen_top.insert(key).second, key, "key repeated");
    if (key == "n_list") c.n_list = to_integers(key, value);
    else if (key == "lambda") c.lambda = to_real(key, value);
    else if (key == "h") c.h = to_real(key, value);
    else if (key == "j") c.j = to_real(key, value);
    else if (key == "epsilon0") c.epsilon0 = to_real(key, value);
    else if (key == "target_fidelity") c.target_fidelity = to_real(key, value);
    else if (key == "sigma_list") c.sigma_list = to_reals(key, value);
    else if (key == "ensemble_size") c.ensemble_size = to_integer<int>(key, value);
    else if (key == "master_seed") c.master_seed = to_integer<std::uint64_t>(key, value);
    else if (key == "spectrum_grid") c.spectrum_grid = to_integer<int>(key, value);
    else if (key == "ensemble_grid") c.ensemble_grid = to_integer<int>(key, value);
    else if (key == "condition_grid") c.condition_grid = to_integer<int>(key, value);
    else if (key == "levels") c.levels = to_integer<int>(key, value);
    else if (key == "population_samples") c.population_samples = to_integer<int>(key, value);
    else if (key == "propagation_tol") c.propagation_tol = to_real(key, value);
    else if (key == "ensemble_steps") c.ensemble_steps = to_integer<int>(key, value);
    else if (key == "workers") c.workers = to_integer<int>(key, value);
    else if (key == "output") {
      require(!value.empty(), key, "empty path");
      c.output = value;
    }
    else if (key == "histogram_bins") c.histogram_bins = to_integer<int>(key, value);
    else if (key == "max_qubits") c.max_qubits = to_integer<int>(key, value);
    else throw ConfigError(key, "unknown key");
  }

  if (sections.empty()) {
    c.disorder = default_sections(c.sigma_list);
  } else {
    c.disorder.clear();
    for (auto& s : sections) {
      require(s.has_targets, "disorder." + s.section.name + ".targets", "missing");
      if (!s.has_sigma) s.section.sigma_list = c.sigma_list;
      c.disorder.push_back(std::move(s.section));
    }
  }
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, Profile profile) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), profile);
}

void validate_config(const ExperimentConfig& c) {
  require(c.max_qubits >= 2 && c.max_qubits <= 20, "max_qubits", "must lie in [2, 20]");
  require(!c.n_list.empty(), "n_list", "must not be empty");
  std::set<int> ns;
  for (int n : c.n_list) {
    require(n >= 2 && n <= c.max_qubits, "n_list",
            "entries must lie in [2, max_qubits]");
    require(ns.insert(n).second, "n_list", "duplicate entry");
  }
  for (auto [key, v] : {std::pair{"lambda", c.lambda}, {"h", c.h}, {"j", c.j}}) {
    require(std::isfinite(v), key, "must be finite");
  }
  require(c.epsilon0 > 0.0, "epsilon0", "must be positive");
  require(c.target_fidelity >= 0.0 && c.target_fidelity < 1.0, "target_fidelity",
          "must lie in [0, 1)");
  auto check_sigma = [](const std::string& key, const std::vector<double>& list) {
    require(!list.empty(), key, "must not be empty");
    for (double s : list) {
      require(s >= 0.0 && s <= kMaxSigmaRel, key, "entries must lie in [0, 0.5]");
    }
  };
  check_sigma("sigma_list", c.sigma_list);
  require(c.ensemble_size >= 1, "ensemble_size", "must be >= 1");
  require(c.spectrum_grid >= 11, "spectrum_grid", "must be >= 11");
  require(c.ensemble_grid >= 11, "ensemble_grid", "must be >= 11");
  require(c.condition_grid >= 11, "condition_grid", "must be >= 11");
  require(c.levels >= 2, "levels", "must be >= 2");
  require(c.population_samples >= 2, "population_samples", "must be >= 2");
  require(c.propagation_tol > 0.0, "propagation_tol", "must be positive");
  require(c.ensemble_steps == 0 || c.ensemble_steps >= kMinSteps, "ensemble_steps",
          "must be 0 (auto) or >= 10");
  require(c.workers >= 1, "workers", "must be >= 1");
  require(!c.output.empty(), "output", "empty path");
  require(c.histogram_bins >= 1, "histogram_bins", "must be >= 1");
  std::set<std::string> names;
  for (const auto& s : c.disorder) {
    const std::string prefix = "disorder." + s.name;
    require(names.insert(s.name).second, prefix, "section repeated");
    require(s.targets.any(), prefix + ".targets", "must name at least one parameter");
    check_sigma(prefix + ".sigma_list", s.sigma_list);
    for (int n : s.conditions_n) {
      require(ns.count(n) == 1, prefix + ".conditions_n", "entries must appear in n_list");
    }
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  auto ints = [](const std::vector<int>& v) {
    return "[" + join(v, [](int x) { return std::to_string(x); }) + "]";
  };
  auto reals = [](const std::vector<double>& v) { return "[" + join(v, real_text) + "]"; };
  std::ostringstream out;
  out << "n_list = " << ints(c.n_list) << '\n'
      << "lambda = " << real_text(c.lambda) << '\n'
      << "h = " << real_text(c.h) << '\n'
      << "j = " << real_text(c.j) << '\n'
      << "epsilon0 = " << real_text(c.epsilon0) << '\n'
      << "target_fidelity = " << real_text(c.target_fidelity) << '\n'
      << "sigma_list = " << reals(c.sigma_list) << '\n'
      << "ensemble_size = " << c.ensemble_size << '\n'
      << "master_seed = " << c.master_seed << '\n'
      << "spectrum_grid = " << c.spectrum_grid << '\n'
      << "ensemble_grid = " << c.ensemble_grid << '\n'
      << "condition_grid = " << c.condition_grid << '\n'
      << "levels = " << c.levels << '\n'
      << "population_samples = " << c.population_samples << '\n'
      << "propagation_tol = " << real_text(c.propagation_tol) << '\n'
      << "ensemble_steps = " << c.ensemble_steps << '\n'
      << "workers = " << c.workers << '\n'
      << "output = " << c.output << '\n'
      << "histogram_bins = " << c.histogram_bins << '\n'
      << "max_qubits = " << c.max_qubits << '\n';
  for (const auto& s : c.disorder) {
    out << "\n[disorder." << s.name << "]\n"
        << "targets = " << targets_label(s.targets) << '\n'
        << "sigma_list = " << reals(s.sigma_list) << '\n'
        << "conditions_n = " << ints(s.conditions_n) << '\n';
  }
  return out.str();
}

}  // namespace aqc
