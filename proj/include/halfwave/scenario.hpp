// Copyright 2026 The Halfwave Authors
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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "halfwave/config.hpp"

namespace halfwave {

/// Shortest decimal that reads back to the same binary64 value.
std::string format_number(double x);

/// "step,time,r0_P,..." with one row per completed step.
std::string traces_csv(const RunOutput& out);
/// "time,energy" with one row per energy sample.
std::string energy_csv(const EnergySeries& series);

/// Metrics of one run against a reference run of the same scenario.
struct RunComparison {
  std::vector<std::pair<std::string, TraceComparison>> traces;
  std::optional<double> final_energy_rel;
  std::optional<double> energy_history_rel;
};

/// Compares traces column by column and energies over the common samples.
/// Throws std::invalid_argument if the runs have different trace layouts.
/// With a stride above one, `run` is a finer run and sample k*stride + stride-1
/// lines up with reference sample k; energies are then not compared.
RunComparison compare_runs(const RunOutput& run, const RunOutput& reference, int stride = 1);

struct ScenarioResult {
  SimConfig config;
  RunSpec spec;
  RunOutput output;
  std::optional<EnergyDrift> drift;
  std::optional<RunComparison> comparison;

  bool ok() const { return !output.failure.has_value(); }
};

nlohmann::json summary_json(const ScenarioResult& result);

/// Runs the config and writes traces.csv (skipped without receivers),
/// energy.csv and summary.json into `dir`. With a reference, the summary also
/// carries comparison metrics.
ScenarioResult run_scenario(const SimConfig& cfg, const std::filesystem::path& dir,
                            const RunOutput* reference = nullptr, int stride = 1);

/// Writes a two-column ASCII file, one "x y" pair per line.
void write_plot_data(const std::filesystem::path& path, std::string_view title, const std::vector<double>& x,
                     const std::vector<double>& y);

/// One member of a reproduction suite.
struct ReproVariant {
  std::string label;
  SimConfig config;
  /// Samples of this run that line up with the reference's steps (finer runs
  /// take more steps per reference step).
  int stride = 1;
};

struct ReproSuite {
  std::string name;
  std::vector<ReproVariant> variants;  ///< the first one is the reference
};

std::vector<std::string> repro_names();
ReproSuite repro_suite(std::string_view name, bool desk);

/// Runs every variant of the suite below `root/<suite>/<label>/` and writes
/// trace, energy and zoom-in plot data for each into `root/<suite>/plotdata`.
/// Returns the results in variant order.
std::vector<ScenarioResult> run_repro(const ReproSuite& suite, const std::filesystem::path& root);

}  // namespace halfwave
