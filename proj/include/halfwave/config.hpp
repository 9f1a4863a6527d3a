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
#include <string>
#include <string_view>
#include <vector>

#include "halfwave/simulation.hpp"

namespace halfwave {

/// How the run's medium is obtained.
struct MediumConfig {
  enum class Builder { Homogeneous, Layered, File };
  Builder builder = Builder::Homogeneous;
  double rho = 1.0;
  double c = 1.0;   ///< acoustic speed, or cp for a homogeneous elastic medium
  double cs = 0.0;  ///< homogeneous elastic only
  std::vector<Layer> layers;
  std::filesystem::path path;
};

/// Full description of one experiment.
struct SimConfig {
  std::string name = "run";
  Equation equation = Equation::Acoustic;
  GridSpec grid;
  MediumConfig medium;
  SourceSpec source;
  std::vector<Receiver> receivers;
  Precision stencil_precision = Precision::FP64;
  Precision update_precision = Precision::FP64;
  UpdateMode mode;
  int energy_cadence = 10;
  InitialPulse initial;
  std::filesystem::path output_dir = "halfwave-out";

  /// Builds (or loads) the medium and checks everything a run needs.
  /// Throws std::invalid_argument or MediumError.
  RunSpec to_run_spec() const;
};

/// Built-in configurations: "paper-acoustic" and "paper-elastic" at full
/// 600x600 scale. With desk set, the grid shrinks 4x per axis keeping dx, dt (hence
/// ppw and CFL) and the source frequency, and runs 12000 steps.
SimConfig preset(std::string_view name, bool desk = false);
std::vector<std::string> preset_names();

/// Applies one "section.key=value" override. Unknown keys and malformed
/// values throw std::invalid_argument.
void apply_setting(SimConfig& cfg, std::string_view assignment);
void apply_setting(SimConfig& cfg, std::string_view section, std::string_view key, const std::string& value);

/// Reads an INI-style file ([section] then key = value lines, ';' or '#'
/// comments). An optional [run] preset key selects the starting point;
/// every other key overrides it.
SimConfig parse_config_file(const std::filesystem::path& path);

/// Writes the config in the file format accepted by parse_config_file.
std::string to_config_text(const SimConfig& cfg);

/// Applies HALFWAVE_OUT, when set, as the output directory.
void apply_environment(SimConfig& cfg);

struct AuditIssue {
  enum class Severity { Warning, Error };
  Severity severity;
  std::string quantity;
  double value;
  Precision format;
  std::string message;
};

struct AuditReport {
  std::vector<AuditIssue> issues;

  bool ok() const;
  std::string text() const;
};

/// Checks that medium values (and the stiffness they imply), dt, stencil
/// taps and the source peak sit inside the normal range of the format they
/// are materialized in. Values that overflow or round to zero are errors;
/// values in the subnormal range are warnings.
AuditReport range_audit(const SimConfig& cfg);
AuditReport range_audit(const SimConfig& cfg, const Medium& medium);

}  // namespace halfwave
