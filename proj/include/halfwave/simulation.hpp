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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "halfwave/diagnostics.hpp"
#include "halfwave/efsum.hpp"
#include "halfwave/grid.hpp"
#include "halfwave/medium.hpp"
#include "halfwave/precision.hpp"
#include "halfwave/source.hpp"

namespace halfwave {

enum class Equation : std::uint8_t { Acoustic, Elastic };

std::string_view to_string(Equation e);
Equation parse_equation(std::string_view text);

/// How the solution update adds its increment: plain addition, or an
/// error-free transformation whose residual is carried in the right-hand-side
/// storage to the next step.
struct UpdateMode {
  bool compensated = false;
  SumVariant variant = SumVariant::OP3;

  static UpdateMode baseline() { return {}; }
  static UpdateMode with(SumVariant v) { return {true, v}; }
  std::string label() const;
};

/// Optional Gaussian initial pressure, amplitude * exp(-r^2 / (2 width^2)) in
/// cell units, placed on P (acoustic) or on both normal stresses (elastic).
struct InitialPulse {
  double amplitude = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 1.0;
};

struct Receiver {
  int ix = 0;
  int iy = 0;
};

/// Everything a solver needs for one run.
struct RunSpec {
  Equation equation = Equation::Acoustic;
  GridSpec grid;
  Medium medium;
  SourceSpec source;
  std::vector<Receiver> receivers;
  Precision stencil_precision = Precision::FP64;
  Precision update_precision = Precision::FP64;
  UpdateMode mode;
  int energy_cadence = 10;
  InitialPulse initial;
};

struct RunOutput {
  std::vector<TraceSeries> traces;  ///< receiver-major, then field order
  std::vector<double> trace_times;  ///< (step + 1) * dt
  EnergySeries energy;
  std::optional<RangeFailure> failure;
  int steps_completed = 0;
  double wall_seconds = 0.0;
  std::size_t state_bytes = 0;
};

/// Type-erased time stepper over a (stencil, update) precision pair.
class Solver {
 public:
  virtual ~Solver() = default;

  /// Advances one full leapfrog step. Returns the first non-finite field
  /// detected in this step, if any.
  virtual std::optional<RangeFailure> step() = 0;
  virtual int steps_done() const = 0;

  /// Discrete energy pairing the solution levels before and after the last
  /// step (the initial level with itself before any step).
  virtual double energy() const = 0;

  virtual const std::vector<std::string>& field_names() const = 0;
  /// Field value at the nearest staggered point, widened to binary64.
  virtual double sample(std::size_t field, const Receiver& r) const = 0;
  /// Whole field (or its right-hand-side/compensation companion) widened to
  /// binary64, row-major over its sub-grid.
  virtual std::vector<double> field_values(std::size_t field) const = 0;
  virtual std::vector<double> rhs_values(std::size_t field) const = 0;
  /// Bytes held by solution and right-hand-side fields.
  virtual std::size_t state_bytes() const = 0;
};

/// Validates a RunSpec (grid, medium kind and size, CFL, source and receiver
/// indices) and builds the solver. Throws std::invalid_argument or
/// MediumError on invalid input.
std::unique_ptr<Solver> make_solver(const RunSpec& spec);

/// Steps nt times, sampling every receiver each step and the energy every
/// `energy_cadence` steps. Stops early at the first range failure.
RunOutput run(const RunSpec& spec);

/// Time after which the source is considered off: twice its delay.
inline double source_off_time(const RunSpec& spec) {
  return spec.source.enabled ? 2.0 * spec.source.wavelet.delay : 0.0;
}

namespace detail {

void validate_common(const RunSpec& spec, MediumKind kind);
double gaussian(const InitialPulse& pulse, double x, double y);

}  // namespace detail

}  // namespace halfwave
