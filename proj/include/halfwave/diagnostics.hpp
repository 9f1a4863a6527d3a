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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace halfwave {

/// Global discrete energy sampled over time, always binary64.
struct EnergySeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<std::uint8_t> nonfinite;

  void push(double t, double e);
  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
};

/// One field recorded at one receiver, one sample per time step.
struct TraceSeries {
  std::string field;
  int receiver = 0;
  std::vector<double> samples;

  std::string column_name() const { return "r" + std::to_string(receiver) + "_" + field; }
};

/// A non-finite value detected in a field during a step.
struct RangeFailure {
  int step = 0;
  std::string field;

  std::string message() const;
};

/// Acoustic energy with consecutive-level pressure pairing:
///   E = dx^2 / 2 * [ sum beta P^n P^{n+1} + sum rho_x Vx^2 + sum rho_y Vy^2 ]
/// with velocities at n + 1/2. Each sum runs in row-major order in binary64.
struct AcousticEnergyInput {
  std::span<const double> p_now;
  std::span<const double> p_next;
  std::span<const double> vx;
  std::span<const double> vy;
  std::span<const double> beta;
  std::span<const double> rho_x;
  std::span<const double> rho_y;
  double dx = 1.0;
};

double acoustic_energy(const AcousticEnergyInput& in);

struct TraceComparison {
  double l2_rel = 0.0;    ///< ||a - ref|| / ||ref||
  double linf_rel = 0.0;  ///< max|a - ref| / max|ref|
  double lag0_correlation = 0.0;
};

/// Compares `a` against the reference `ref`. Throws std::invalid_argument on a
/// length mismatch.
TraceComparison compare_traces(std::span<const double> a, std::span<const double> ref);
TraceComparison compare_traces(const TraceSeries& a, const TraceSeries& ref);

struct EnergyDrift {
  double rel_deviation = 0.0;  ///< max |E - mean| / |mean| over the window
  double trend_slope = 0.0;    ///< least-squares dE/dt over the window
  double mean = 0.0;
  std::size_t samples = 0;
};

/// Drift over the samples with t > t_source_off. Throws std::invalid_argument
/// if the window is empty.
EnergyDrift energy_drift(const EnergySeries& series, double t_source_off);

/// Relative difference of two energy histories sampled at the same times:
/// max |a - b| / max |b|.
double energy_history_difference(const EnergySeries& a, const EnergySeries& b);

}  // namespace halfwave
