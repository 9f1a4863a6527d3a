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

#include "halfwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace halfwave {

void EnergySeries::push(double t, double e) {
  times.push_back(t);
  values.push_back(e);
  nonfinite.push_back(std::isfinite(e) ? 0 : 1);
}

std::string RangeFailure::message() const {
  return "non-finite value in field " + field + " at step " + std::to_string(step);
}

double acoustic_energy(const AcousticEnergyInput& in) {
  if (in.p_now.size() != in.p_next.size() || in.p_now.size() != in.beta.size() ||
      in.vx.size() != in.rho_x.size() || in.vy.size() != in.rho_y.size()) {
    throw std::invalid_argument("acoustic_energy: mismatched array sizes");
  }
  double potential = 0.0;
  for (std::size_t k = 0; k < in.p_now.size(); ++k) potential += in.beta[k] * in.p_now[k] * in.p_next[k];
  double kinetic_x = 0.0;
  for (std::size_t k = 0; k < in.vx.size(); ++k) kinetic_x += in.rho_x[k] * in.vx[k] * in.vx[k];
  double kinetic_y = 0.0;
  for (std::size_t k = 0; k < in.vy.size(); ++k) kinetic_y += in.rho_y[k] * in.vy[k] * in.vy[k];
  return 0.5 * in.dx * in.dx * (potential + kinetic_x + kinetic_y);
}

TraceComparison compare_traces(std::span<const double> a, std::span<const double> ref) {
  if (a.size() != ref.size()) {
    throw std::invalid_argument("compare_traces: length mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(ref.size()) + ")");
  }
  double diff2 = 0.0;
  double ref2 = 0.0;
  double a2 = 0.0;
  double cross = 0.0;
  double diff_max = 0.0;
  double ref_max = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - ref[k];
    diff2 += d * d;
    ref2 += ref[k] * ref[k];
    a2 += a[k] * a[k];
    cross += a[k] * ref[k];
    diff_max = std::max(diff_max, std::abs(d));
    ref_max = std::max(ref_max, std::abs(ref[k]));
  }
  TraceComparison c;
  c.l2_rel = diff2 == 0.0 ? 0.0 : std::sqrt(diff2 / ref2);
  c.linf_rel = diff_max == 0.0 ? 0.0 : diff_max / ref_max;
  c.lag0_correlation = (a2 > 0.0 && ref2 > 0.0) ? cross / std::sqrt(a2 * ref2) : 0.0;
  return c;
}

TraceComparison compare_traces(const TraceSeries& a, const TraceSeries& ref) {
  return compare_traces(std::span<const double>(a.samples), std::span<const double>(ref.samples));
}

EnergyDrift energy_drift(const EnergySeries& series, double t_source_off) {
  std::size_t first = 0;
  while (first < series.size() && !(series.times[first] > t_source_off)) ++first;
  const std::size_t n = series.size() - first;
  if (n == 0) throw std::invalid_argument("energy_drift: no samples after the source window");

  double mean = 0.0;
  double t_mean = 0.0;
  for (std::size_t k = first; k < series.size(); ++k) {
    mean += series.values[k];
    t_mean += series.times[k];
  }
  mean /= static_cast<double>(n);
  t_mean /= static_cast<double>(n);

  double dev = 0.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = first; k < series.size(); ++k) {
    const double e = series.values[k] - mean;
    const double t = series.times[k] - t_mean;
    dev = std::max(dev, std::abs(e));
    sxy += t * e;
    sxx += t * t;
  }
  EnergyDrift d;
  d.mean = mean;
  d.samples = n;
  d.rel_deviation = dev == 0.0 ? 0.0 : dev / std::abs(mean);
  d.trend_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return d;
}

double energy_history_difference(const EnergySeries& a, const EnergySeries& b) {
  if (a.size() != b.size()) throw std::invalid_argument("energy histories differ in length");
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff = std::max(diff, std::abs(a.values[k] - b.values[k]));
    scale = std::max(scale, std::abs(b.values[k]));
  }
  return diff == 0.0 ? 0.0 : diff / scale;
}

}  // namespace halfwave
