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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace halfwave {

/// Delay, in periods of the center frequency, that makes the wavelet start
/// numerically silent: |ricker(0)| ~ 1e-8 of the peak.
inline constexpr double kDefaultDelayPeriods = 1.5;

struct RickerSpec {
  double f_center = 5.0;  ///< Hz
  double delay = kDefaultDelayPeriods / 5.0;  ///< s
  double amplitude = 1.0;
};

/// amplitude * (1 - 2 pi^2 f^2 tau^2) * exp(-pi^2 f^2 tau^2), tau = t - delay.
inline double ricker(double t, const RickerSpec& spec) {
  const double tau = t - spec.delay;
  const double a = std::numbers::pi * std::numbers::pi * spec.f_center * spec.f_center * tau * tau;
  return spec.amplitude * (1.0 - 2.0 * a) * std::exp(-a);
}

enum class SourceKind : std::uint8_t { PressurePoint, VyPoint };

std::string_view to_string(SourceKind k);
SourceKind parse_source_kind(std::string_view text);

/// Point source. For PressurePoint, (ix, iy) indexes cells; for VyPoint it
/// indexes the y-face grid (row iy sits at depth iy + 1/2).
struct SourceSpec {
  SourceKind kind = SourceKind::PressurePoint;
  int ix = 0;
  int iy = 0;
  RickerSpec wavelet;
  bool enabled = true;
};

}  // namespace halfwave
