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

#include "halfwave/simulation.hpp"

namespace fixtures {

namespace hw = halfwave;

/// Small acoustic run with a heterogeneous medium and a short, strong source
/// so that every field is busy within a few dozen steps.
inline hw::RunSpec acoustic(int nx = 19, int ny = 13) {
  hw::RunSpec s;
  s.equation = hw::Equation::Acoustic;
  s.grid.nx = nx;
  s.grid.ny = ny;
  s.grid.dx = 0.008;
  s.grid.dt = 1e-3;
  s.grid.nt = 40;
  s.medium = hw::build_homogeneous_acoustic(nx, ny, 1.0, 1.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const auto k = static_cast<std::size_t>(j) * nx + i;
      s.medium.beta()[k] = 1.0 + 0.3 * std::sin(0.7 * i + 0.3 * j);
      s.medium.rho_x()[k] = 1.2 + 0.2 * std::cos(0.5 * i - 0.2 * j);
      s.medium.rho_y()[k] = 0.9 + 0.1 * std::sin(0.9 * j);
    }
  }
  s.source.kind = hw::SourceKind::PressurePoint;
  s.source.ix = nx / 3;
  s.source.iy = ny / 3;
  s.source.wavelet = {40.0, 0.02, 50.0};
  s.receivers = {{2 * nx / 3, 2 * ny / 3}, {1, 1}};
  s.energy_cadence = 1;
  return s;
}

/// Small layered elastic run between two free surfaces.
inline hw::RunSpec elastic(int nx = 21, int ny = 14) {
  hw::RunSpec s;
  s.equation = hw::Equation::Elastic;
  s.grid.nx = nx;
  s.grid.ny = ny;
  s.grid.dx = 0.008;
  s.grid.dt = 5e-4;
  s.grid.nt = 40;
  s.grid.bc_y = hw::BoundaryCondition::FreeSurface;
  s.medium = hw::build_layered_elastic(nx, ny, hw::default_layers());
  s.source.kind = hw::SourceKind::VyPoint;
  s.source.ix = nx / 3;
  s.source.iy = 2;
  s.source.wavelet = {40.0, 0.01, 50.0};
  s.receivers = {{2 * nx / 3, 2}, {3, 0}};
  s.energy_cadence = 1;
  return s;
}

}  // namespace fixtures
