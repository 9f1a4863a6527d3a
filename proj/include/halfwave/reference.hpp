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

#include <optional>
#include <string>
#include <vector>

#include "halfwave/diagnostics.hpp"
#include "halfwave/efsum.hpp"
#include "halfwave/grid.hpp"
#include "halfwave/precision.hpp"
#include "halfwave/simulation.hpp"

// Serial reference time stepper. It has no halos and no templates: every
// value is a PScalar, every operation goes through the precision module's
// correctly rounded scalar ops, and boundary conditions are applied by
// mapping out-of-range indices back into the grid. The optimized solvers must
// reproduce it bit for bit.

namespace halfwave::reference {

struct ScalarField {
  Stagger stagger = Stagger::Cell;
  int nx = 0;
  int ny = 0;
  std::vector<double> v;

  ScalarField() = default;
  ScalarField(Stagger s, Extent e) : stagger(s), nx(e.nx), ny(e.ny), v(static_cast<std::size_t>(e.nx) * e.ny) {}

  double& at(int i, int j) { return v[static_cast<std::size_t>(j) * nx + i]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(j) * nx + i]; }
};

/// Value at any integer (i, j): x wraps, y wraps or mirrors across the free
/// surface with the parity's sign.
double read(const ScalarField& f, int i, int j, BoundaryCondition bc_y, Parity parity);

class ReferenceSolver {
 public:
  explicit ReferenceSolver(const RunSpec& spec);

  std::optional<RangeFailure> step();
  int steps_done() const { return step_; }
  double energy() const;

  /// Same field order as the optimized solver's field_names().
  const std::vector<ScalarField>& fields() const { return fields_; }
  const std::vector<ScalarField>& rhs() const { return rhs_; }

 private:
  PScalar load(const ScalarField& f, int i, int j, Parity parity = Parity::Even) const;
  PScalar ddx(const ScalarField& f, int i, int j) const;
  PScalar ddy(const ScalarField& f, int i, int j, Parity parity) const;
  PScalar param(const std::vector<PScalar>& plane, int i, int j) const;
  bool update(ScalarField& f, ScalarField& r, int i, int j, PScalar rhs);

  std::optional<RangeFailure> step_acoustic(int it, PScalar src);
  std::optional<RangeFailure> step_elastic(int it, PScalar src);
  bool surface_row(int j) const;

  RunSpec spec_;
  Precision sp_;
  Precision up_;
  PScalar c_[4];
  PScalar dt_;
  int step_ = 0;

  std::vector<ScalarField> fields_;
  std::vector<ScalarField> rhs_;
  std::vector<ScalarField> previous_;  // stresses or pressure at the earlier level
  // acoustic: rho_x, rho_y, beta; elastic: rho_x, rho_y, M, lambda, M_surface, mu_node
  std::vector<std::vector<PScalar>> params_;
};

}  // namespace halfwave::reference
