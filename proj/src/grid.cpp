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

#include "halfwave/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace halfwave {

std::string_view to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Periodic ? "periodic" : "free_surface";
}

BoundaryCondition parse_boundary(std::string_view text) {
  if (text == "periodic") return BoundaryCondition::Periodic;
  if (text == "free_surface" || text == "free-surface" || text == "freesurface")
    return BoundaryCondition::FreeSurface;
  throw std::invalid_argument("unknown boundary condition '" + std::string(text) + "'");
}

double cfl_limit() { return 1.0 / (std::sqrt(2.0) * (9.0 / 8.0 + 1.0 / 24.0)); }

void GridSpec::validate() const {
  if (nx < 8 || ny < 8) {
    throw std::invalid_argument("grid must be at least 8x8 cells, got " + std::to_string(nx) +
                                "x" + std::to_string(ny));
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("dx must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (nt < 0) throw std::invalid_argument("nt must be non-negative");
  if (bc_x != BoundaryCondition::Periodic) {
    throw std::invalid_argument("only the y boundary may be a free surface");
  }
}

void GridSpec::check_cfl(double c_max) const {
  const double number = cfl(c_max);
  if (!(number <= cfl_limit())) {
    std::ostringstream msg;
    msg << "CFL number " << number << " (c_max=" << c_max << ", dt=" << dt << ", dx=" << dx
        << ") exceeds the stability limit " << cfl_limit();
    throw std::invalid_argument(msg.str());
  }
}

std::string_view to_string(Stagger s) {
  switch (s) {
    case Stagger::Cell:
      return "cell";
    case Stagger::XFace:
      return "xface";
    case Stagger::YFace:
      return "yface";
    case Stagger::Node:
      break;
  }
  return "node";
}

Stagger shifted_x(Stagger s) {
  switch (s) {
    case Stagger::Cell:
      return Stagger::XFace;
    case Stagger::XFace:
      return Stagger::Cell;
    case Stagger::YFace:
      return Stagger::Node;
    case Stagger::Node:
      break;
  }
  return Stagger::YFace;
}

Stagger shifted_y(Stagger s) {
  switch (s) {
    case Stagger::Cell:
      return Stagger::YFace;
    case Stagger::YFace:
      return Stagger::Cell;
    case Stagger::XFace:
      return Stagger::Node;
    case Stagger::Node:
      break;
  }
  return Stagger::XFace;
}

Extent extent(Stagger s, const GridSpec& grid) {
  const bool surface = grid.bc_y == BoundaryCondition::FreeSurface;
  return {grid.nx, half_in_y(s) && surface ? grid.ny - 1 : grid.ny};
}

}  // namespace halfwave
