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

#include <array>
#include <stdexcept>
#include <string>

#include "halfwave/grid.hpp"
#include "halfwave/precision.hpp"

namespace halfwave {

enum class Axis : std::uint8_t { X, Y };

/// Fourth-order staggered first-derivative taps [1/24, -9/8, 9/8, -1/24] / dx,
/// formed in binary64 and rounded once into the stencil arithmetic `S`.
template <class S>
struct Stencil {
  std::array<S, 4> c{};

  static Stencil make(double dx) {
    const S far = Arith<S>::from_double(1.0 / (24.0 * dx));
    const S near = Arith<S>::from_double(9.0 / (8.0 * dx));
    return {{far, -near, near, -far}};
  }

  std::array<double, 4> taps() const {
    return {Arith<S>::to_double(c[0]), Arith<S>::to_double(c[1]), Arith<S>::to_double(c[2]),
            Arith<S>::to_double(c[3])};
  }

  /// Taps applied to four consecutive samples. The outer pair and the inner
  /// pair are summed first so that the antisymmetric taps cancel exactly on
  /// constant input in every precision.
  S apply(S f0, S f1, S f2, S f3) const {
    return (c[0] * f0 + c[3] * f3) + (c[1] * f1 + c[2] * f2);
  }
};

/// First input offset for a derivative along an axis. Integer-to-half output
/// points read samples at offsets -1..2, half-to-integer points read -2..1.
inline int stencil_base(bool input_on_half_points) { return input_on_half_points ? -2 : -1; }

/// Derivative at one output point, reading a field through its storage
/// (halo must be current). Inputs are converted into `S` before use.
template <class S, class T>
inline S derivative_x(const Stencil<S>& st, const Field2D<T>& f, int i, int j) {
  const int b = i + stencil_base(half_in_x(f.stagger()));
  const auto* row = f.row(j);
  return st.apply(convert<S>(Arith<T>::load(row[b])), convert<S>(Arith<T>::load(row[b + 1])),
                  convert<S>(Arith<T>::load(row[b + 2])), convert<S>(Arith<T>::load(row[b + 3])));
}

template <class S, class T>
inline S derivative_y(const Stencil<S>& st, const Field2D<T>& f, int i, int j) {
  const int b = j + stencil_base(half_in_y(f.stagger()));
  return st.apply(convert<S>(f(i, b)), convert<S>(f(i, b + 1)), convert<S>(f(i, b + 2)),
                  convert<S>(f(i, b + 3)));
}

namespace detail {

template <class S, class T>
Field2D<S> derivative_field(Field2D<T> in, Stagger target, const Stencil<S>& st,
                            const GridSpec& grid, Parity parity, Axis axis) {
  const Stagger expected = axis == Axis::X ? shifted_x(in.stagger()) : shifted_y(in.stagger());
  if (target != expected) {
    throw std::invalid_argument("incompatible stagger pairing: " +
                                std::string(to_string(in.stagger())) + " cannot be differentiated along " +
                                (axis == Axis::X ? "x" : "y") + " onto " + std::string(to_string(target)));
  }
  if (in.extent() != extent(in.stagger(), grid)) {
    throw std::invalid_argument("field extent does not match the grid");
  }
  fill_halo(in, grid.bc_y, parity);
  Field2D<S> out(extent(target, grid), target);
  const int ny = out.ny();
  const int nx = out.nx();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      out.set(i, j, axis == Axis::X ? derivative_x(st, in, i, j) : derivative_y(st, in, i, j));
    }
  }
  return out;
}

}  // namespace detail

/// d/dx of `in` evaluated on the `target` sub-grid in the stencil precision.
/// `parity` selects the image rule used across a free surface in y (it only
/// matters for ddy). Throws std::invalid_argument if `target` is not `in`
/// shifted half a cell along the axis.
template <class S, class T>
Field2D<S> ddx(const Field2D<T>& in, Stagger target, const Stencil<S>& st, const GridSpec& grid,
               Parity parity = Parity::Even) {
  return detail::derivative_field(in, target, st, grid, parity, Axis::X);
}

template <class S, class T>
Field2D<S> ddy(const Field2D<T>& in, Stagger target, const Stencil<S>& st, const GridSpec& grid,
               Parity parity = Parity::Even) {
  return detail::derivative_field(in, target, st, grid, parity, Axis::Y);
}

/// Velocity-stress fields of the elastic system.
template <class T>
struct ElasticFields {
  Field2D<T> vx;   // XFace
  Field2D<T> vy;   // YFace
  Field2D<T> sxx;  // Cell
  Field2D<T> sxy;  // Node
  Field2D<T> syy;  // Cell

  explicit ElasticFields(const GridSpec& grid)
      : vx(extent(Stagger::XFace, grid), Stagger::XFace),
        vy(extent(Stagger::YFace, grid), Stagger::YFace),
        sxx(extent(Stagger::Cell, grid), Stagger::Cell),
        sxy(extent(Stagger::Node, grid), Stagger::Node),
        syy(extent(Stagger::Cell, grid), Stagger::Cell) {}
};

/// Stress-image free surface on the top and bottom cell rows: sigma_yy is
/// zeroed on the surface rows and imaged oddly above them, sigma_xy is imaged
/// oddly across the surface (ghost[-k] = -sxy[k-1]), and both velocities are
/// imaged evenly. Also refreshes the periodic x halo.
/// Throws std::invalid_argument for the x axis or a grid without a free
/// surface in y.
template <class T>
void apply_free_surface(ElasticFields<T>& f, Axis axis, const GridSpec& grid) {
  if (axis != Axis::Y) throw std::invalid_argument("free surface is only supported along y");
  if (grid.bc_y != BoundaryCondition::FreeSurface) {
    throw std::invalid_argument("grid has no free surface along y");
  }
  const int last = f.syy.ny() - 1;
  for (int i = 0; i < f.syy.nx(); ++i) {
    f.syy.set(i, 0, T{});
    f.syy.set(i, last, T{});
  }
  fill_halo(f.syy, grid.bc_y, Parity::Odd);
  fill_halo(f.sxy, grid.bc_y, Parity::Odd);
  fill_halo(f.sxx, grid.bc_y, Parity::Even);
  fill_halo(f.vx, grid.bc_y, Parity::Even);
  fill_halo(f.vy, grid.bc_y, Parity::Even);
}

}  // namespace halfwave
