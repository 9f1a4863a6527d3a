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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "halfwave/precision.hpp"

namespace halfwave {

enum class BoundaryCondition : std::uint8_t { Periodic, FreeSurface };

std::string_view to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary(std::string_view text);

/// Stability bound on c * dt / dx for the fourth-order staggered leapfrog
/// scheme in 2D: 1 / (sqrt(2) * (9/8 + 1/24)).
double cfl_limit();

/// Grid geometry and time stepping. nx, ny count cells; with a free surface in
/// y the first and last cell rows lie on the surfaces.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dt = 0.0;
  int nt = 0;
  BoundaryCondition bc_x = BoundaryCondition::Periodic;
  BoundaryCondition bc_y = BoundaryCondition::Periodic;

  /// Throws std::invalid_argument on nx, ny < 8, nonpositive dx or dt,
  /// negative nt, or a free-surface x boundary (only y supports one).
  void validate() const;

  /// Throws std::invalid_argument reporting the CFL number if it exceeds
  /// cfl_limit().
  void check_cfl(double c_max) const;

  double cfl(double c_max) const { return c_max * dt / dx; }
};

/// Position of a sub-grid within a cell: Cell at (i, j), XFace at (i + 1/2, j),
/// YFace at (i, j + 1/2), Node at (i + 1/2, j + 1/2).
enum class Stagger : std::uint8_t { Cell, XFace, YFace, Node };

std::string_view to_string(Stagger s);

inline bool half_in_x(Stagger s) { return s == Stagger::XFace || s == Stagger::Node; }
inline bool half_in_y(Stagger s) { return s == Stagger::YFace || s == Stagger::Node; }

/// Sub-grid reached by one half-cell shift along x (or y).
Stagger shifted_x(Stagger s);
Stagger shifted_y(Stagger s);

struct Extent {
  int nx = 0;
  int ny = 0;
  friend bool operator==(const Extent&, const Extent&) = default;
};

/// Interior dimensions of a sub-grid. Half-offset rows number ny under a
/// periodic y boundary and ny - 1 between two free surfaces.
Extent extent(Stagger s, const GridSpec& grid);

inline constexpr int kHalo = 2;

/// One scalar unknown on its staggered sub-grid, stored in the container of
/// its arithmetic type (16-bit for Half) with a two-point halo on every side.
template <class T>
class Field2D {
 public:
  using value_type = T;
  using storage_type = typename Arith<T>::storage;

  Field2D() = default;
  Field2D(Extent e, Stagger stagger)
      : nx_(e.nx),
        ny_(e.ny),
        stride_(e.nx + 2 * kHalo),
        stagger_(stagger),
        data_(static_cast<std::size_t>(stride_) * (e.ny + 2 * kHalo),
              Arith<T>::store(T{})) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Extent extent() const { return {nx_, ny_}; }
  Stagger stagger() const { return stagger_; }

  /// Index range is [-kHalo, n + kHalo) in each direction.
  std::size_t offset(int i, int j) const {
    return static_cast<std::size_t>(j + kHalo) * stride_ + static_cast<std::size_t>(i + kHalo);
  }

  T operator()(int i, int j) const { return Arith<T>::load(data_[offset(i, j)]); }
  void set(int i, int j, T v) { data_[offset(i, j)] = Arith<T>::store(v); }

  double value(int i, int j) const { return Arith<T>::to_double((*this)(i, j)); }

  const storage_type* row(int j) const { return data_.data() + offset(0, j); }
  storage_type* row(int j) { return data_.data() + offset(0, j); }

  std::span<const storage_type> raw() const { return data_; }

  void fill(T v) { std::fill(data_.begin(), data_.end(), Arith<T>::store(v)); }

  /// Interior values widened to binary64, row-major, halo excluded.
  std::vector<double> to_doubles() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(nx_) * ny_);
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) out.push_back(value(i, j));
    return out;
  }

  std::size_t bytes_per_value() const { return sizeof(storage_type); }

 private:
  int nx_ = 0;
  int ny_ = 0;
  int stride_ = 0;
  Stagger stagger_ = Stagger::Cell;
  std::vector<storage_type> data_;
};

/// Reflection parity of a field across a free surface: stresses that vanish on
/// the surface are odd, velocities are even.
enum class Parity : std::int8_t { Even = 1, Odd = -1 };

/// Fills halo points: periodic wrap in x, and in y either a periodic wrap or
/// mirror images across the free-surface rows with the given parity.
template <class T>
void fill_halo(Field2D<T>& f, BoundaryCondition bc_y, Parity parity = Parity::Even) {
  const int nx = f.nx();
  const int ny = f.ny();
  const bool half_rows = half_in_y(f.stagger());
  for (int j = 0; j < ny; ++j) {
    for (int k = 1; k <= kHalo; ++k) {
      f.set(-k, j, f(nx - k, j));
      f.set(nx - 1 + k, j, f(k - 1, j));
    }
  }
  for (int k = 1; k <= kHalo; ++k) {
    int src_lo = 0;
    int src_hi = 0;
    if (bc_y == BoundaryCondition::Periodic) {
      src_lo = ny - k;
      src_hi = k - 1;
    } else if (half_rows) {
      // Surfaces sit half a row outside the first and last half-offset rows.
      src_lo = k - 1;
      src_hi = ny - k;
    } else {
      // Surfaces coincide with rows 0 and ny - 1.
      src_lo = k;
      src_hi = ny - 1 - k;
    }
    const bool flip = bc_y == BoundaryCondition::FreeSurface && parity == Parity::Odd;
    for (int i = -kHalo; i < nx + kHalo; ++i) {
      const T lo = f(i, src_lo);
      const T hi = f(i, src_hi);
      f.set(i, -k, flip ? -lo : lo);
      f.set(i, ny - 1 + k, flip ? -hi : hi);
    }
  }
}

}  // namespace halfwave
