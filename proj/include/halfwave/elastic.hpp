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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "halfwave/diagnostics.hpp"
#include "halfwave/kernels.hpp"
#include "halfwave/operators.hpp"
#include "halfwave/simulation.hpp"

namespace halfwave {

/// Inputs of the staggered elastic energy, all widened to binary64 and laid
/// out row-major on their sub-grids. Stresses come at two consecutive time
/// levels; velocities at the half level between them.
///
///   E = dx^2 / 2 * [ sum w rho_x vx^2 + sum rho_y vy^2
///                    + sum w (m^n m^{n+1} / (lambda + mu) + d^n d^{n+1} / mu)
///                    + sum sxy^n sxy^{n+1} / mu_node ]
///
/// with m = (sxx + syy) / 2, d = (sxx - syy) / 2, lambda + mu = (M + lambda) / 2
/// and mu = (M - lambda) / 2 for the modulus M = lambda + 2 mu actually used by
/// the update. On free-surface rows the weight w is 1/2 and the normal-stress
/// term is sxx^n sxx^{n+1} / M_surface. Terms whose modulus is zero are
/// dropped (the matching stress never leaves zero).
struct ElasticEnergyInput {
  int nx = 0;
  int ny = 0;  ///< cell rows
  bool free_surface = false;
  double dx = 1.0;
  std::span<const double> vx, vy;
  std::span<const double> sxx_now, sxx_next, syy_now, syy_next, sxy_now, sxy_next;
  std::span<const double> rho_x, rho_y, modulus, lambda, mu_node, modulus_surface;
};

double elastic_energy(const ElasticEnergyInput& in);

/// Shear modulus at the node (i + 1/2, j + 1/2) from the four surrounding
/// cells: their common value if equal, zero if any is zero, otherwise the
/// harmonic mean.
double node_shear_modulus(const Medium& m, int i, int j);

/// Velocity-stress elastic system (Virieux layout), periodic in x and either
/// periodic or free-surface (stress images) in y:
///   rho dvx/dt = dsxx/dx + dsxy/dy
///   rho dvy/dt = dsxy/dx + dsyy/dy + s
///   dsxx/dt = (lambda + 2 mu) dvx/dx + lambda dvy/dy
///   dsxy/dt = mu (dvy/dx + dvx/dy)
///   dsyy/dt = lambda dvx/dx + (lambda + 2 mu) dvy/dy
/// On a free-surface row syy stays zero and sxx evolves with the modulus
/// 4 mu (lambda + mu) / (lambda + 2 mu) that the traction-free condition
/// leaves. Precision roles of `S` and `U` are as in AcousticSolver.
template <class S, class U>
class ElasticSolver final : public Solver {
 public:
  explicit ElasticSolver(const RunSpec& spec)
      : grid_(spec.grid),
        mode_(spec.mode),
        source_(spec.source),
        stencil_(Stencil<S>::make(spec.grid.dx)),
        dt_(Arith<U>::from_double(spec.grid.dt)),
        f_(spec.grid),
        r_(spec.grid),
        sxx_prev_(f_.sxx),
        syy_prev_(f_.syy),
        sxy_prev_(f_.sxy) {
    detail::validate_common(spec, MediumKind::Elastic);
    const Medium& m = spec.medium;
    const int nx = grid_.nx;
    rho_x_ = kernels::materialize<S>(m.rho_x(), nx, f_.vx.ny());
    rho_y_ = kernels::materialize<S>(m.rho_y(), nx, f_.vy.ny());
    lambda_ = kernels::materialize<S>(m.lambda(), nx, f_.sxx.ny());
    std::vector<double> modulus(m.lambda().size());
    std::vector<double> surface(m.lambda().size());
    for (std::size_t k = 0; k < modulus.size(); ++k) {
      const double l = m.lambda()[k];
      const double u = m.mu()[k];
      modulus[k] = l + 2.0 * u;
      surface[k] = 4.0 * u * (l + u) / (l + 2.0 * u);
    }
    modulus_ = kernels::materialize<S>(modulus, nx, f_.sxx.ny());
    modulus_surface_ = kernels::materialize<S>(surface, nx, f_.sxx.ny());
    mu_node_.resize(static_cast<std::size_t>(nx) * f_.sxy.ny());
    for (int j = 0; j < f_.sxy.ny(); ++j)
      for (int i = 0; i < nx; ++i)
        mu_node_[static_cast<std::size_t>(j) * nx + i] = Arith<S>::from_double(node_shear_modulus(m, i, j));

    if (spec.initial.amplitude != 0.0) {
      for (int j = 0; j < f_.sxx.ny(); ++j) {
        for (int i = 0; i < nx; ++i) {
          const U v = Arith<U>::from_double(detail::gaussian(spec.initial, i, j));
          f_.sxx.set(i, j, v);
          if (!surface_row(j)) f_.syy.set(i, j, v);
        }
      }
    }
    sxx_prev_ = f_.sxx;
    syy_prev_ = f_.syy;
    sxy_prev_ = f_.sxy;
  }

  std::optional<RangeFailure> step() override {
    switch (kernels::update_kind(mode_)) {
      case kernels::UpdateKind::Baseline:
        return step_impl<kernels::UpdateKind::Baseline>();
      case kernels::UpdateKind::Comp3:
        return step_impl<kernels::UpdateKind::Comp3>();
      case kernels::UpdateKind::Comp6:
        break;
    }
    return step_impl<kernels::UpdateKind::Comp6>();
  }

  int steps_done() const override { return step_; }

  double energy() const override {
    const auto vx = f_.vx.to_doubles();
    const auto vy = f_.vy.to_doubles();
    const auto sxx0 = sxx_prev_.to_doubles();
    const auto sxx1 = f_.sxx.to_doubles();
    const auto syy0 = syy_prev_.to_doubles();
    const auto syy1 = f_.syy.to_doubles();
    const auto sxy0 = sxy_prev_.to_doubles();
    const auto sxy1 = f_.sxy.to_doubles();
    const auto rho_x = kernels::widen(rho_x_);
    const auto rho_y = kernels::widen(rho_y_);
    const auto modulus = kernels::widen(modulus_);
    const auto lambda = kernels::widen(lambda_);
    const auto mu_node = kernels::widen(mu_node_);
    const auto surface = kernels::widen(modulus_surface_);
    ElasticEnergyInput in;
    in.nx = grid_.nx;
    in.ny = grid_.ny;
    in.free_surface = grid_.bc_y == BoundaryCondition::FreeSurface;
    in.dx = grid_.dx;
    in.vx = vx;
    in.vy = vy;
    in.sxx_now = sxx0;
    in.sxx_next = sxx1;
    in.syy_now = syy0;
    in.syy_next = syy1;
    in.sxy_now = sxy0;
    in.sxy_next = sxy1;
    in.rho_x = rho_x;
    in.rho_y = rho_y;
    in.modulus = modulus;
    in.lambda = lambda;
    in.mu_node = mu_node;
    in.modulus_surface = surface;
    return elastic_energy(in);
  }

  const std::vector<std::string>& field_names() const override {
    static const std::vector<std::string> names = {"Vx", "Vy", "Sxx", "Sxy", "Syy"};
    return names;
  }

  double sample(std::size_t field, const Receiver& r) const override {
    const Field2D<U>& f = field_ref(field);
    return f.value(std::clamp(r.ix, 0, f.nx() - 1), std::clamp(r.iy, 0, f.ny() - 1));
  }

  std::vector<double> field_values(std::size_t field) const override {
    return field_ref(field).to_doubles();
  }
  std::vector<double> rhs_values(std::size_t field) const override {
    return field_ref(field, r_).to_doubles();
  }

  std::size_t state_bytes() const override {
    std::size_t n = 0;
    for (std::size_t k = 0; k < 5; ++k) n += field_ref(k).raw().size();
    return 2 * n * sizeof(kernels::storage_t<U>);
  }

  const ElasticFields<U>& fields() const { return f_; }
  const ElasticFields<U>& rhs_fields() const { return r_; }

 private:
  bool surface_row(int j) const {
    return grid_.bc_y == BoundaryCondition::FreeSurface && (j == 0 || j == grid_.ny - 1);
  }

  const Field2D<U>& field_ref(std::size_t k) const { return field_ref(k, f_); }

  static const Field2D<U>& field_ref(std::size_t k, const ElasticFields<U>& set) {
    switch (k) {
      case 0:
        return set.vx;
      case 1:
        return set.vy;
      case 2:
        return set.sxx;
      case 3:
        return set.sxy;
      default:
        return set.syy;
    }
  }

  void refresh_halos() {
    if (grid_.bc_y == BoundaryCondition::FreeSurface) {
      apply_free_surface(f_, Axis::Y, grid_);
      return;
    }
    fill_halo(f_.vx, grid_.bc_y);
    fill_halo(f_.vy, grid_.bc_y);
    fill_halo(f_.sxx, grid_.bc_y);
    fill_halo(f_.sxy, grid_.bc_y);
    fill_halo(f_.syy, grid_.bc_y);
  }

  template <kernels::UpdateKind K>
  std::optional<RangeFailure> step_impl() {
    const int it = step_++;
    const S src = source_.enabled ? Arith<S>::from_double(ricker(it * grid_.dt, source_.wavelet)) : S{};
    const bool src_vy = source_.enabled && source_.kind == SourceKind::VyPoint;
    const bool src_p = source_.enabled && source_.kind == SourceKind::PressurePoint;

    std::optional<RangeFailure> failure;
    auto flag = [&](bool bad, const char* field) {
      if (bad && !failure) failure = RangeFailure{it, field};
    };

    refresh_halos();
    flag(sweep_vx<K>(), "Vx");
    flag(sweep_vy<K>(src_vy ? source_.ix : -1, source_.iy, src), "Vy");
    refresh_halos();
    sxx_prev_ = f_.sxx;
    syy_prev_ = f_.syy;
    sxy_prev_ = f_.sxy;
    flag(sweep_normal<K>(src_p ? source_.ix : -1, source_.iy, src), "Sxx/Syy");
    flag(sweep_shear<K>(), "Sxy");
    return failure;
  }

  template <kernels::UpdateKind K>
  bool sweep_vx() {
    const int nx = f_.vx.nx();
    const int ny = f_.vx.ny();
    const int bx = stencil_base(false);  // sxx: cell -> x-face
    const int by = stencil_base(true);   // sxy: node -> x-face
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (int j = 0; j < ny; ++j) {
      const auto* sxx = f_.sxx.row(j);
      const kernels::RowWindow<U> sxy(f_.sxy, j, by);
      auto* v = f_.vx.row(j);
      auto* r = r_.vx.row(j);
      const S* rho = rho_x_.data() + static_cast<std::size_t>(j) * nx;
      kernels::for_each_point<S, U>(nx, [&](auto lanes, int i) {
        using L = decltype(lanes);
        const auto d = kernels::ddx_at<L>(stencil_, sxx, i, bx) + kernels::ddy_at<L>(stencil_, sxy, i);
        bad = kernels::update_point<K, L>(v + i, r + i, d / L::param(rho + i), dt_) || bad;
      });
    }
    return bad;
  }

  template <kernels::UpdateKind K>
  bool sweep_vy(int src_i, int src_j, S src) {
    const int nx = f_.vy.nx();
    const int ny = f_.vy.ny();
    const int bx = stencil_base(true);   // sxy: node -> y-face
    const int by = stencil_base(false);  // syy: cell -> y-face
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (int j = 0; j < ny; ++j) {
      const auto* sxy = f_.sxy.row(j);
      const kernels::RowWindow<U> syy(f_.syy, j, by);
      auto* v = f_.vy.row(j);
      auto* r = r_.vy.row(j);
      const S* rho = rho_y_.data() + static_cast<std::size_t>(j) * nx;
      kernels::for_each_point<S, U>(nx, [&](auto lanes, int i) {
        using L = decltype(lanes);
        auto d = kernels::ddx_at<L>(stencil_, sxy, i, bx) + kernels::ddy_at<L>(stencil_, syy, i);
        if (j == src_j && src_i >= i && src_i < i + L::width) d = L::inject(d, src, src_i - i);
        bad = kernels::update_point<K, L>(v + i, r + i, d / L::param(rho + i), dt_) || bad;
      });
    }
    return bad;
  }

  template <kernels::UpdateKind K>
  bool sweep_normal(int src_i, int src_j, S src) {
    const int nx = f_.sxx.nx();
    const int ny = f_.sxx.ny();
    const int base = stencil_base(true);  // vx: x-face -> cell, vy: y-face -> cell
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (int j = 0; j < ny; ++j) {
      const auto* vx = f_.vx.row(j);
      auto* sxx = f_.sxx.row(j);
      auto* rxx = r_.sxx.row(j);
      const std::size_t off = static_cast<std::size_t>(j) * nx;
      if (surface_row(j)) {
        const S* ms = modulus_surface_.data() + off;
        kernels::for_each_point<S, U>(nx, [&](auto lanes, int i) {
          using L = decltype(lanes);
          const auto exx = kernels::ddx_at<L>(stencil_, vx, i, base);
          bad = kernels::update_point<K, L>(sxx + i, rxx + i, L::param(ms + i) * exx, dt_) || bad;
        });
        continue;
      }
      const kernels::RowWindow<U> vy(f_.vy, j, base);
      auto* syy = f_.syy.row(j);
      auto* ryy = r_.syy.row(j);
      const S* m = modulus_.data() + off;
      const S* l = lambda_.data() + off;
      kernels::for_each_point<S, U>(nx, [&](auto lanes, int i) {
        using L = decltype(lanes);
        const auto exx = kernels::ddx_at<L>(stencil_, vx, i, base);
        const auto eyy = kernels::ddy_at<L>(stencil_, vy, i);
        const auto mi = L::param(m + i);
        const auto li = L::param(l + i);
        auto rxx_v = mi * exx + li * eyy;
        auto ryy_v = li * exx + mi * eyy;
        if (j == src_j && src_i >= i && src_i < i + L::width) {
          rxx_v = L::inject(rxx_v, src, src_i - i);
          ryy_v = L::inject(ryy_v, src, src_i - i);
        }
        bad = kernels::update_point<K, L>(sxx + i, rxx + i, rxx_v, dt_) || bad;
        bad = kernels::update_point<K, L>(syy + i, ryy + i, ryy_v, dt_) || bad;
      });
    }
    return bad;
  }

  template <kernels::UpdateKind K>
  bool sweep_shear() {
    const int nx = f_.sxy.nx();
    const int ny = f_.sxy.ny();
    const int bx = stencil_base(false);  // vy: y-face -> node
    const int by = stencil_base(false);  // vx: x-face -> node
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (int j = 0; j < ny; ++j) {
      const auto* vy = f_.vy.row(j);
      const kernels::RowWindow<U> vx(f_.vx, j, by);
      auto* s = f_.sxy.row(j);
      auto* r = r_.sxy.row(j);
      const S* mu = mu_node_.data() + static_cast<std::size_t>(j) * nx;
      kernels::for_each_point<S, U>(nx, [&](auto lanes, int i) {
        using L = decltype(lanes);
        const auto d = kernels::ddy_at<L>(stencil_, vx, i) + kernels::ddx_at<L>(stencil_, vy, i, bx);
        bad = kernels::update_point<K, L>(s + i, r + i, L::param(mu + i) * d, dt_) || bad;
      });
    }
    return bad;
  }

  GridSpec grid_;
  UpdateMode mode_;
  SourceSpec source_;
  Stencil<S> stencil_;
  U dt_;
  int step_ = 0;

  ElasticFields<U> f_;
  ElasticFields<U> r_;
  Field2D<U> sxx_prev_, syy_prev_, sxy_prev_;
  std::vector<S> rho_x_, rho_y_, modulus_, lambda_, mu_node_, modulus_surface_;
};

}  // namespace halfwave
