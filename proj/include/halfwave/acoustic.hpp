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
#include <string>
#include <vector>

#include "halfwave/diagnostics.hpp"
#include "halfwave/kernels.hpp"
#include "halfwave/operators.hpp"
#include "halfwave/simulation.hpp"

namespace halfwave {

/// Acoustic system on a doubly periodic staggered grid:
///   rho dVx/dt = dP/dx,  rho dVy/dt = dP/dy,  beta dP/dt = dVx/dx + dVy/dy + s.
///
/// `S` is the stencil arithmetic (derivatives, source injection, division by
/// the medium) and `U` the update arithmetic (solution and right-hand-side
/// storage, dt scaling, solution update).
///
/// Each step updates Vx, then Vy, then P. For every point the right-hand side
/// R is assembled in `S`, rounded into `U`, scaled by dt and added to the
/// solution. In compensated mode the R storage doubles as the compensation
/// carried from the previous step.
template <class S, class U>
class AcousticSolver final : public Solver {
 public:
  explicit AcousticSolver(const RunSpec& spec)
      : grid_(spec.grid),
        mode_(spec.mode),
        source_(spec.source),
        stencil_(Stencil<S>::make(spec.grid.dx)),
        dt_(Arith<U>::from_double(spec.grid.dt)) {
    detail::validate_common(spec, MediumKind::Acoustic);
    if (grid_.bc_y != BoundaryCondition::Periodic) {
      throw std::invalid_argument("free-surface boundaries are not supported for the acoustic system");
    }
    p_ = Field2D<U>(extent(Stagger::Cell, grid_), Stagger::Cell);
    vx_ = Field2D<U>(extent(Stagger::XFace, grid_), Stagger::XFace);
    vy_ = Field2D<U>(extent(Stagger::YFace, grid_), Stagger::YFace);
    rp_ = p_;
    rvx_ = vx_;
    rvy_ = vy_;
    beta_ = kernels::materialize<S>(spec.medium.beta(), grid_.nx, p_.ny());
    rho_x_ = kernels::materialize<S>(spec.medium.rho_x(), grid_.nx, vx_.ny());
    rho_y_ = kernels::materialize<S>(spec.medium.rho_y(), grid_.nx, vy_.ny());
    if (spec.initial.amplitude != 0.0) {
      for (int j = 0; j < p_.ny(); ++j)
        for (int i = 0; i < p_.nx(); ++i)
          p_.set(i, j, Arith<U>::from_double(detail::gaussian(spec.initial, i, j)));
    }
    p_prev_ = p_;
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

  /// One step with plain solution updates.
  std::optional<RangeFailure> step_baseline() { return step_impl<kernels::UpdateKind::Baseline>(); }

  /// One step with compensated solution updates.
  std::optional<RangeFailure> step_compensated(SumVariant variant) {
    return variant == SumVariant::OP3 ? step_impl<kernels::UpdateKind::Comp3>()
                                      : step_impl<kernels::UpdateKind::Comp6>();
  }

  int steps_done() const override { return step_; }

  double energy() const override {
    const auto now = p_prev_.to_doubles();
    const auto next = p_.to_doubles();
    const auto vx = vx_.to_doubles();
    const auto vy = vy_.to_doubles();
    const auto beta = kernels::widen(beta_);
    const auto rho_x = kernels::widen(rho_x_);
    const auto rho_y = kernels::widen(rho_y_);
    return acoustic_energy({now, next, vx, vy, beta, rho_x, rho_y, grid_.dx});
  }

  const std::vector<std::string>& field_names() const override {
    static const std::vector<std::string> names = {"P", "Vx", "Vy"};
    return names;
  }

  double sample(std::size_t field, const Receiver& r) const override {
    const Field2D<U>& f = field == 0 ? p_ : field == 1 ? vx_ : vy_;
    return f.value(std::clamp(r.ix, 0, f.nx() - 1), std::clamp(r.iy, 0, f.ny() - 1));
  }

  std::vector<double> field_values(std::size_t field) const override {
    return (field == 0 ? p_ : field == 1 ? vx_ : vy_).to_doubles();
  }
  std::vector<double> rhs_values(std::size_t field) const override {
    return (field == 0 ? rp_ : field == 1 ? rvx_ : rvy_).to_doubles();
  }

  std::size_t state_bytes() const override {
    return (p_.raw().size() + vx_.raw().size() + vy_.raw().size()) * 2 * sizeof(kernels::storage_t<U>);
  }

  const Field2D<U>& pressure() const { return p_; }
  const Field2D<U>& velocity_x() const { return vx_; }
  const Field2D<U>& velocity_y() const { return vy_; }
  const Field2D<U>& rhs_pressure() const { return rp_; }
  const Field2D<U>& rhs_velocity_x() const { return rvx_; }
  const Field2D<U>& rhs_velocity_y() const { return rvy_; }

 private:
  template <kernels::UpdateKind K>
  std::optional<RangeFailure> step_impl() {
    const int it = step_++;
    const S src = source_.enabled ? Arith<S>::from_double(ricker(it * grid_.dt, source_.wavelet)) : S{};
    const bool src_p = source_.enabled && source_.kind == SourceKind::PressurePoint;
    const bool src_vy = source_.enabled && source_.kind == SourceKind::VyPoint;

    std::optional<RangeFailure> failure;
    auto flag = [&](bool bad, const char* field) {
      if (bad && !failure) failure = RangeFailure{it, field};
    };

    fill_halo(p_, grid_.bc_y);
    flag(sweep_vx<K>(), "Vx");
    flag(sweep_vy<K>(src_vy ? source_.ix : -1, source_.iy, src), "Vy");
    fill_halo(vx_, grid_.bc_y);
    fill_halo(vy_, grid_.bc_y);
    p_prev_ = p_;
    flag(sweep_p<K>(src_p ? source_.ix : -1, source_.iy, src), "P");
    return failure;
  }

  template <kernels::UpdateKind K>
  bool sweep_vx() {
    const int nx = vx_.nx();
    const int ny = vx_.ny();
    const int base = stencil_base(false);
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (int j = 0; j < ny; ++j) {
      const auto* prow = p_.row(j);
      auto* vrow = vx_.row(j);
      auto* rrow = rvx_.row(j);
      const S* rho = rho_x_.data() + static_cast<std::size_t>(j) * nx;
      kernels::for_each_point<S, U>(nx, [&](auto lanes, int i) {
        using L = decltype(lanes);
        const auto rhs = kernels::ddx_at<L>(stencil_, prow, i, base) / L::param(rho + i);
        bad = kernels::update_point<K, L>(vrow + i, rrow + i, rhs, dt_) || bad;
      });
    }
    return bad;
  }

  template <kernels::UpdateKind K>
  bool sweep_vy(int src_i, int src_j, S src) {
    const int nx = vy_.nx();
    const int ny = vy_.ny();
    const int base = stencil_base(false);
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (int j = 0; j < ny; ++j) {
      const kernels::RowWindow<U> w(p_, j, base);
      auto* vrow = vy_.row(j);
      auto* rrow = rvy_.row(j);
      const S* rho = rho_y_.data() + static_cast<std::size_t>(j) * nx;
      kernels::for_each_point<S, U>(nx, [&](auto lanes, int i) {
        using L = decltype(lanes);
        auto d = kernels::ddy_at<L>(stencil_, w, i);
        if (j == src_j && src_i >= i && src_i < i + L::width) d = L::inject(d, src, src_i - i);
        bad = kernels::update_point<K, L>(vrow + i, rrow + i, d / L::param(rho + i), dt_) || bad;
      });
    }
    return bad;
  }

  template <kernels::UpdateKind K>
  bool sweep_p(int src_i, int src_j, S src) {
    const int nx = p_.nx();
    const int ny = p_.ny();
    const int base = stencil_base(true);
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (int j = 0; j < ny; ++j) {
      const auto* vxrow = vx_.row(j);
      const kernels::RowWindow<U> w(vy_, j, base);
      auto* prow = p_.row(j);
      auto* rrow = rp_.row(j);
      const S* beta = beta_.data() + static_cast<std::size_t>(j) * nx;
      kernels::for_each_point<S, U>(nx, [&](auto lanes, int i) {
        using L = decltype(lanes);
        auto d = kernels::ddx_at<L>(stencil_, vxrow, i, base) + kernels::ddy_at<L>(stencil_, w, i);
        if (j == src_j && src_i >= i && src_i < i + L::width) d = L::inject(d, src, src_i - i);
        bad = kernels::update_point<K, L>(prow + i, rrow + i, d / L::param(beta + i), dt_) || bad;
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

  Field2D<U> p_, vx_, vy_;
  Field2D<U> rp_, rvx_, rvy_;
  Field2D<U> p_prev_;
  std::vector<S> beta_, rho_x_, rho_y_;
};

}  // namespace halfwave
