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

#include "halfwave/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "halfwave/elastic.hpp"

namespace halfwave::reference {

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

enum AcousticField { kP = 0, kVx = 1, kVy = 2 };
enum ElasticField { kEVx = 0, kEVy = 1, kSxx = 2, kSxy = 3, kSyy = 4 };

std::vector<PScalar> round_plane(Precision p, const std::vector<double>& plane) {
  std::vector<PScalar> out;
  out.reserve(plane.size());
  for (double x : plane) out.push_back(round_to(p, x));
  return out;
}

std::vector<double> widen(const std::vector<PScalar>& v, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = v[k].value();
  return out;
}

}  // namespace

double read(const ScalarField& f, int i, int j, BoundaryCondition bc_y, Parity parity) {
  const int ii = wrap(i, f.nx);
  if (j >= 0 && j < f.ny) return f.at(ii, j);
  if (bc_y == BoundaryCondition::Periodic) return f.at(ii, wrap(j, f.ny));
  int row = 0;
  if (half_in_y(f.stagger)) {
    row = j < 0 ? -j - 1 : 2 * f.ny - 1 - j;
  } else {
    row = j < 0 ? -j : 2 * (f.ny - 1) - j;
  }
  const double v = f.at(ii, row);
  return parity == Parity::Odd ? -v : v;
}

ReferenceSolver::ReferenceSolver(const RunSpec& spec)
    : spec_(spec), sp_(spec.stencil_precision), up_(spec.update_precision) {
  detail::validate_common(spec, spec.equation == Equation::Acoustic ? MediumKind::Acoustic : MediumKind::Elastic);
  const GridSpec& g = spec.grid;
  const double dx = g.dx;
  const PScalar far = round_to(sp_, 1.0 / (24.0 * dx));
  const PScalar near = round_to(sp_, 9.0 / (8.0 * dx));
  c_[0] = far;
  c_[1] = round_to(sp_, -near.value());
  c_[2] = near;
  c_[3] = round_to(sp_, -far.value());
  dt_ = round_to(up_, g.dt);

  const Medium& m = spec.medium;
  if (spec.equation == Equation::Acoustic) {
    if (g.bc_y != BoundaryCondition::Periodic) {
      throw std::invalid_argument("free-surface boundaries are not supported for the acoustic system");
    }
    for (Stagger s : {Stagger::Cell, Stagger::XFace, Stagger::YFace}) {
      fields_.emplace_back(s, extent(s, g));
      rhs_.emplace_back(s, extent(s, g));
    }
    params_ = {round_plane(sp_, m.rho_x()), round_plane(sp_, m.rho_y()), round_plane(sp_, m.beta())};
    ScalarField& p = fields_[kP];
    if (spec.initial.amplitude != 0.0)
      for (int j = 0; j < p.ny; ++j)
        for (int i = 0; i < p.nx; ++i) p.at(i, j) = round_value(up_, detail::gaussian(spec.initial, i, j));
    previous_ = {p};
    return;
  }

  for (Stagger s : {Stagger::XFace, Stagger::YFace, Stagger::Cell, Stagger::Node, Stagger::Cell}) {
    fields_.emplace_back(s, extent(s, g));
    rhs_.emplace_back(s, extent(s, g));
  }
  std::vector<double> modulus(m.lambda().size());
  std::vector<double> surface(m.lambda().size());
  for (std::size_t k = 0; k < modulus.size(); ++k) {
    const double l = m.lambda()[k];
    const double u = m.mu()[k];
    modulus[k] = l + 2.0 * u;
    surface[k] = 4.0 * u * (l + u) / (l + 2.0 * u);
  }
  std::vector<double> mu_node(m.lambda().size());
  const Extent nodes = extent(Stagger::Node, g);
  for (int j = 0; j < nodes.ny; ++j)
    for (int i = 0; i < nodes.nx; ++i) mu_node[static_cast<std::size_t>(j) * g.nx + i] = node_shear_modulus(m, i, j);
  params_ = {round_plane(sp_, m.rho_x()), round_plane(sp_, m.rho_y()), round_plane(sp_, modulus),
             round_plane(sp_, m.lambda()), round_plane(sp_, surface), round_plane(sp_, mu_node)};
  if (spec.initial.amplitude != 0.0) {
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const double v = round_value(up_, detail::gaussian(spec.initial, i, j));
        fields_[kSxx].at(i, j) = v;
        if (!surface_row(j)) fields_[kSyy].at(i, j) = v;
      }
    }
  }
  previous_ = {fields_[kSxx], fields_[kSyy], fields_[kSxy]};
}

bool ReferenceSolver::surface_row(int j) const {
  return spec_.grid.bc_y == BoundaryCondition::FreeSurface && (j == 0 || j == spec_.grid.ny - 1);
}

PScalar ReferenceSolver::load(const ScalarField& f, int i, int j, Parity parity) const {
  return round_to(sp_, read(f, i, j, spec_.grid.bc_y, parity));
}

PScalar ReferenceSolver::ddx(const ScalarField& f, int i, int j) const {
  const int b = i + stencil_base(half_in_x(f.stagger));
  const PScalar outer = p_add(sp_, p_mul(sp_, c_[0], load(f, b, j)), p_mul(sp_, c_[3], load(f, b + 3, j)));
  const PScalar inner = p_add(sp_, p_mul(sp_, c_[1], load(f, b + 1, j)), p_mul(sp_, c_[2], load(f, b + 2, j)));
  return p_add(sp_, outer, inner);
}

PScalar ReferenceSolver::ddy(const ScalarField& f, int i, int j, Parity parity) const {
  const int b = j + stencil_base(half_in_y(f.stagger));
  const PScalar outer =
      p_add(sp_, p_mul(sp_, c_[0], load(f, i, b, parity)), p_mul(sp_, c_[3], load(f, i, b + 3, parity)));
  const PScalar inner =
      p_add(sp_, p_mul(sp_, c_[1], load(f, i, b + 1, parity)), p_mul(sp_, c_[2], load(f, i, b + 2, parity)));
  return p_add(sp_, outer, inner);
}

PScalar ReferenceSolver::param(const std::vector<PScalar>& plane, int i, int j) const {
  return plane[static_cast<std::size_t>(j) * spec_.grid.nx + i];
}

bool ReferenceSolver::update(ScalarField& f, ScalarField& r, int i, int j, PScalar rhs) {
  const PScalar rr = round_to(up_, rhs.value());
  const PScalar inc = p_mul(up_, dt_, rr);
  const PScalar v = round_to(up_, f.at(i, j));
  double s = 0.0;
  double t = 0.0;
  if (!spec_.mode.compensated) {
    s = p_add(up_, v, inc).value();
    t = rr.value();
  } else {
    const PScalar folded = p_add(up_, inc, round_to(up_, r.at(i, j)));
    const SumResult st =
        spec_.mode.variant == SumVariant::OP3 ? sum_3op(up_, v, folded) : sum_6op(up_, v, folded);
    s = st.s.value();
    t = st.t.value();
  }
  f.at(i, j) = s;
  r.at(i, j) = t;
  return !std::isfinite(s) || (spec_.mode.compensated && !std::isfinite(t));
}

std::optional<RangeFailure> ReferenceSolver::step() {
  const int it = step_++;
  const SourceSpec& src = spec_.source;
  const PScalar s = src.enabled ? round_to(sp_, ricker(it * spec_.grid.dt, src.wavelet)) : round_to(sp_, 0.0);
  return spec_.equation == Equation::Acoustic ? step_acoustic(it, s) : step_elastic(it, s);
}

std::optional<RangeFailure> ReferenceSolver::step_acoustic(int it, PScalar src) {
  const SourceSpec& so = spec_.source;
  const bool src_p = so.enabled && so.kind == SourceKind::PressurePoint;
  const bool src_vy = so.enabled && so.kind == SourceKind::VyPoint;
  std::optional<RangeFailure> failure;
  auto flag = [&](bool bad, const char* name) {
    if (bad && !failure) failure = RangeFailure{it, name};
  };
  const Parity even = Parity::Even;
  ScalarField& p = fields_[kP];
  ScalarField& vx = fields_[kVx];
  ScalarField& vy = fields_[kVy];

  bool bad = false;
  for (int j = 0; j < vx.ny; ++j)
    for (int i = 0; i < vx.nx; ++i)
      bad = update(vx, rhs_[kVx], i, j, p_div(sp_, ddx(p, i, j), param(params_[0], i, j))) || bad;
  flag(bad, "Vx");
  bad = false;
  for (int j = 0; j < vy.ny; ++j) {
    for (int i = 0; i < vy.nx; ++i) {
      PScalar d = ddy(p, i, j, even);
      if (src_vy && i == so.ix && j == so.iy) d = p_add(sp_, d, src);
      bad = update(vy, rhs_[kVy], i, j, p_div(sp_, d, param(params_[1], i, j))) || bad;
    }
  }
  flag(bad, "Vy");
  previous_[0] = p;
  bad = false;
  for (int j = 0; j < p.ny; ++j) {
    for (int i = 0; i < p.nx; ++i) {
      PScalar d = p_add(sp_, ddx(vx, i, j), ddy(vy, i, j, even));
      if (src_p && i == so.ix && j == so.iy) d = p_add(sp_, d, src);
      bad = update(p, rhs_[kP], i, j, p_div(sp_, d, param(params_[2], i, j))) || bad;
    }
  }
  flag(bad, "P");
  return failure;
}

std::optional<RangeFailure> ReferenceSolver::step_elastic(int it, PScalar src) {
  const SourceSpec& so = spec_.source;
  const bool src_p = so.enabled && so.kind == SourceKind::PressurePoint;
  const bool src_vy = so.enabled && so.kind == SourceKind::VyPoint;
  std::optional<RangeFailure> failure;
  auto flag = [&](bool bad, const char* name) {
    if (bad && !failure) failure = RangeFailure{it, name};
  };
  const Parity even = Parity::Even;
  const Parity odd = spec_.grid.bc_y == BoundaryCondition::FreeSurface ? Parity::Odd : Parity::Even;
  ScalarField& vx = fields_[kEVx];
  ScalarField& vy = fields_[kEVy];
  ScalarField& sxx = fields_[kSxx];
  ScalarField& sxy = fields_[kSxy];
  ScalarField& syy = fields_[kSyy];

  bool bad = false;
  for (int j = 0; j < vx.ny; ++j) {
    for (int i = 0; i < vx.nx; ++i) {
      const PScalar d = p_add(sp_, ddx(sxx, i, j), ddy(sxy, i, j, odd));
      bad = update(vx, rhs_[kEVx], i, j, p_div(sp_, d, param(params_[0], i, j))) || bad;
    }
  }
  flag(bad, "Vx");
  bad = false;
  for (int j = 0; j < vy.ny; ++j) {
    for (int i = 0; i < vy.nx; ++i) {
      PScalar d = p_add(sp_, ddx(sxy, i, j), ddy(syy, i, j, odd));
      if (src_vy && i == so.ix && j == so.iy) d = p_add(sp_, d, src);
      bad = update(vy, rhs_[kEVy], i, j, p_div(sp_, d, param(params_[1], i, j))) || bad;
    }
  }
  flag(bad, "Vy");

  previous_ = {sxx, syy, sxy};
  bad = false;
  for (int j = 0; j < sxx.ny; ++j) {
    for (int i = 0; i < sxx.nx; ++i) {
      const PScalar exx = ddx(vx, i, j);
      if (surface_row(j)) {
        bad = update(sxx, rhs_[kSxx], i, j, p_mul(sp_, param(params_[4], i, j), exx)) || bad;
        continue;
      }
      const PScalar eyy = ddy(vy, i, j, even);
      const PScalar m = param(params_[2], i, j);
      const PScalar l = param(params_[3], i, j);
      PScalar rxx = p_add(sp_, p_mul(sp_, m, exx), p_mul(sp_, l, eyy));
      PScalar ryy = p_add(sp_, p_mul(sp_, l, exx), p_mul(sp_, m, eyy));
      if (src_p && i == so.ix && j == so.iy) {
        rxx = p_add(sp_, rxx, src);
        ryy = p_add(sp_, ryy, src);
      }
      bad = update(sxx, rhs_[kSxx], i, j, rxx) || bad;
      bad = update(syy, rhs_[kSyy], i, j, ryy) || bad;
    }
  }
  flag(bad, "Sxx/Syy");
  bad = false;
  for (int j = 0; j < sxy.ny; ++j) {
    for (int i = 0; i < sxy.nx; ++i) {
      const PScalar d = p_add(sp_, ddy(vx, i, j, even), ddx(vy, i, j));
      bad = update(sxy, rhs_[kSxy], i, j, p_mul(sp_, param(params_[5], i, j), d)) || bad;
    }
  }
  flag(bad, "Sxy");
  return failure;
}

double ReferenceSolver::energy() const {
  const GridSpec& g = spec_.grid;
  if (spec_.equation == Equation::Acoustic) {
    const auto beta = widen(params_[2], fields_[kP].v.size());
    const auto rho_x = widen(params_[0], fields_[kVx].v.size());
    const auto rho_y = widen(params_[1], fields_[kVy].v.size());
    return acoustic_energy(
        {previous_[0].v, fields_[kP].v, fields_[kVx].v, fields_[kVy].v, beta, rho_x, rho_y, g.dx});
  }
  const std::size_t cells = fields_[kSxx].v.size();
  const auto rho_x = widen(params_[0], fields_[kEVx].v.size());
  const auto rho_y = widen(params_[1], fields_[kEVy].v.size());
  const auto modulus = widen(params_[2], cells);
  const auto lambda = widen(params_[3], cells);
  const auto surface = widen(params_[4], cells);
  const auto mu_node = widen(params_[5], fields_[kSxy].v.size());
  ElasticEnergyInput in;
  in.nx = g.nx;
  in.ny = g.ny;
  in.free_surface = g.bc_y == BoundaryCondition::FreeSurface;
  in.dx = g.dx;
  in.vx = fields_[kEVx].v;
  in.vy = fields_[kEVy].v;
  in.sxx_now = previous_[0].v;
  in.sxx_next = fields_[kSxx].v;
  in.syy_now = previous_[1].v;
  in.syy_next = fields_[kSyy].v;
  in.sxy_now = previous_[2].v;
  in.sxy_next = fields_[kSxy].v;
  in.rho_x = rho_x;
  in.rho_y = rho_y;
  in.modulus = modulus;
  in.lambda = lambda;
  in.mu_node = mu_node;
  in.modulus_surface = surface;
  return elastic_energy(in);
}

}  // namespace halfwave::reference
