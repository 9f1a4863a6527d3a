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

#include "halfwave/simulation.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "halfwave/acoustic.hpp"
#include "halfwave/elastic.hpp"

namespace halfwave {

std::string_view to_string(Equation e) { return e == Equation::Acoustic ? "acoustic" : "elastic"; }

Equation parse_equation(std::string_view text) {
  if (text == "acoustic") return Equation::Acoustic;
  if (text == "elastic") return Equation::Elastic;
  throw std::invalid_argument("unknown equation '" + std::string(text) + "'");
}

std::string UpdateMode::label() const {
  if (!compensated) return "naive";
  return std::string(to_string(variant));
}

namespace detail {

namespace {

void check_index(const char* what, int i, int j, Extent e) {
  if (i < 0 || i >= e.nx || j < 0 || j >= e.ny) {
    throw std::invalid_argument(std::string(what) + " index (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside " + std::to_string(e.nx) + "x" + std::to_string(e.ny));
  }
}

}  // namespace

void validate_common(const RunSpec& spec, MediumKind kind) {
  const GridSpec& g = spec.grid;
  g.validate();
  if (spec.medium.kind() != kind) {
    throw std::invalid_argument(std::string("medium kind does not match the ") +
                                (kind == MediumKind::Acoustic ? "acoustic" : "elastic") + " equation");
  }
  if (spec.medium.nx() != g.nx || spec.medium.ny() != g.ny) {
    throw std::invalid_argument("medium is " + std::to_string(spec.medium.nx()) + "x" +
                                std::to_string(spec.medium.ny()) + " but the grid is " + std::to_string(g.nx) +
                                "x" + std::to_string(g.ny));
  }
  spec.medium.validate();
  g.check_cfl(spec.medium.max_velocity());
  if (spec.source.enabled) {
    if (!(spec.source.wavelet.f_center > 0.0)) throw std::invalid_argument("source frequency must be positive");
    const Stagger at = spec.source.kind == SourceKind::VyPoint ? Stagger::YFace : Stagger::Cell;
    check_index("source", spec.source.ix, spec.source.iy, extent(at, g));
  }
  for (const Receiver& r : spec.receivers) check_index("receiver", r.ix, r.iy, extent(Stagger::Cell, g));
  if (spec.energy_cadence < 1) throw std::invalid_argument("energy cadence must be at least 1");
}

double gaussian(const InitialPulse& pulse, double x, double y) {
  const double dx = x - pulse.x0;
  const double dy = y - pulse.y0;
  return pulse.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * pulse.width * pulse.width));
}

}  // namespace detail

std::unique_ptr<Solver> make_solver(const RunSpec& spec) {
  return dispatch_precision(spec.stencil_precision, [&](auto s) -> std::unique_ptr<Solver> {
    return dispatch_precision(spec.update_precision, [&](auto u) -> std::unique_ptr<Solver> {
      using S = decltype(s);
      using U = decltype(u);
      if (spec.equation == Equation::Acoustic) return std::make_unique<AcousticSolver<S, U>>(spec);
      return std::make_unique<ElasticSolver<S, U>>(spec);
    });
  });
}

RunOutput run(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  auto solver = make_solver(spec);
  RunOutput out;
  const auto& names = solver->field_names();
  for (std::size_t r = 0; r < spec.receivers.size(); ++r) {
    for (const auto& name : names) {
      TraceSeries t;
      t.field = name;
      t.receiver = static_cast<int>(r);
      t.samples.reserve(static_cast<std::size_t>(spec.grid.nt));
      out.traces.push_back(std::move(t));
    }
  }
  out.trace_times.reserve(static_cast<std::size_t>(spec.grid.nt));
  out.energy.push(0.0, solver->energy());

  const double dt = spec.grid.dt;
  for (int it = 0; it < spec.grid.nt; ++it) {
    out.failure = solver->step();
    out.trace_times.push_back((it + 1) * dt);
    std::size_t k = 0;
    for (const Receiver& r : spec.receivers)
      for (std::size_t f = 0; f < names.size(); ++f) out.traces[k++].samples.push_back(solver->sample(f, r));
    if ((it + 1) % spec.energy_cadence == 0 || out.failure) out.energy.push((it + 0.5) * dt, solver->energy());
    out.steps_completed = it + 1;
    if (out.failure) break;
  }
  out.state_bytes = solver->state_bytes();
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace halfwave
