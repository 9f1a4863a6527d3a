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

#include <gtest/gtest.h>
#include <omp.h>

#include <bit>
#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "halfwave/acoustic.hpp"
#include "halfwave/elastic.hpp"
#include "halfwave/reference.hpp"

namespace hw = halfwave;
using hw::Precision;

namespace {

constexpr Precision kAll[] = {Precision::FP64, Precision::FP32, Precision::FP16};

const hw::UpdateMode kModes[] = {hw::UpdateMode::baseline(), hw::UpdateMode::with(hw::SumVariant::OP3),
                                 hw::UpdateMode::with(hw::SumVariant::OP6)};

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::bit_cast<std::uint64_t>(a[k]) != std::bit_cast<std::uint64_t>(b[k])) return false;
  return true;
}

std::size_t nonzero(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; }));
}

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += (a[k] - b[k]) * (a[k] - b[k]);
    den += b[k] * b[k];
  }
  return std::sqrt(num / den);
}

// Enough points must have been reached for the comparison to mean anything.
std::size_t values_floor(const hw::RunSpec& spec) { return static_cast<std::size_t>(spec.grid.nx * spec.grid.ny) / 2; }

void expect_matches_reference(hw::RunSpec spec, const char* what) {
  for (Precision s : kAll) {
    for (Precision u : kAll) {
      for (const auto& mode : kModes) {
        spec.stencil_precision = s;
        spec.update_precision = u;
        spec.mode = mode;
        SCOPED_TRACE(std::string(what) + " stencil " + std::string(hw::to_string(s)) + " update " +
                     std::string(hw::to_string(u)) + " " + mode.label());
        auto fast = hw::make_solver(spec);
        hw::reference::ReferenceSolver ref(spec);
        for (int it = 0; it < spec.grid.nt; ++it) {
          const auto a = fast->step();
          const auto b = ref.step();
          ASSERT_EQ(a.has_value(), b.has_value()) << "step " << it;
        }
        std::size_t busy = 0;
        for (std::size_t f = 0; f < fast->field_names().size(); ++f) {
          const auto values = fast->field_values(f);
          busy += nonzero(values);
          EXPECT_TRUE(bit_equal(values, ref.fields()[f].v)) << fast->field_names()[f];
          EXPECT_TRUE(bit_equal(fast->rhs_values(f), ref.rhs()[f].v)) << "R" << fast->field_names()[f];
        }
        EXPECT_GT(busy, values_floor(spec));
        EXPECT_EQ(std::bit_cast<std::uint64_t>(fast->energy()), std::bit_cast<std::uint64_t>(ref.energy()));
      }
    }
  }
}

}  // namespace

TEST(Reference, AcousticKernelsAreBitIdentical) {
  expect_matches_reference(fixtures::acoustic(), "pressure source");
  auto vy = fixtures::acoustic(24, 11);
  vy.source.kind = hw::SourceKind::VyPoint;
  vy.source.ix = 17;  // inside the vector tail region
  expect_matches_reference(vy, "vy source");
}

TEST(Reference, ElasticKernelsAreBitIdentical) {
  expect_matches_reference(fixtures::elastic(), "free surface");
  auto periodic = fixtures::elastic(18, 16);
  periodic.grid.bc_y = hw::BoundaryCondition::Periodic;
  periodic.source.kind = hw::SourceKind::PressurePoint;
  periodic.source.iy = 7;
  expect_matches_reference(periodic, "periodic");
}

TEST(Reference, InitialPulseIsBitIdentical) {
  auto s = fixtures::elastic();
  s.source.enabled = false;
  s.initial = {2.0, 10.0, 5.0, 2.0};
  expect_matches_reference(s, "elastic pulse");
  auto a = fixtures::acoustic();
  a.source.enabled = false;
  a.initial = {2.0, 9.0, 6.0, 2.0};
  expect_matches_reference(a, "acoustic pulse");
}

TEST(Acoustic, ZeroStateStaysZero) {
  for (Precision p : kAll) {
    for (const auto& mode : kModes) {
      auto s = fixtures::acoustic();
      s.source.enabled = false;
      s.stencil_precision = s.update_precision = p;
      s.mode = mode;
      auto solver = hw::make_solver(s);
      for (int it = 0; it < 20; ++it) ASSERT_FALSE(solver->step());
      for (std::size_t f = 0; f < 3; ++f) {
        EXPECT_EQ(nonzero(solver->field_values(f)), 0U);
        EXPECT_EQ(nonzero(solver->rhs_values(f)), 0U);
      }
      EXPECT_EQ(solver->energy(), 0.0);
    }
  }
}

TEST(Acoustic, FirstStepTouchesOnlyTheSourceCell) {
  auto s = fixtures::acoustic();
  s.source.wavelet.delay = 0.0;  // full amplitude at t = 0
  s.stencil_precision = s.update_precision = Precision::FP16;
  hw::AcousticSolver<hw::Half, hw::Half> solver(s);
  ASSERT_FALSE(solver.step_baseline());
  const auto P = Precision::FP16;
  const std::size_t at = static_cast<std::size_t>(s.source.iy) * s.grid.nx + s.source.ix;
  const auto beta = hw::round_to(P, s.medium.beta()[at]);
  const auto rhs = hw::p_div(P, hw::round_to(P, s.source.wavelet.amplitude), beta);
  const auto want = hw::p_mul(P, hw::round_to(P, s.grid.dt), rhs);
  const auto p = solver.field_values(0);
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_EQ(p[k], k == at ? want.value() : 0.0) << k;
  EXPECT_EQ(nonzero(solver.field_values(1)), 0U);
  EXPECT_EQ(nonzero(solver.field_values(2)), 0U);
}

TEST(Acoustic, CompensationIsNegligibleInBinary64) {
  auto s = fixtures::acoustic(32, 32);
  s.grid.dt = 2e-4;
  s.grid.nt = 1000;
  s.source.wavelet = {20.0, 0.06, 1.0};
  s.receivers = {{20, 20}};
  const auto base = hw::run(s);
  s.mode = hw::UpdateMode::with(hw::SumVariant::OP3);
  const auto comp = hw::run(s);
  EXPECT_LE(rel_l2(comp.traces[0].samples, base.traces[0].samples), 1e-12);
}

TEST(Acoustic, NoStepsLeaveTheInitialEnergyOnly) {
  auto s = fixtures::acoustic();
  s.grid.nt = 0;
  s.initial = {1.0, 5.0, 5.0, 2.0};
  const auto out = hw::run(s);
  EXPECT_EQ(out.steps_completed, 0);
  ASSERT_EQ(out.traces.size(), 6U);
  for (const auto& t : out.traces) EXPECT_TRUE(t.samples.empty());
  ASSERT_EQ(out.energy.size(), 1U);
  EXPECT_EQ(out.energy.times[0], 0.0);
  EXPECT_GT(out.energy.values[0], 0.0);
}

TEST(Acoustic, RangeFailureStopsTheRun) {
  auto s = fixtures::acoustic();
  s.stencil_precision = s.update_precision = Precision::FP16;
  s.source.wavelet.amplitude = 6e4;  // rhs = s / beta overflows binary16
  s.grid.nt = 30;
  const auto out = hw::run(s);
  ASSERT_TRUE(out.failure.has_value());
  EXPECT_EQ(out.failure->field, "P");
  EXPECT_EQ(out.steps_completed, out.failure->step + 1);
  EXPECT_LT(out.steps_completed, 30);
  EXPECT_NE(out.failure->message().find("step"), std::string::npos);
}

TEST(Acoustic, RejectsFreeSurface) {
  auto s = fixtures::acoustic();
  s.grid.bc_y = hw::BoundaryCondition::FreeSurface;
  EXPECT_THROW(hw::make_solver(s), std::invalid_argument);
}

TEST(Solver, ValidatesItsInput) {
  auto s = fixtures::acoustic();
  s.source.ix = s.grid.nx;
  EXPECT_THROW(hw::make_solver(s), std::invalid_argument);
  s = fixtures::acoustic();
  s.receivers.push_back({0, s.grid.ny});
  EXPECT_THROW(hw::make_solver(s), std::invalid_argument);
  s = fixtures::acoustic();
  s.grid.dt = 0.01;
  EXPECT_THROW(hw::make_solver(s), std::invalid_argument);
  s = fixtures::acoustic();
  s.medium = hw::build_homogeneous_elastic(s.grid.nx, s.grid.ny, 1, 1, 0.5);
  EXPECT_THROW(hw::make_solver(s), std::invalid_argument);
  s = fixtures::acoustic();
  s.energy_cadence = 0;
  EXPECT_THROW(hw::make_solver(s), std::invalid_argument);
}

TEST(Solver, Binary16StateUsesHalfTheBytesOfBinary32) {
  auto s = fixtures::acoustic();
  s.update_precision = Precision::FP32;
  const auto b32 = hw::make_solver(s)->state_bytes();
  s.update_precision = Precision::FP16;
  EXPECT_EQ(hw::make_solver(s)->state_bytes() * 2, b32);
}

TEST(Solver, DeterministicAcrossThreadCounts) {
  for (auto s : {fixtures::acoustic(37, 29), fixtures::elastic(37, 29)}) {
    s.grid.nt = 60;
    s.stencil_precision = s.update_precision = Precision::FP16;
    s.mode = hw::UpdateMode::with(hw::SumVariant::OP6);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = hw::run(s);
    omp_set_num_threads(3);
    const auto three = hw::run(s);
    const auto again = hw::run(s);
    omp_set_num_threads(saved);
    for (std::size_t k = 0; k < one.traces.size(); ++k) {
      EXPECT_TRUE(bit_equal(one.traces[k].samples, three.traces[k].samples));
      EXPECT_TRUE(bit_equal(three.traces[k].samples, again.traces[k].samples));
    }
    EXPECT_TRUE(bit_equal(one.energy.values, three.energy.values));
  }
}

TEST(Elastic, ZeroSourceStaysZero) {
  for (Precision p : kAll) {
    auto s = fixtures::elastic();
    s.source.enabled = false;
    s.stencil_precision = s.update_precision = p;
    s.mode = hw::UpdateMode::with(hw::SumVariant::OP6);
    auto solver = hw::make_solver(s);
    for (int it = 0; it < 20; ++it) ASSERT_FALSE(solver->step());
    for (std::size_t f = 0; f < 5; ++f) {
      EXPECT_EQ(nonzero(solver->field_values(f)), 0U);
      EXPECT_EQ(nonzero(solver->rhs_values(f)), 0U);
    }
  }
}

TEST(Elastic, SurfaceRowsKeepZeroNormalStress) {
  for (Precision p : kAll) {
    for (const auto& mode : kModes) {
      auto s = fixtures::elastic();
      s.stencil_precision = s.update_precision = p;
      s.mode = mode;
      auto solver = hw::make_solver(s);
      const std::size_t syy = 4;
      ASSERT_EQ(solver->field_names()[syy], "Syy");
      for (int it = 0; it < s.grid.nt; ++it) {
        solver->step();
        const auto v = solver->field_values(syy);
        const std::size_t last = v.size() - s.grid.nx;
        for (int i = 0; i < s.grid.nx; ++i) {
          ASSERT_EQ(v[i], 0.0);
          ASSERT_EQ(v[last + i], 0.0);
        }
      }
      EXPECT_GT(nonzero(solver->field_values(syy)), 0U);
    }
  }
}

TEST(Elastic, ReducesToAcousticWithoutShear) {
  // mu = 0 and pressure-like initial data: sxx = syy plays P with beta = 1/lambda.
  const int n = 8;
  hw::RunSpec e;
  e.equation = hw::Equation::Elastic;
  e.grid = {n, n, 0.1, 0.01, 50};
  e.medium = hw::build_homogeneous_elastic(n, n, 1.5, 2.0, 0.0);
  e.source.enabled = false;
  e.initial = {1.0, 3.0, 4.0, 1.2};
  e.receivers = {{2, 5}, {6, 1}};
  const double lambda = e.medium.lambda()[0];

  hw::RunSpec a = e;
  a.equation = hw::Equation::Acoustic;
  a.medium = hw::build_homogeneous_acoustic(n, n, 1.5, 2.0);
  ASSERT_NEAR(a.medium.beta()[0], 1.0 / lambda, 1e-15);

  auto es = hw::make_solver(e);
  auto as = hw::make_solver(a);
  for (int it = 0; it < 50; ++it) {
    es->step();
    as->step();
  }
  EXPECT_LE(rel_l2(es->field_values(2), as->field_values(0)), 1e-10);  // Sxx vs P
  EXPECT_LE(rel_l2(es->field_values(4), as->field_values(0)), 1e-10);  // Syy vs P
  EXPECT_LE(rel_l2(es->field_values(0), as->field_values(1)), 1e-10);
  EXPECT_LE(rel_l2(es->field_values(1), as->field_values(2)), 1e-10);
  EXPECT_EQ(nonzero(es->field_values(3)), 0U);

  const auto eo = hw::run(e);
  const auto ao = hw::run(a);
  // Elastic traces run Vx, Vy, Sxx, Sxy, Syy; acoustic ones P, Vx, Vy.
  EXPECT_LE(rel_l2(eo.traces[0].samples, ao.traces[1].samples), 1e-10);
  EXPECT_LE(rel_l2(eo.traces[1].samples, ao.traces[2].samples), 1e-10);
  EXPECT_LE(rel_l2(eo.traces[2].samples, ao.traces[0].samples), 1e-10);
}

TEST(Elastic, Binary64EnergyIsFlatWithAFreeSurface) {
  // A pulse released just below the surface reflects off it; no source.
  auto s = fixtures::elastic(48, 48);
  s.medium = hw::build_homogeneous_elastic(48, 48, 2.2, 2.6, 1.4);
  s.source.enabled = false;
  s.initial = {1.0, 24.0, 6.0, 2.5};
  s.grid.nt = 1500;
  s.energy_cadence = 10;
  const auto out = hw::run(s);
  const auto drift = hw::energy_drift(out.energy, 0.0);
  EXPECT_LE(drift.rel_deviation, 1e-10);
  EXPECT_GT(drift.mean, 0.0);
}

TEST(Elastic, NodeShearModulus) {
  auto m = hw::build_homogeneous_elastic(8, 8, 2.0, 3.0, 1.0);
  EXPECT_EQ(hw::node_shear_modulus(m, 3, 3), 2.0);
  m.mu()[3 * 8 + 4] = 0.0;
  EXPECT_EQ(hw::node_shear_modulus(m, 3, 3), 0.0);
  m.mu()[3 * 8 + 4] = 4.0;
  EXPECT_DOUBLE_EQ(hw::node_shear_modulus(m, 3, 3), 4.0 / (3 / 2.0 + 1 / 4.0));
  // Wraps around the periodic edge.
  m.mu()[0] = 8.0;
  EXPECT_DOUBLE_EQ(hw::node_shear_modulus(m, 7, 7), 4.0 / (3 / 2.0 + 1 / 8.0));
}
