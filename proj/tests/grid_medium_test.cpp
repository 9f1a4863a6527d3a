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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "halfwave/grid.hpp"
#include "halfwave/kernels.hpp"
#include "halfwave/medium.hpp"

namespace hw = halfwave;
using hw::BoundaryCondition;
using hw::Stagger;

namespace {

hw::GridSpec grid(int nx, int ny, BoundaryCondition bc_y = BoundaryCondition::Periodic) {
  hw::GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.dx = 1.0;
  g.dt = 0.1;
  g.nt = 1;
  g.bc_y = bc_y;
  return g;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("halfwave_test_" + name);
}

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream(p, std::ios::binary) << bytes;
}

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(GridSpec, Validation) {
  EXPECT_NO_THROW(grid(8, 8).validate());
  EXPECT_THROW(grid(7, 8).validate(), std::invalid_argument);
  auto g = grid(8, 8);
  g.dx = 0.0;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = grid(8, 8);
  g.bc_x = BoundaryCondition::FreeSurface;
  EXPECT_THROW(g.validate(), std::invalid_argument);
}

TEST(GridSpec, CflCheckReportsTheNumber) {
  auto g = grid(8, 8);
  g.dt = 0.7;
  try {
    g.check_cfl(1.0);
    FAIL() << "expected a CFL violation";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("0.7"), std::string::npos) << e.what();
  }
  g.dt = 0.6;
  EXPECT_NO_THROW(g.check_cfl(1.0));
}

TEST(Layout, ExtentsOfAllSubGrids) {
  const auto p = grid(10, 12);
  for (Stagger s : {Stagger::Cell, Stagger::XFace, Stagger::YFace, Stagger::Node}) {
    EXPECT_EQ(hw::extent(s, p), (hw::Extent{10, 12}));
  }
  const auto f = grid(10, 12, BoundaryCondition::FreeSurface);
  EXPECT_EQ(hw::extent(Stagger::Cell, f), (hw::Extent{10, 12}));
  EXPECT_EQ(hw::extent(Stagger::XFace, f), (hw::Extent{10, 12}));
  EXPECT_EQ(hw::extent(Stagger::YFace, f), (hw::Extent{10, 11}));
  EXPECT_EQ(hw::extent(Stagger::Node, f), (hw::Extent{10, 11}));
}

TEST(Layout, ShiftsPairSubGrids) {
  EXPECT_EQ(hw::shifted_x(Stagger::Cell), Stagger::XFace);
  EXPECT_EQ(hw::shifted_x(Stagger::XFace), Stagger::Cell);
  EXPECT_EQ(hw::shifted_x(Stagger::YFace), Stagger::Node);
  EXPECT_EQ(hw::shifted_y(Stagger::Cell), Stagger::YFace);
  EXPECT_EQ(hw::shifted_y(Stagger::XFace), Stagger::Node);
  EXPECT_EQ(hw::shifted_y(Stagger::Node), Stagger::XFace);
}

TEST(Layout, FieldsNeverAlias) {
  const auto g = grid(9, 8, BoundaryCondition::FreeSurface);
  std::vector<hw::Field2D<double>> fields;
  for (Stagger s : {Stagger::Cell, Stagger::XFace, Stagger::YFace, Stagger::Node}) fields.emplace_back(hw::extent(s, g), s);
  for (std::size_t k = 0; k < fields.size(); ++k) {
    auto& f = fields[k];
    for (int j = 0; j < f.ny(); ++j)
      for (int i = 0; i < f.nx(); ++i) f.set(i, j, 1000.0 * k + 10 * j + i);
  }
  for (std::size_t k = 0; k < fields.size(); ++k) {
    const auto& f = fields[k];
    for (int j = 0; j < f.ny(); ++j)
      for (int i = 0; i < f.nx(); ++i) ASSERT_EQ(f(i, j), 1000.0 * k + 10 * j + i);
  }
}

TEST(Layout, Binary16FieldsUseSixteenBitStorage) {
  hw::Field2D<hw::Half> f({8, 8}, Stagger::Cell);
  EXPECT_EQ(f.bytes_per_value(), 2U);
  f.set(3, 4, hw::Half::round(0.1));
  EXPECT_EQ(f.value(3, 4), hw::round_half(0.1));
}

TEST(Halo, PeriodicWrap) {
  hw::Field2D<double> f({8, 8}, Stagger::Cell);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) f.set(i, j, 10 * j + i);
  hw::fill_halo(f, BoundaryCondition::Periodic);
  EXPECT_EQ(f(-1, 0), 7.0);
  EXPECT_EQ(f(-2, 3), 36.0);
  EXPECT_EQ(f(8, 2), 20.0);
  EXPECT_EQ(f(3, -1), 73.0);
  EXPECT_EQ(f(3, 9), 13.0);
  EXPECT_EQ(f(-1, -1), 77.0);
}

TEST(Halo, FreeSurfaceImages) {
  hw::Field2D<double> cell({8, 8}, Stagger::Cell);
  hw::Field2D<double> half({8, 7}, Stagger::YFace);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) cell.set(i, j, j + 1.0);
    for (int j = 0; j < 7; ++j) half.set(i, j, j + 1.0);
  }
  hw::fill_halo(cell, BoundaryCondition::FreeSurface, hw::Parity::Odd);
  hw::fill_halo(half, BoundaryCondition::FreeSurface, hw::Parity::Even);
  // Integer rows mirror about the surface row itself, half rows about the
  // surface half a row away.
  EXPECT_EQ(cell(2, -1), -2.0);
  EXPECT_EQ(cell(2, -2), -3.0);
  EXPECT_EQ(cell(2, 8), -7.0);
  EXPECT_EQ(half(2, -1), 1.0);
  EXPECT_EQ(half(2, -2), 2.0);
  EXPECT_EQ(half(2, 7), 7.0);
  EXPECT_EQ(half(2, 8), 6.0);
}

TEST(HomogeneousAcoustic, Examples) {
  const auto m = hw::build_homogeneous_acoustic(600, 600, 1.0, 1.0);
  for (double b : m.beta()) ASSERT_EQ(b, 1.0);
  const auto m2 = hw::build_homogeneous_acoustic(8, 8, 1.0, 2.0);
  for (double b : m2.beta()) EXPECT_EQ(b, 0.25);
  EXPECT_THROW(hw::build_homogeneous_acoustic(8, 8, 0.0, 1.0), hw::MediumError);
  EXPECT_THROW(hw::build_homogeneous_acoustic(8, 8, 1.0, -1.0), hw::MediumError);
}

TEST(HomogeneousAcoustic, MaterializesExactlyInBinary16) {
  const auto m = hw::build_homogeneous_acoustic(16, 16, 1.0, 1.0);
  for (const auto& plane : m.planes()) {
    for (hw::Half h : hw::kernels::materialize<hw::Half>(plane, 16, 16)) ASSERT_EQ(static_cast<double>(h), 1.0);
  }
}

TEST(Materialize, ChangesValuesByAtMostHalfAnUlp) {
  const auto m = hw::build_layered_elastic(8, 64, hw::default_layers());
  const double u = hw::format_constants(hw::Precision::FP16).unit_roundoff;
  for (const auto& plane : m.planes()) {
    const auto back = hw::kernels::widen(hw::kernels::materialize<hw::Half>(plane, 8, 64));
    for (std::size_t k = 0; k < plane.size(); ++k) {
      // Half an ulp of x is at most u * 2^floor(log2 |x|) <= u |x|.
      EXPECT_LE(std::abs(back[k] - plane[k]), u * std::abs(plane[k]));
    }
  }
}

TEST(LayeredElastic, Examples) {
  const auto m = hw::build_layered_elastic(8, 8, {{1.0, 2.0, 3.0, 1.5}});
  for (double l : m.lambda()) EXPECT_EQ(l, 9.0);
  for (double mu : m.mu()) EXPECT_EQ(mu, 4.5);

  const auto extreme = hw::build_homogeneous_elastic(8, 8, 2.0293, 4.6992, 1.0117);
  EXPECT_NEAR(extreme.mu()[0], 2.0293 * 1.0117 * 1.0117, 1e-12);
  EXPECT_NEAR(extreme.mu()[0], 2.077063, 5e-7);

  EXPECT_THROW(hw::build_layered_elastic(8, 8, {}), hw::MediumError);
  EXPECT_THROW(hw::build_layered_elastic(8, 8, {{1.0, 2.0, 1.5, 1.5}}), hw::MediumError);
}

TEST(LayeredElastic, ChangesAtTheBoundaryRow) {
  const auto m = hw::build_layered_elastic(8, 16, {{0.5, 2.0, 3.0, 1.5}, {1.0, 2.5, 4.0, 2.0}});
  for (int j = 0; j < 16; ++j) {
    const bool top = j < 8;
    EXPECT_EQ(m.at(m.mu(), 3, j), top ? 4.5 : 10.0) << j;
    EXPECT_EQ(m.at(m.rho_x(), 3, j), top ? 2.0 : 2.5) << j;
    // y-faces sit half a row deeper.
    EXPECT_EQ(m.at(m.rho_y(), 3, j), j < 8 ? 2.0 : 2.5) << j;
  }
  const auto off = hw::build_layered_elastic(8, 10, {{0.35, 2.0, 3.0, 1.5}, {1.0, 2.5, 4.0, 2.0}});
  EXPECT_EQ(off.at(off.rho_x(), 0, 3), 2.0);  // depth 3.0 < 3.5
  EXPECT_EQ(off.at(off.rho_y(), 0, 3), 2.5);  // depth 3.5 is not above 3.5
}

TEST(LayeredElastic, DefaultLayersSpanTheReferenceRanges) {
  double rho_lo = 1e9, rho_hi = 0, cs_lo = 1e9, cp_hi = 0;
  for (const auto& l : hw::default_layers()) {
    rho_lo = std::min(rho_lo, l.rho);
    rho_hi = std::max(rho_hi, l.rho);
    cs_lo = std::min(cs_lo, l.cs);
    cp_hi = std::max(cp_hi, l.cp);
  }
  EXPECT_EQ(rho_lo, 2.0293);
  EXPECT_EQ(rho_hi, 2.6230);
  EXPECT_EQ(cs_lo, 1.0117);
  EXPECT_EQ(cp_hi, 4.6992);
}

TEST(MediumValidation, NamesTheOffendingCell) {
  auto m = hw::build_homogeneous_acoustic(8, 8, 1.0, 1.0);
  m.rho_x()[3 * 8 + 5] = 0.0;
  try {
    m.validate();
    FAIL();
  } catch (const hw::MediumError& e) {
    EXPECT_NE(std::string(e.what()).find("(5, 3)"), std::string::npos) << e.what();
  }
  auto e = hw::build_homogeneous_elastic(8, 8, 2.0, 3.0, 1.0);
  e.mu()[0] = -1.0;
  EXPECT_THROW(e.validate(), hw::MediumError);
}

TEST(MediumFile, RoundTripIsBitIdentical) {
  const auto path = temp_file("roundtrip.wmed");
  for (const auto& m : {hw::build_layered_elastic(12, 9, hw::default_layers()),
                        hw::build_homogeneous_acoustic(9, 12, 1.3, 0.7)}) {
    hw::save_medium_file(m, path);
    EXPECT_EQ(hw::load_medium_file(path), m);
  }
  std::filesystem::remove(path);
}

TEST(MediumFile, HeaderLayout) {
  const auto path = temp_file("header.wmed");
  hw::save_medium_file(hw::build_homogeneous_acoustic(8, 9, 1.0, 1.0), path);
  const std::string bytes = read_bytes(path);
  ASSERT_EQ(bytes.size(), 20U + 3 * 72 * 8);
  EXPECT_EQ(bytes.substr(0, 4), "WMED");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[8], 0);
  EXPECT_EQ(bytes[12], 8);
  EXPECT_EQ(bytes[16], 9);
  std::filesystem::remove(path);
}

TEST(MediumFile, Errors) {
  const auto path = temp_file("bad.wmed");
  hw::save_medium_file(hw::build_homogeneous_acoustic(8, 8, 1.0, 1.0), path);
  std::string bytes = read_bytes(path);

  write_bytes(path, bytes.substr(0, bytes.size() - 8));
  try {
    hw::load_medium_file(path);
    FAIL();
  } catch (const hw::MediumError& e) {
    EXPECT_NE(std::string(e.what()).find("dimension mismatch"), std::string::npos);
  }

  std::string magic = bytes;
  magic[0] = 'X';
  write_bytes(path, magic);
  EXPECT_THROW(hw::load_medium_file(path), hw::MediumError);

  std::string zero_rho = bytes;
  std::fill(zero_rho.begin() + 20 + 8 * 10, zero_rho.begin() + 20 + 8 * 11, '\0');
  write_bytes(path, zero_rho);
  try {
    hw::load_medium_file(path);
    FAIL();
  } catch (const hw::MediumError& e) {
    EXPECT_NE(std::string(e.what()).find("(2, 1)"), std::string::npos) << e.what();
  }

  std::filesystem::remove(path);
  EXPECT_THROW(hw::load_medium_file(path), hw::MediumError);
}
