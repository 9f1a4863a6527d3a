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

#include "halfwave/medium.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace halfwave {

namespace {

constexpr std::array<char, 4> kMagic = {'W', 'M', 'E', 'D'};
constexpr std::uint32_t kVersion = 1;

std::size_t plane_count(MediumKind kind) { return kind == MediumKind::Acoustic ? 3 : 4; }

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int k = 0; k < 4; ++k) b[k] = static_cast<unsigned char>((v >> (8 * k)) & 0xFFU);
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>((bits >> (8 * k)) & 0xFFU);
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int k = 3; k >= 0; --k) v = (v << 8) | p[k];
  return v;
}

double get_f64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int k = 7; k >= 0; --k) v = (v << 8) | p[k];
  return std::bit_cast<double>(v);
}

[[noreturn]] void fail_cell(std::string_view plane, int i, int j, double v, std::string_view why) {
  std::ostringstream msg;
  msg << "medium plane " << plane << " at cell (" << i << ", " << j << ") = " << v << ": " << why;
  throw MediumError(msg.str());
}

const Layer& layer_at(const std::vector<Layer>& layers, double fraction) {
  for (const auto& layer : layers) {
    if (fraction < layer.depth_fraction) return layer;
  }
  return layers.back();
}

}  // namespace

Medium::Medium(MediumKind kind, int nx, int ny)
    : kind_(kind),
      nx_(nx),
      ny_(ny),
      planes_(plane_count(kind), std::vector<double>(static_cast<std::size_t>(nx) * ny, 0.0)) {
  if (nx <= 0 || ny <= 0) throw MediumError("medium dimensions must be positive");
}

std::vector<double>& Medium::beta() {
  if (kind_ != MediumKind::Acoustic) throw MediumError("beta is defined for acoustic media only");
  return planes_[2];
}
const std::vector<double>& Medium::beta() const {
  if (kind_ != MediumKind::Acoustic) throw MediumError("beta is defined for acoustic media only");
  return planes_[2];
}
std::vector<double>& Medium::lambda() {
  if (kind_ != MediumKind::Elastic) throw MediumError("lambda is defined for elastic media only");
  return planes_[2];
}
const std::vector<double>& Medium::lambda() const {
  if (kind_ != MediumKind::Elastic) throw MediumError("lambda is defined for elastic media only");
  return planes_[2];
}
std::vector<double>& Medium::mu() {
  if (kind_ != MediumKind::Elastic) throw MediumError("mu is defined for elastic media only");
  return planes_[3];
}
const std::vector<double>& Medium::mu() const {
  if (kind_ != MediumKind::Elastic) throw MediumError("mu is defined for elastic media only");
  return planes_[3];
}

std::vector<std::string_view> Medium::plane_names(MediumKind kind) {
  if (kind == MediumKind::Acoustic) return {"rho_x", "rho_y", "beta"};
  return {"rho_x", "rho_y", "lambda", "mu"};
}

void Medium::validate() const {
  const auto names = plane_names(kind_);
  for (std::size_t p = 0; p < planes_.size(); ++p) {
    if (planes_[p].size() != static_cast<std::size_t>(nx_) * ny_) {
      throw MediumError("medium plane " + std::string(names[p]) + " has the wrong size");
    }
  }
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      for (std::size_t p = 0; p < planes_.size(); ++p) {
        const double v = at(planes_[p], i, j);
        if (!std::isfinite(v)) fail_cell(names[p], i, j, v, "not finite");
      }
      for (std::size_t p = 0; p < 2; ++p) {
        const double v = at(planes_[p], i, j);
        if (!(v > 0.0)) fail_cell(names[p], i, j, v, "density must be positive");
      }
      if (kind_ == MediumKind::Acoustic) {
        const double b = at(planes_[2], i, j);
        if (!(b > 0.0)) fail_cell("beta", i, j, b, "compressibility must be positive");
      } else {
        const double l = at(planes_[2], i, j);
        const double m = at(planes_[3], i, j);
        if (m < 0.0) fail_cell("mu", i, j, m, "shear modulus must be non-negative");
        if (!(l + 2.0 * m > 0.0)) fail_cell("lambda", i, j, l, "lambda + 2 mu must be positive");
        if (!(l + m > 0.0)) fail_cell("lambda", i, j, l, "lambda + mu must be positive");
      }
    }
  }
}

double Medium::max_velocity() const {
  double c = 0.0;
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const double rho = std::min(at(planes_[0], i, j), at(planes_[1], i, j));
      if (kind_ == MediumKind::Acoustic) {
        c = std::max(c, 1.0 / std::sqrt(rho * at(planes_[2], i, j)));
      } else {
        c = std::max(c, std::sqrt((at(planes_[2], i, j) + 2.0 * at(planes_[3], i, j)) / rho));
      }
    }
  }
  return c;
}

Medium build_homogeneous_acoustic(int nx, int ny, double rho, double c) {
  if (!(rho > 0.0) || !(c > 0.0)) throw MediumError("rho and c must be positive");
  Medium m(MediumKind::Acoustic, nx, ny);
  std::fill(m.rho_x().begin(), m.rho_x().end(), rho);
  std::fill(m.rho_y().begin(), m.rho_y().end(), rho);
  std::fill(m.beta().begin(), m.beta().end(), 1.0 / (rho * c * c));
  return m;
}

Medium build_layered_elastic(int nx, int ny, const std::vector<Layer>& layers) {
  if (layers.empty()) throw MediumError("layer list is empty");
  double previous = 0.0;
  for (const auto& layer : layers) {
    if (!(layer.depth_fraction > previous)) {
      throw MediumError("layer depth fractions must be strictly increasing and positive");
    }
    previous = layer.depth_fraction;
    if (!(layer.rho > 0.0) || !(layer.cp > 0.0) || layer.cs < 0.0) {
      throw MediumError("layer rho and cp must be positive, cs non-negative");
    }
    if (!(layer.cs < layer.cp)) throw MediumError("layer shear speed must be below cp");
  }
  Medium m(MediumKind::Elastic, nx, ny);
  for (int j = 0; j < ny; ++j) {
    const Layer& whole = layer_at(layers, static_cast<double>(j) / ny);
    const Layer& half = layer_at(layers, (j + 0.5) / ny);
    for (int i = 0; i < nx; ++i) {
      const auto k = static_cast<std::size_t>(j) * nx + i;
      m.rho_x()[k] = whole.rho;
      m.rho_y()[k] = half.rho;
      m.lambda()[k] = lame_lambda(whole.rho, whole.cp, whole.cs);
      m.mu()[k] = lame_mu(whole.rho, whole.cs);
    }
  }
  return m;
}

Medium build_homogeneous_elastic(int nx, int ny, double rho, double cp, double cs) {
  return build_layered_elastic(nx, ny, {{1.0, rho, cp, cs}});
}

std::vector<Layer> default_layers() {
  return {
      {0.20, 2.0293, 1.9000, 1.0117},
      {0.45, 2.2000, 2.6000, 1.4000},
      {0.70, 2.4000, 3.5000, 1.9000},
      {1.00, 2.6230, 4.6992, 2.6000},
  };
}

void save_medium_file(const Medium& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MediumError("cannot open medium file for writing: " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(m.kind()));
  put_u32(out, static_cast<std::uint32_t>(m.nx()));
  put_u32(out, static_cast<std::uint32_t>(m.ny()));
  for (const auto& plane : m.planes()) {
    for (double v : plane) put_f64(out, v);
  }
  if (!out) throw MediumError("failed writing medium file: " + path.string());
}

Medium load_medium_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MediumError("cannot open medium file: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  constexpr std::size_t kHeader = 20;
  if (bytes.size() < kHeader) throw MediumError("medium file too short for its header: " + path.string());
  if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw MediumError("medium file magic mismatch (expected WMED): " + path.string());
  }
  const std::uint32_t version = get_u32(bytes.data() + 4);
  if (version != kVersion) throw MediumError("unsupported medium file version " + std::to_string(version));
  const std::uint32_t kind = get_u32(bytes.data() + 8);
  if (kind > 1) throw MediumError("unknown medium kind " + std::to_string(kind));
  const std::uint32_t nx = get_u32(bytes.data() + 12);
  const std::uint32_t ny = get_u32(bytes.data() + 16);
  if (nx == 0 || ny == 0 || nx > (1U << 20) || ny > (1U << 20)) {
    throw MediumError("medium file has invalid dimensions");
  }
  const auto medium_kind = static_cast<MediumKind>(kind);
  const std::size_t cells = static_cast<std::size_t>(nx) * ny;
  const std::size_t expected = kHeader + plane_count(medium_kind) * cells * 8;
  if (bytes.size() != expected) {
    std::ostringstream msg;
    msg << "medium file dimension mismatch: header says " << nx << "x" << ny << " ("
        << expected << " bytes) but file has " << bytes.size() << " bytes";
    throw MediumError(msg.str());
  }
  Medium m(medium_kind, static_cast<int>(nx), static_cast<int>(ny));
  const unsigned char* p = bytes.data() + kHeader;
  for (std::size_t plane = 0; plane < plane_count(medium_kind); ++plane) {
    auto& dst = plane == 0 ? m.rho_x() : plane == 1 ? m.rho_y()
              : plane == 2 ? (medium_kind == MediumKind::Acoustic ? m.beta() : m.lambda())
                           : m.mu();
    for (std::size_t k = 0; k < cells; ++k, p += 8) dst[k] = get_f64(p);
  }
  m.validate();
  return m;
}

}  // namespace halfwave
