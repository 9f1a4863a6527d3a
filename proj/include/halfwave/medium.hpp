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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace halfwave {

enum class MediumKind : std::uint32_t { Acoustic = 0, Elastic = 1 };

/// Raised by medium construction, validation and file loading.
class MediumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical parameters on the staggered layout, binary64 source of truth.
///
/// Every plane is nx * ny, row-major, and each is read at its own sub-grid:
/// rho_x at x-faces, rho_y at y-faces, beta / lambda / mu at cell centers.
/// The shear modulus at nodes is derived from the cell plane when a solver
/// materializes the medium.
class Medium {
 public:
  Medium() = default;
  Medium(MediumKind kind, int nx, int ny);

  MediumKind kind() const { return kind_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  std::vector<double>& rho_x() { return planes_[0]; }
  std::vector<double>& rho_y() { return planes_[1]; }
  const std::vector<double>& rho_x() const { return planes_[0]; }
  const std::vector<double>& rho_y() const { return planes_[1]; }

  /// Compressibility; acoustic media only.
  std::vector<double>& beta();
  const std::vector<double>& beta() const;
  /// Lame parameters; elastic media only.
  std::vector<double>& lambda();
  std::vector<double>& mu();
  const std::vector<double>& lambda() const;
  const std::vector<double>& mu() const;

  double at(const std::vector<double>& plane, int i, int j) const {
    return plane[static_cast<std::size_t>(j) * nx_ + i];
  }

  /// Planes in file order: acoustic (rho_x, rho_y, beta), elastic
  /// (rho_x, rho_y, lambda, mu).
  const std::vector<std::vector<double>>& planes() const { return planes_; }
  static std::vector<std::string_view> plane_names(MediumKind kind);

  /// Throws MediumError naming the plane and cell of the first entry that is
  /// non-finite or violates rho > 0, beta > 0, mu >= 0, lambda + 2 mu > 0,
  /// lambda + mu > 0.
  void validate() const;

  /// Largest wave speed: 1/sqrt(rho beta) or sqrt((lambda + 2 mu)/rho).
  double max_velocity() const;

  friend bool operator==(const Medium&, const Medium&) = default;

 private:
  MediumKind kind_ = MediumKind::Acoustic;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::vector<double>> planes_;
};

/// rho > 0 and c > 0; beta = 1/(rho c^2) everywhere.
Medium build_homogeneous_acoustic(int nx, int ny, double rho, double c);

struct Layer {
  double depth_fraction;  ///< bottom of the layer as a fraction of ny
  double rho;
  double cp;
  double cs;
};

/// Lame parameters from density and wave speeds.
inline double lame_lambda(double rho, double cp, double cs) { return rho * (cp * cp - 2.0 * cs * cs); }
inline double lame_mu(double rho, double cs) { return rho * cs * cs; }

/// Piecewise constant by depth. A point at depth y (cell units, 0 at the top
/// row) takes the first layer whose depth_fraction exceeds y / ny; points
/// below the last boundary take the last layer. Each staggered plane is
/// sampled at its own depth. Throws MediumError on an empty list, unordered
/// boundaries, nonpositive rho or cp, negative cs, or cs >= cp.
Medium build_layered_elastic(int nx, int ny, const std::vector<Layer>& layers);

/// A single-layer elastic medium.
Medium build_homogeneous_elastic(int nx, int ny, double rho, double cp, double cs);

/// Layers spanning the density and speed ranges of the reference marine model
/// (rho 2.0293..2.6230, cs >= 1.0117, cp <= 4.6992 in km, s, Gt units).
std::vector<Layer> default_layers();

/// Binary medium file: little-endian, magic "WMED", u32 version (1), u32 kind,
/// u32 nx, u32 ny, then the planes as row-major binary64.
void save_medium_file(const Medium& m, const std::filesystem::path& path);
Medium load_medium_file(const std::filesystem::path& path);

}  // namespace halfwave
