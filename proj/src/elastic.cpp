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

#include "halfwave/elastic.hpp"

#include <stdexcept>

namespace halfwave {

namespace {

double pair_over(double a, double b, double modulus) { return modulus == 0.0 ? 0.0 : a * b / modulus; }

}  // namespace

double elastic_energy(const ElasticEnergyInput& in) {
  const std::size_t nx = static_cast<std::size_t>(in.nx);
  const int half_rows = in.free_surface ? in.ny - 1 : in.ny;
  const std::size_t cells = nx * in.ny;
  const std::size_t halves = nx * half_rows;
  if (in.vx.size() != cells || in.rho_x.size() < cells || in.vy.size() != halves || in.rho_y.size() < halves ||
      in.sxx_now.size() != cells || in.sxx_next.size() != cells || in.syy_now.size() != cells ||
      in.syy_next.size() != cells || in.modulus.size() != cells || in.lambda.size() != cells ||
      in.modulus_surface.size() != cells || in.sxy_now.size() != halves || in.sxy_next.size() != halves ||
      in.mu_node.size() != halves) {
    throw std::invalid_argument("elastic_energy: mismatched array sizes");
  }
  auto surface = [&](int j) { return in.free_surface && (j == 0 || j == in.ny - 1); };

  double kinetic = 0.0;
  for (int j = 0; j < in.ny; ++j) {
    const double w = surface(j) ? 0.5 : 1.0;
    double row = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = j * nx + i;
      row += in.rho_x[k] * in.vx[k] * in.vx[k];
    }
    kinetic += w * row;
  }
  for (std::size_t k = 0; k < halves; ++k) kinetic += in.rho_y[k] * in.vy[k] * in.vy[k];

  double strain = 0.0;
  for (int j = 0; j < in.ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = j * nx + i;
      if (surface(j)) {
        strain += 0.5 * pair_over(in.sxx_now[k], in.sxx_next[k], in.modulus_surface[k]);
        continue;
      }
      const double bulk = 0.5 * (in.modulus[k] + in.lambda[k]);
      const double shear = 0.5 * (in.modulus[k] - in.lambda[k]);
      const double m0 = 0.5 * (in.sxx_now[k] + in.syy_now[k]);
      const double m1 = 0.5 * (in.sxx_next[k] + in.syy_next[k]);
      const double d0 = 0.5 * (in.sxx_now[k] - in.syy_now[k]);
      const double d1 = 0.5 * (in.sxx_next[k] - in.syy_next[k]);
      strain += pair_over(m0, m1, bulk) + pair_over(d0, d1, shear);
    }
  }
  for (std::size_t k = 0; k < halves; ++k) strain += pair_over(in.sxy_now[k], in.sxy_next[k], in.mu_node[k]);

  return 0.5 * in.dx * in.dx * (kinetic + strain);
}

double node_shear_modulus(const Medium& m, int i, int j) {
  const int i1 = (i + 1) % m.nx();
  const int j1 = (j + 1) % m.ny();
  const auto& mu = m.mu();
  const double a = m.at(mu, i, j);
  const double b = m.at(mu, i1, j);
  const double c = m.at(mu, i, j1);
  const double d = m.at(mu, i1, j1);
  if (a == b && a == c && a == d) return a;
  if (a == 0.0 || b == 0.0 || c == 0.0 || d == 0.0) return 0.0;
  return 4.0 / (1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d);
}

}  // namespace halfwave
