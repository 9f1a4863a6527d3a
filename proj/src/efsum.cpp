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

#include "halfwave/efsum.hpp"

#include <stdexcept>
#include <string>

namespace halfwave {

std::string_view to_string(SumVariant v) { return v == SumVariant::OP3 ? "op3" : "op6"; }

SumVariant parse_sum_variant(std::string_view text) {
  if (text == "op3" || text == "3op" || text == "OP3") return SumVariant::OP3;
  if (text == "op6" || text == "6op" || text == "OP6") return SumVariant::OP6;
  throw std::invalid_argument("unknown compensated-sum variant '" + std::string(text) + "'");
}

SumResult sum_3op(Precision format, PScalar a, PScalar b) {
  const PScalar s = p_add(format, a, b);
  const PScalar z = p_sub(format, s, a);
  return {s, p_sub(format, b, z)};
}

SumResult sum_6op(Precision format, PScalar a, PScalar b) {
  const PScalar s = p_add(format, a, b);
  const PScalar pa = p_sub(format, s, b);
  const PScalar pb = p_sub(format, s, pa);
  const PScalar da = p_sub(format, a, pa);
  const PScalar db = p_sub(format, b, pb);
  return {s, p_add(format, da, db)};
}

CompensatedAccumulator::CompensatedAccumulator(Precision format, SumVariant variant)
    : format_(format),
      variant_(variant),
      state_{round_to(format, 0.0), round_to(format, 0.0)} {}

void CompensatedAccumulator::add(PScalar increment) {
  const PScalar folded = p_add(format_, increment, state_.t);
  state_ = variant_ == SumVariant::OP3 ? sum_3op(format_, state_.s, folded)
                                       : sum_6op(format_, state_.s, folded);
}

PScalar naive_sum(Precision format, const double* values, std::size_t n) {
  PScalar s = round_to(format, 0.0);
  for (std::size_t i = 0; i < n; ++i) s = p_add(format, s, round_to(format, values[i]));
  return s;
}

}  // namespace halfwave
