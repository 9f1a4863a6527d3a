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

#include <cstddef>
#include <string_view>

#include "halfwave/precision.hpp"

namespace halfwave {

enum class SumVariant : std::uint8_t { OP3, OP6 };

std::string_view to_string(SumVariant v);
SumVariant parse_sum_variant(std::string_view text);

/// Rounded sum `s` and the compensation `t` holding the bits lost producing it.
template <class T>
struct SumPair {
  T s{};
  T t{};
};

/// Three-operation compensated sum. Error free (a + b == s + t exactly) when
/// the exponent of `a` is at least that of `b`.
template <class T>
inline SumPair<T> sum_3op(T a, T b) {
  const T s = a + b;
  const T z = s - a;
  return {s, b - z};
}

/// Six-operation, branch-free compensated sum. Error free for any ordering of
/// |a| and |b| as long as no operation overflows.
template <class T>
inline SumPair<T> sum_6op(T a, T b) {
  const T s = a + b;
  const T pa = s - b;
  const T pb = s - pa;
  const T da = a - pa;
  const T db = b - pb;
  return {s, da + db};
}

template <class T>
inline SumPair<T> compensated_sum(SumVariant variant, T a, T b) {
  return variant == SumVariant::OP3 ? sum_3op(a, b) : sum_6op(a, b);
}

/// Runtime-format variants over PScalar, built on the precision module's
/// correctly rounded scalar operations.
struct SumResult {
  PScalar s;
  PScalar t;
};

SumResult sum_3op(Precision format, PScalar a, PScalar b);
SumResult sum_6op(Precision format, PScalar a, PScalar b);

/// Recursive summation that carries the compensation term forward. Each step
/// first folds the carried compensation into the increment and then adds the
/// result into the running sum with an error-free transformation, the same
/// dataflow the compensated time-stepping update uses.
class CompensatedAccumulator {
 public:
  CompensatedAccumulator(Precision format, SumVariant variant);

  void add(PScalar increment);
  void add(double increment) { add(round_to(format_, increment)); }

  PScalar sum() const { return state_.s; }
  PScalar compensation() const { return state_.t; }
  const SumResult& state() const { return state_; }

 private:
  Precision format_;
  SumVariant variant_;
  SumResult state_;
};

/// Plain recursive summation in `format`, the uncompensated control path.
PScalar naive_sum(Precision format, const double* values, std::size_t n);

}  // namespace halfwave
