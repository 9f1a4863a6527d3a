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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "halfwave/efsum.hpp"
#include "halfwave/grid.hpp"
#include "halfwave/operators.hpp"
#include "halfwave/precision.hpp"
#include "halfwave/simulation.hpp"

// Per-point building blocks of the parallel sweeps. Every output point reads
// only its own inputs and writes only its own outputs, so a row-parallel
// sweep is bit-identical to a sequential one.

namespace halfwave::kernels {

enum class UpdateKind { Baseline, Comp3, Comp6 };

inline UpdateKind update_kind(const UpdateMode& mode) {
  if (!mode.compensated) return UpdateKind::Baseline;
  return mode.variant == SumVariant::OP3 ? UpdateKind::Comp3 : UpdateKind::Comp6;
}

template <class T>
using storage_t = typename Arith<T>::storage;

/// One point at a time, any (stencil, update) pair. `SV` values are in the
/// stencil arithmetic, `UV` values in the update arithmetic.
template <class S, class U>
struct ScalarLanes {
  static constexpr int width = 1;
  using SV = S;
  using UV = U;

  static SV load_s(const storage_t<U>* p) { return convert<S>(Arith<U>::load(*p)); }
  static UV load_u(const storage_t<U>* p) { return Arith<U>::load(*p); }
  static void store_u(storage_t<U>* p, UV v) { *p = Arith<U>::store(v); }
  static SV param(const S* p) { return *p; }
  static SV splat(S v) { return v; }
  static UV splat_u(U v) { return v; }
  static UV to_u(SV v) { return convert<U>(v); }
  static SV inject(SV d, S src, int /*lane*/) { return d + src; }
  static bool nonfinite(UV v) { return !is_finite(v); }
};

template <class S, class U>
struct VectorLanes {
  using type = ScalarLanes<S, U>;
};

#if HALFWAVE_HAVE_F16C && defined(__AVX__)

/// Eight binary16 values carried as binary32. Each operation is done in
/// binary32 and rounded to binary16, element for element the same as Half.
struct Half8 {
  __m256 v;

  static __m256 round(__m256 x) { return _mm256_cvtph_ps(_mm256_cvtps_ph(x, _MM_FROUND_TO_NEAREST_INT)); }

  friend Half8 operator+(Half8 a, Half8 b) { return {round(_mm256_add_ps(a.v, b.v))}; }
  friend Half8 operator-(Half8 a, Half8 b) { return {round(_mm256_sub_ps(a.v, b.v))}; }
  friend Half8 operator*(Half8 a, Half8 b) { return {round(_mm256_mul_ps(a.v, b.v))}; }
  friend Half8 operator/(Half8 a, Half8 b) { return {round(_mm256_div_ps(a.v, b.v))}; }
};

static_assert(sizeof(Half) == sizeof(float));

struct Half8Lanes {
  static constexpr int width = 8;
  using SV = Half8;
  using UV = Half8;

  static Half8 load_s(const std::uint16_t* p) {
    return {_mm256_cvtph_ps(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)))};
  }
  static Half8 load_u(const std::uint16_t* p) { return load_s(p); }
  static void store_u(std::uint16_t* p, Half8 v) {
    _mm_storeu_si128(reinterpret_cast<__m128i*>(p), _mm256_cvtps_ph(v.v, _MM_FROUND_TO_NEAREST_INT));
  }
  static Half8 param(const Half* p) { return {_mm256_loadu_ps(&p->v)}; }
  static Half8 splat(Half v) { return {_mm256_set1_ps(v.v)}; }
  static Half8 splat_u(Half v) { return splat(v); }
  static Half8 to_u(Half8 v) { return v; }
  static Half8 inject(Half8 d, Half src, int lane) {
    const Half8 sum = d + splat(src);
    const __m256 mask = _mm256_cmp_ps(_mm256_setr_ps(0, 1, 2, 3, 4, 5, 6, 7),
                                      _mm256_set1_ps(static_cast<float>(lane)), _CMP_EQ_OQ);
    return {_mm256_blendv_ps(d.v, sum.v, mask)};
  }
  static bool nonfinite(Half8 v) {
    const __m256 mag = _mm256_andnot_ps(_mm256_set1_ps(-0.0f), v.v);
    return _mm256_movemask_ps(_mm256_cmp_ps(mag, _mm256_set1_ps(INFINITY), _CMP_NLT_UQ)) != 0;
  }
};

template <>
struct VectorLanes<Half, Half> {
  using type = Half8Lanes;
};

#endif

/// Calls body(lanes, i) over [0, n): whole vector chunks first, then the
/// remaining points one at a time. Both lane kinds round identically, so the
/// split does not change results.
template <class S, class U, class F>
inline void for_each_point(int n, F&& body) {
  using V = typename VectorLanes<S, U>::type;
  int i = 0;
  if constexpr (V::width > 1) {
    for (; i + V::width <= n; i += V::width) body(V{}, i);
  }
  for (; i < n; ++i) body(ScalarLanes<S, U>{}, i);
}

/// Taps applied in the same order as Stencil::apply.
template <class L, class S>
inline typename L::SV apply(const Stencil<S>& st, typename L::SV f0, typename L::SV f1, typename L::SV f2,
                            typename L::SV f3) {
  return (L::splat(st.c[0]) * f0 + L::splat(st.c[3]) * f3) + (L::splat(st.c[1]) * f1 + L::splat(st.c[2]) * f2);
}

/// Derivative along x of a row, output index i, first input at i + base.
template <class L, class S, class T>
inline typename L::SV ddx_at(const Stencil<S>& st, const T* row, int i, int base) {
  const T* p = row + i + base;
  return apply<L>(st, L::load_s(p), L::load_s(p + 1), L::load_s(p + 2), L::load_s(p + 3));
}

/// Four consecutive rows feeding a derivative along y.
template <class T>
struct RowWindow {
  const storage_t<T>* r0;
  const storage_t<T>* r1;
  const storage_t<T>* r2;
  const storage_t<T>* r3;

  RowWindow(const Field2D<T>& f, int j, int base)
      : r0(f.row(j + base)), r1(f.row(j + base + 1)), r2(f.row(j + base + 2)), r3(f.row(j + base + 3)) {}
};

template <class L, class S, class T>
inline typename L::SV ddy_at(const Stencil<S>& st, const RowWindow<T>& w, int i) {
  return apply<L>(st, L::load_s(w.r0 + i), L::load_s(w.r1 + i), L::load_s(w.r2 + i), L::load_s(w.r3 + i));
}

/// Solution update at the points starting at `solution`. `rhs` is the
/// assembled right-hand side in stencil arithmetic; it is rounded into the
/// update arithmetic, scaled by dt, and added to the solution either plainly
/// (the right-hand-side slot keeps the rounded rhs) or through an error-free
/// transformation after folding in the compensation carried in the
/// right-hand-side slot (which then receives the new compensation). Returns
/// true if a stored value is not finite.
template <UpdateKind K, class L, class Storage, class U>
inline bool update_point(Storage* solution, Storage* rhs_slot, typename L::SV rhs, U dt) {
  const typename L::UV r = L::to_u(rhs);
  const typename L::UV increment = L::splat_u(dt) * r;
  const typename L::UV v = L::load_u(solution);
  if constexpr (K == UpdateKind::Baseline) {
    const typename L::UV next = v + increment;
    L::store_u(solution, next);
    L::store_u(rhs_slot, r);
    return L::nonfinite(next);
  } else {
    const typename L::UV folded = increment + L::load_u(rhs_slot);
    const auto st = K == UpdateKind::Comp3 ? sum_3op(v, folded) : sum_6op(v, folded);
    L::store_u(solution, st.s);
    L::store_u(rhs_slot, st.t);
    return L::nonfinite(st.s) || L::nonfinite(st.t);
  }
}

/// Medium plane rounded into arithmetic `S`, keeping the first `rows` rows.
template <class S>
std::vector<S> materialize(const std::vector<double>& plane, int nx, int rows) {
  std::vector<S> out(static_cast<std::size_t>(nx) * rows);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = Arith<S>::from_double(plane[k]);
  return out;
}

template <class S>
std::vector<double> widen(const std::vector<S>& v) {
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = Arith<S>::to_double(v[k]);
  return out;
}

}  // namespace halfwave::kernels
