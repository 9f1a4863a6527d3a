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

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

#if defined(__F16C__)
#include <immintrin.h>
#define HALFWAVE_HAVE_F16C 1
#else
#define HALFWAVE_HAVE_F16C 0
#endif

namespace halfwave {

/// Operating precision of one simulation phase.
enum class Precision : std::uint8_t { FP64, FP32, FP16 };

/// IEEE format metadata. `fraction_bits` counts stored bits only (no hidden
/// bit), so the unit roundoff is 2^-(fraction_bits + 1).
struct FloatFormat {
  Precision name;
  int exponent_bits;
  int fraction_bits;
  double unit_roundoff;
  double max_finite;
  double min_positive_normal;
  double min_positive_subnormal;
};

FloatFormat format_constants(Precision p);

std::string_view to_string(Precision p);

/// Accepts "fp64", "fp32", "fp16" (also "double", "single", "half").
/// Throws std::invalid_argument on anything else.
Precision parse_precision(std::string_view text);

/// Formats a value with five significant digits and a compact exponent,
/// e.g. 4.8828e-4, 1.7977e308.
std::string format_sig5(double value);

/// The three formats side by side (exponent bits, fraction bits, unit
/// roundoff, largest, smallest normal and subnormal), one quantity per line.
std::string formats_table();

namespace detail {

inline constexpr std::uint64_t kSignBit = 0x8000000000000000ULL;
inline constexpr std::uint64_t kExpMask = 0x7FF0000000000000ULL;
// |x| >= 65520 rounds past the largest binary16 value (65504) to infinity.
inline constexpr std::uint64_t kHalfOverflowBits = 0x40EFFE0000000000ULL;
// 2^-14, the smallest positive normal binary16 value.
inline constexpr std::uint64_t kHalfMinNormalBits = 0x3F10000000000000ULL;
// 42 = 52 - 10 fraction bits dropped when going from binary64 to binary16.
inline constexpr int kHalfDropBits = 42;
inline constexpr std::uint64_t kHalfDropMask = (1ULL << kHalfDropBits) - 1;

}  // namespace detail

/// Rounds a binary64 value to the nearest binary16 value (ties to even),
/// returning it widened back to binary64. Gradual underflow is honored;
/// values at or past the overflow threshold become +-inf; NaN stays NaN.
inline double round_half(double x) {
  using detail::kSignBit;
  const auto bits = std::bit_cast<std::uint64_t>(x);
  const std::uint64_t sign = bits & kSignBit;
  std::uint64_t mag = bits ^ sign;
  if (mag >= detail::kHalfOverflowBits) {
    if (mag > detail::kExpMask) return x;
    return std::bit_cast<double>(sign | detail::kExpMask);
  }
  if (mag >= detail::kHalfMinNormalBits) {
    // Integer round-to-nearest-even on the dropped fraction bits; a carry
    // out of the fraction correctly bumps the exponent.
    const std::uint64_t lsb = (mag >> detail::kHalfDropBits) & 1U;
    mag += (detail::kHalfDropMask >> 1) + lsb;
    mag &= ~detail::kHalfDropMask;
    return std::bit_cast<double>(sign | mag);
  }
  // Subnormal range: fixed quantum 2^-24. Adding 1.5 * 2^28 puts the sum in
  // the binade whose ulp is exactly 2^-24, so the hardware RNE addition does
  // the rounding.
  constexpr double kMagic = 0x1.8p28;
  const double r = (std::bit_cast<double>(mag) + kMagic) - kMagic;
  return std::bit_cast<double>(std::bit_cast<std::uint64_t>(r) | sign);
}

/// Rounds a binary64 value into `p`, returning the result widened to binary64.
inline double round_value(Precision p, double x) {
  switch (p) {
    case Precision::FP64:
      return x;
    case Precision::FP32:
      return static_cast<double>(static_cast<float>(x));
    case Precision::FP16:
      return round_half(x);
  }
  return x;
}

/// A real number held in a binary64 container that is exactly representable
/// in its tagged format.
class PScalar {
 public:
  constexpr PScalar() = default;

  static PScalar round(Precision format, double x) {
    return PScalar(format, round_value(format, x));
  }

  constexpr double value() const { return value_; }
  constexpr Precision format() const { return format_; }

  friend bool operator==(const PScalar& a, const PScalar& b) {
    if (a.format_ != b.format_) return false;
    if (std::isnan(a.value_) && std::isnan(b.value_)) return true;
    return std::bit_cast<std::uint64_t>(a.value_) ==
           std::bit_cast<std::uint64_t>(b.value_);
  }

 private:
  constexpr PScalar(Precision format, double value)
      : value_(value), format_(format) {}

  double value_ = 0.0;
  Precision format_ = Precision::FP64;
};

PScalar round_to(Precision format, double x);

// Correctly rounded scalar arithmetic. Narrow formats are computed in binary64
// and rounded once. For binary16 operands the binary64 sum, difference and
// product are exact, so only one rounding ever happens. For quotients (and for
// all binary32 operations) the binary64 result is itself rounded, but binary64
// carries 53 >= 2p + 2 significant bits for p = 11 and p = 24, the regime in
// which rounding twice is provably identical to rounding once for + - * /.
//
// Throws std::invalid_argument if an operand's format differs from `format`.
PScalar p_add(Precision format, PScalar a, PScalar b);
PScalar p_sub(Precision format, PScalar a, PScalar b);
PScalar p_mul(Precision format, PScalar a, PScalar b);
PScalar p_div(Precision format, PScalar a, PScalar b);

/// Software binary16 arithmetic type used by the solver kernels. The value is
/// carried widened to binary64 and re-rounded after every operation, which
/// yields exactly the PScalar results above.
struct Half {
  float v = 0.0f;

  constexpr Half() = default;

  /// Rounds an arbitrary binary64 value.
  static Half round(double x) { return exact(round_half(x)); }

  /// Rounds the binary32 result of one operation on binary16 operands. That
  /// result is itself correctly rounded and binary32 keeps 24 >= 2 * 11 + 2
  /// significant bits, so rounding it again to binary16 gives the same value
  /// as rounding the exact result once.
  static Half round_op(float x) {
#if HALFWAVE_HAVE_F16C
    Half h;
    h.v = _cvtsh_ss(_cvtss_sh(x, _MM_FROUND_TO_NEAREST_INT));
    return h;
#else
    return round(x);
#endif
  }

  /// Wraps a value already known to be binary16-representable.
  static constexpr Half exact(double x) {
    Half h;
    h.v = static_cast<float>(x);
    return h;
  }

  explicit constexpr operator double() const { return v; }

  friend Half operator+(Half a, Half b) { return round_op(a.v + b.v); }
  friend Half operator-(Half a, Half b) { return round_op(a.v - b.v); }
  friend Half operator*(Half a, Half b) { return round_op(a.v * b.v); }
  friend Half operator/(Half a, Half b) { return round_op(a.v / b.v); }
  friend constexpr Half operator-(Half a) { return exact(-a.v); }
  friend constexpr bool operator==(Half a, Half b) { return a.v == b.v; }
};

/// Encodes a binary16-representable binary64 value into its 16-bit pattern.
inline std::uint16_t half_bits(double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  const auto sign = static_cast<std::uint16_t>((bits >> 48) & 0x8000U);
  const std::uint64_t mag = bits & ~detail::kSignBit;
  if (mag >= detail::kExpMask) {
    return static_cast<std::uint16_t>(sign | (mag > detail::kExpMask ? 0x7E00U : 0x7C00U));
  }
  if (mag >= detail::kHalfMinNormalBits) {
    const auto exponent = static_cast<std::uint16_t>((mag >> 52) - 1008);
    const auto fraction = static_cast<std::uint16_t>((mag >> detail::kHalfDropBits) & 0x3FFU);
    return static_cast<std::uint16_t>(sign | (exponent << 10) | fraction);
  }
  const double quanta = std::bit_cast<double>(mag) * 0x1p24;
  return static_cast<std::uint16_t>(sign | static_cast<std::uint16_t>(quanta));
}

/// Decodes a binary16 bit pattern to binary64 (exact).
inline double half_value(std::uint16_t h) {
  const std::uint64_t sign = static_cast<std::uint64_t>(h & 0x8000U) << 48;
  const std::uint32_t exponent = (h >> 10) & 0x1FU;
  const std::uint64_t fraction = h & 0x3FFU;
  if (exponent == 0) {
    const double m = static_cast<double>(fraction) * 0x1p-24;
    return std::bit_cast<double>(std::bit_cast<std::uint64_t>(m) | sign);
  }
  if (exponent == 0x1F) {
    return std::bit_cast<double>(sign | detail::kExpMask | (fraction << detail::kHalfDropBits));
  }
  return std::bit_cast<double>(sign | (static_cast<std::uint64_t>(exponent + 1008) << 52) |
                               (fraction << detail::kHalfDropBits));
}

/// Compile-time description of an arithmetic type: its format tag, the
/// container used for field storage, and conversions.
template <class T>
struct Arith;

template <>
struct Arith<double> {
  using storage = double;
  static constexpr Precision precision = Precision::FP64;
  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  static storage store(double x) { return x; }
  static double load(storage s) { return s; }
};

template <>
struct Arith<float> {
  using storage = float;
  static constexpr Precision precision = Precision::FP32;
  static float from_double(double x) { return static_cast<float>(x); }
  static double to_double(float x) { return x; }
  static storage store(float x) { return x; }
  static float load(storage s) { return s; }
};

template <>
struct Arith<Half> {
  using storage = std::uint16_t;
  static constexpr Precision precision = Precision::FP16;
  static Half from_double(double x) { return Half::round(x); }
  static double to_double(Half x) { return x.v; }
#if HALFWAVE_HAVE_F16C
  static storage store(Half x) { return _cvtss_sh(x.v, _MM_FROUND_TO_NEAREST_INT); }
  static Half load(storage s) { return Half::exact(_cvtsh_ss(s)); }
#else
  static storage store(Half x) { return half_bits(x.v); }
  static Half load(storage s) { return Half::exact(half_value(s)); }
#endif
};

/// Converts between arithmetic types with a single rounding (exact widening).
template <class To, class From>
inline To convert(From x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else {
    return Arith<To>::from_double(Arith<From>::to_double(x));
  }
}

template <class T>
inline bool is_finite(T x) {
  return std::isfinite(Arith<T>::to_double(x));
}

/// Calls `f` with a value-initialized arithmetic type selected at runtime.
template <class F>
decltype(auto) dispatch_precision(Precision p, F&& f) {
  switch (p) {
    case Precision::FP64:
      return f(double{});
    case Precision::FP32:
      return f(float{});
    case Precision::FP16:
      break;
  }
  return f(Half{});
}

}  // namespace halfwave
