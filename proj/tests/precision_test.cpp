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
#include <random>
#include <vector>

#include "halfwave/precision.hpp"
#include "oracle.hpp"

namespace hw = halfwave;
using hw::Precision;
using hw::PScalar;

namespace {

enum class Op { Add, Sub, Mul, Div };

PScalar apply(Op op, Precision f, PScalar a, PScalar b) {
  switch (op) {
    case Op::Add:
      return hw::p_add(f, a, b);
    case Op::Sub:
      return hw::p_sub(f, a, b);
    case Op::Mul:
      return hw::p_mul(f, a, b);
    case Op::Div:
      break;
  }
  return hw::p_div(f, a, b);
}

// Exact result rounded once, with IEEE signs for exact zeros.
double expected(Op op, double a, double b, oracle::Format f) {
  const mpq_class qa = oracle::exact(a);
  const mpq_class qb = oracle::exact(b);
  switch (op) {
    case Op::Add:
      return oracle::round(qa + qb, f, std::signbit(a) && std::signbit(b));
    case Op::Sub:
      return oracle::round(qa - qb, f, std::signbit(a) && !std::signbit(b));
    case Op::Mul:
      return oracle::round(qa * qb, f, std::signbit(a) != std::signbit(b));
    case Op::Div:
      break;
  }
  return oracle::round(qa / qb, f, std::signbit(a) != std::signbit(b));
}

bool same(double x, double y) { return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y); }

void check_random_pairs(Op op, Precision p, oracle::Format f, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int k = 0; k < n; ++k) {
    const double a = p == Precision::FP16 ? oracle::random_half(rng) : oracle::random_float(rng);
    const double b = p == Precision::FP16 ? oracle::random_half(rng) : oracle::random_float(rng);
    if (op == Op::Div && b == 0.0) continue;
    const double got = apply(op, p, PScalar::round(p, a), PScalar::round(p, b)).value();
    const double want = expected(op, a, b, f);
    if (!same(got, want) && ++failures <= 5) {
      ADD_FAILURE() << "op " << static_cast<int>(op) << " a=" << a << " b=" << b << " got " << got << " want "
                    << want;
    }
  }
  EXPECT_EQ(failures, 0);
}

}  // namespace

TEST(FormatConstants, MatchTheFormatDefinitions) {
  for (Precision p : {Precision::FP64, Precision::FP32, Precision::FP16}) {
    const auto f = hw::format_constants(p);
    EXPECT_EQ(f.unit_roundoff, std::ldexp(1.0, -(f.fraction_bits + 1)));
  }
  const auto h = hw::format_constants(Precision::FP16);
  EXPECT_EQ(h.exponent_bits, 5);
  EXPECT_EQ(h.fraction_bits, 10);
  EXPECT_EQ(h.max_finite, 65504.0);
  EXPECT_EQ(h.min_positive_normal, std::ldexp(1.0, -14));
  EXPECT_EQ(h.min_positive_subnormal, std::ldexp(1.0, -24));
  const auto s = hw::format_constants(Precision::FP32);
  EXPECT_EQ(s.max_finite, std::numeric_limits<float>::max());
  EXPECT_EQ(s.min_positive_subnormal, std::numeric_limits<float>::denorm_min());
  const auto d = hw::format_constants(Precision::FP64);
  EXPECT_EQ(d.min_positive_normal, std::numeric_limits<double>::min());
}

TEST(FormatConstants, PrintAtFiveSignificantDigits) {
  EXPECT_EQ(hw::format_sig5(hw::format_constants(Precision::FP16).unit_roundoff), "4.8828e-4");
  EXPECT_EQ(hw::format_sig5(hw::format_constants(Precision::FP32).unit_roundoff), "5.9605e-8");
  EXPECT_EQ(hw::format_sig5(hw::format_constants(Precision::FP64).max_finite), "1.7977e308");
  EXPECT_EQ(hw::format_sig5(hw::format_constants(Precision::FP64).min_positive_subnormal), "4.9407e-324");
}

TEST(RoundTo, Examples) {
  EXPECT_EQ(hw::round_to(Precision::FP16, 1.0).value(), 1.0);
  EXPECT_EQ(hw::round_to(Precision::FP16, 1.0 + std::ldexp(1.0, -12)).value(), 1.0);
  EXPECT_EQ(hw::round_to(Precision::FP16, 65520.0).value(), INFINITY);
  EXPECT_EQ(hw::round_to(Precision::FP16, 65519.99).value(), 65504.0);
  EXPECT_EQ(hw::round_to(Precision::FP16, -65520.0).value(), -INFINITY);
  EXPECT_EQ(hw::format_sig5(hw::round_to(Precision::FP16, 6.0e-8).value()), "5.9605e-8");
  EXPECT_EQ(hw::round_to(Precision::FP16, std::ldexp(1.0, -25)).value(), 0.0);  // tie to even zero
  EXPECT_EQ(hw::round_to(Precision::FP16, std::ldexp(1.5, -25)).value(), std::ldexp(1.0, -24));
  EXPECT_TRUE(std::isnan(hw::round_to(Precision::FP16, NAN).value()));
  EXPECT_TRUE(std::signbit(hw::round_to(Precision::FP16, -1e-30).value()));
}

TEST(RoundTo, AgreesWithRationalOracleOnRandomDoubles) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(1.0, 2.0);
  std::uniform_int_distribution<int> expo(-30, 17);
  for (int k = 0; k < 200000; ++k) {
    double x = std::ldexp(mant(rng), expo(rng));
    if (k & 1) x = -x;
    ASSERT_TRUE(same(hw::round_half(x), oracle::round(oracle::exact(x), oracle::kBinary16, std::signbit(x))))
        << x;
  }
}

TEST(RoundTo, ExactHalfwayPointsTieToEven) {
  // Midpoints between consecutive binary16 values in every binade.
  for (int e = -24; e <= 15; ++e) {
    const double ulp = std::ldexp(1.0, std::max(e, -14) - 10);
    for (int k = 0; k < 8; ++k) {
      const double lo = std::ldexp(1.0, e) + k * ulp;
      const double mid = lo + ulp / 2;
      const double want = oracle::round(oracle::exact(mid), oracle::kBinary16);
      EXPECT_TRUE(same(hw::round_half(mid), want)) << mid;
    }
  }
}

TEST(RoundTo, IsIdempotent) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mant(-2.0, 2.0);
  std::uniform_int_distribution<int> expo(-160, 140);
  for (Precision p : {Precision::FP64, Precision::FP32, Precision::FP16}) {
    for (int k = 0; k < 100000; ++k) {
      const double x = std::ldexp(mant(rng), expo(rng));
      const PScalar once = hw::round_to(p, x);
      EXPECT_EQ(hw::round_to(p, once.value()), once);
    }
  }
}

TEST(RoundTo, IsMonotone) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> mant(-2.0, 2.0);
  std::uniform_int_distribution<int> expo(-30, 17);
  for (Precision p : {Precision::FP32, Precision::FP16}) {
    for (int k = 0; k < 100000; ++k) {
      double x = std::ldexp(mant(rng), expo(rng));
      double y = std::ldexp(mant(rng), expo(rng));
      if (x > y) std::swap(x, y);
      EXPECT_LE(hw::round_to(p, x).value(), hw::round_to(p, y).value());
    }
  }
}

TEST(ScalarOps, Examples) {
  const auto h = [](double x) { return hw::round_to(Precision::FP16, x); };
  EXPECT_EQ(hw::p_add(Precision::FP16, h(2048), h(1)).value(), 2048.0);
  EXPECT_EQ(hw::p_mul(Precision::FP16, h(256), h(256)).value(), INFINITY);
  for (double x : {1.0, -3.5, 1e-300, 1e300, 0.1}) {
    const auto px = hw::round_to(Precision::FP64, x);
    EXPECT_EQ(hw::p_add(Precision::FP64, px, hw::round_to(Precision::FP64, 0.0)), px);
  }
  EXPECT_THROW(hw::p_add(Precision::FP16, h(1), hw::round_to(Precision::FP32, 1)), std::invalid_argument);
}

TEST(ScalarOps, Binary16AddMatchesOracle) { check_random_pairs(Op::Add, Precision::FP16, oracle::kBinary16, 1000000, 1); }
TEST(ScalarOps, Binary16SubMatchesOracle) { check_random_pairs(Op::Sub, Precision::FP16, oracle::kBinary16, 1000000, 2); }
TEST(ScalarOps, Binary16MulMatchesOracle) { check_random_pairs(Op::Mul, Precision::FP16, oracle::kBinary16, 1000000, 3); }
TEST(ScalarOps, Binary16DivMatchesOracle) { check_random_pairs(Op::Div, Precision::FP16, oracle::kBinary16, 1000000, 4); }

TEST(ScalarOps, Binary32MatchesOracle) {
  for (Op op : {Op::Add, Op::Sub, Op::Mul, Op::Div}) {
    check_random_pairs(op, Precision::FP32, oracle::kBinary32, 100000, 10 + static_cast<int>(op));
  }
}

TEST(ScalarOps, StratifiedBinary16AdditionMatchesOracle) {
  // 64 x 64 values drawn from the strata where rounding is delicate: signed
  // zeros, subnormals, the normal threshold, around 1 and 2048, and the
  // overflow edge.
  std::vector<double> v = {0.0, -0.0};
  for (int k : {1, 2, 3, 511, 512, 1023}) v.push_back(std::ldexp(k, -24));
  for (double x : {std::ldexp(1.0, -14), std::ldexp(1.0, -14) + std::ldexp(1.0, -24), 0.5, 1.0 - std::ldexp(1.0, -11),
                   1.0, 1.0 + std::ldexp(1.0, -10), 2.0, 1024.0, 2047.0, 2048.0, 2050.0, 4096.0, 32768.0, 65472.0,
                   65504.0, 3.140625, 0.0999755859375})
    v.push_back(x);
  while (v.size() < 32) v.push_back(std::ldexp(1.0 + (v.size() % 7) / 8.0, static_cast<int>(v.size()) % 30 - 15));
  const std::size_t base = v.size();
  for (std::size_t k = 0; k < base; ++k) v.push_back(-v[k]);
  ASSERT_EQ(v.size(), 64U);
  for (double a : v) {
    for (double b : v) {
      const double got =
          hw::p_add(Precision::FP16, hw::round_to(Precision::FP16, a), hw::round_to(Precision::FP16, b)).value();
      EXPECT_TRUE(same(got, expected(Op::Add, a, b, oracle::kBinary16))) << a << " + " << b;
    }
  }
}

TEST(HalfType, CarrierOpsMatchScalarOps) {
  // The solver's Half type (hardware conversions when available) against the
  // software-rounded scalar ops.
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200000; ++k) {
    const double a = oracle::random_half(rng);
    const double b = oracle::random_half(rng);
    const hw::Half ha = hw::Half::exact(a);
    const hw::Half hb = hw::Half::exact(b);
    const PScalar pa = hw::round_to(Precision::FP16, a);
    const PScalar pb = hw::round_to(Precision::FP16, b);
    ASSERT_TRUE(same(static_cast<double>(ha + hb), hw::p_add(Precision::FP16, pa, pb).value()));
    ASSERT_TRUE(same(static_cast<double>(ha - hb), hw::p_sub(Precision::FP16, pa, pb).value()));
    ASSERT_TRUE(same(static_cast<double>(ha * hb), hw::p_mul(Precision::FP16, pa, pb).value()));
    if (b != 0.0) {
      ASSERT_TRUE(same(static_cast<double>(ha / hb), hw::p_div(Precision::FP16, pa, pb).value()));
    }
  }
}

TEST(HalfType, ConversionRoundingMatchesSoftware) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 200000; ++k) {
    const float x = static_cast<float>(oracle::random_float(rng));
    ASSERT_TRUE(same(static_cast<double>(hw::Half::round_op(x)), hw::round_half(x))) << x;
  }
}

TEST(HalfType, StorageRoundTripsEveryPattern) {
  for (int bits = 0; bits < 0x10000; ++bits) {
    const auto u = static_cast<std::uint16_t>(bits);
    const hw::Half h = hw::Arith<hw::Half>::load(u);
    if (std::isnan(h.v)) continue;
    EXPECT_EQ(hw::Arith<hw::Half>::store(h), u);
  }
}

TEST(ParsePrecision, AcceptsAliases) {
  EXPECT_EQ(hw::parse_precision("half"), Precision::FP16);
  EXPECT_EQ(hw::parse_precision("single"), Precision::FP32);
  EXPECT_EQ(hw::parse_precision("fp64"), Precision::FP64);
  EXPECT_THROW(hw::parse_precision("bf16"), std::invalid_argument);
}
