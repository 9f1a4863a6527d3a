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

#include "halfwave/precision.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace halfwave {

FloatFormat format_constants(Precision p) {
  switch (p) {
    case Precision::FP64:
      return {p, 11, 52, 0x1p-53, std::numeric_limits<double>::max(),
              std::numeric_limits<double>::min(), std::numeric_limits<double>::denorm_min()};
    case Precision::FP32:
      return {p, 8, 23, 0x1p-24, std::numeric_limits<float>::max(),
              std::numeric_limits<float>::min(), std::numeric_limits<float>::denorm_min()};
    case Precision::FP16:
      break;
  }
  return {Precision::FP16, 5, 10, 0x1p-11, 65504.0, 0x1p-14, 0x1p-24};
}

std::string_view to_string(Precision p) {
  switch (p) {
    case Precision::FP64:
      return "fp64";
    case Precision::FP32:
      return "fp32";
    case Precision::FP16:
      break;
  }
  return "fp16";
}

Precision parse_precision(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "fp64" || s == "double" || s == "binary64") return Precision::FP64;
  if (s == "fp32" || s == "single" || s == "float" || s == "binary32") return Precision::FP32;
  if (s == "fp16" || s == "half" || s == "binary16") return Precision::FP16;
  throw std::invalid_argument("unknown precision '" + std::string(text) + "'");
}

std::string format_sig5(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4e", value);
  std::string s(buf);
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  std::string sign;
  if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-')) {
    if (exponent[0] == '-') sign = "-";
    exponent.erase(0, 1);
  }
  exponent.erase(0, std::min(exponent.find_first_not_of('0'), exponent.size() - 1));
  return mantissa + "e" + sign + exponent;
}

std::string formats_table() {
  constexpr Precision order[] = {Precision::FP64, Precision::FP32, Precision::FP16};
  char line[160];
  std::string out;
  auto row = [&](const char* label, auto cell) {
    std::snprintf(line, sizeof line, "%-36s", label);
    out += line;
    for (Precision p : order) {
      std::snprintf(line, sizeof line, " %-11s", cell(format_constants(p)).c_str());
      out += line;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  };
  row("", [](const FloatFormat& f) { return std::string(to_string(f.name)); });
  row("number of exponent bits", [](const FloatFormat& f) { return std::to_string(f.exponent_bits); });
  row("number of fraction bits", [](const FloatFormat& f) { return std::to_string(f.fraction_bits) + "+1"; });
  row("unit roundoff", [](const FloatFormat& f) { return format_sig5(f.unit_roundoff); });
  row("largest number", [](const FloatFormat& f) { return format_sig5(f.max_finite); });
  row("smallest positive normal number", [](const FloatFormat& f) { return format_sig5(f.min_positive_normal); });
  row("smallest positive subnormal number",
      [](const FloatFormat& f) { return format_sig5(f.min_positive_subnormal); });
  return out;
}

PScalar round_to(Precision format, double x) { return PScalar::round(format, x); }

namespace {

void check_operands(Precision format, PScalar a, PScalar b) {
  if (a.format() != format || b.format() != format) {
    throw std::invalid_argument("operand format does not match operation format " +
                                std::string(to_string(format)));
  }
}

}  // namespace

PScalar p_add(Precision format, PScalar a, PScalar b) {
  check_operands(format, a, b);
  return PScalar::round(format, a.value() + b.value());
}

PScalar p_sub(Precision format, PScalar a, PScalar b) {
  check_operands(format, a, b);
  return PScalar::round(format, a.value() - b.value());
}

PScalar p_mul(Precision format, PScalar a, PScalar b) {
  check_operands(format, a, b);
  return PScalar::round(format, a.value() * b.value());
}

PScalar p_div(Precision format, PScalar a, PScalar b) {
  check_operands(format, a, b);
  return PScalar::round(format, a.value() / b.value());
}

}  // namespace halfwave
