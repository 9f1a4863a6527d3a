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

#include "halfwave/source.hpp"

#include <stdexcept>
#include <string>

namespace halfwave {

std::string_view to_string(SourceKind k) {
  return k == SourceKind::PressurePoint ? "pressure_point" : "vy_point";
}

SourceKind parse_source_kind(std::string_view text) {
  if (text == "pressure_point" || text == "pressure" || text == "p") return SourceKind::PressurePoint;
  if (text == "vy_point" || text == "vy") return SourceKind::VyPoint;
  throw std::invalid_argument("unknown source kind '" + std::string(text) + "'");
}

}  // namespace halfwave
