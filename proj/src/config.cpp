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

#include "halfwave/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace halfwave {

namespace {

constexpr int kDeskShrink = 4;
constexpr int kDeskSteps = 12000;
constexpr double kSourceAmplitude = 1.0e4;

[[noreturn]] void bad_value(std::string_view section, std::string_view key, const std::string& value) {
  throw std::invalid_argument("invalid value '" + value + "' for " + std::string(section) + "." + std::string(key));
}

double to_double(std::string_view section, std::string_view key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(section, key, value);
  return out;
}

int to_int(std::string_view section, std::string_view key, const std::string& value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(section, key, value);
  return out;
}

bool to_bool(std::string_view section, std::string_view key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(section, key, value);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string shortest(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

UpdateMode parse_mode(std::string_view text, Equation eq) {
  if (text == "naive" || text == "baseline") return UpdateMode::baseline();
  if (text == "compensated") return UpdateMode::with(eq == Equation::Elastic ? SumVariant::OP6 : SumVariant::OP3);
  return UpdateMode::with(parse_sum_variant(text));
}

std::string_view builder_name(MediumConfig::Builder b) {
  switch (b) {
    case MediumConfig::Builder::Homogeneous:
      return "homogeneous";
    case MediumConfig::Builder::Layered:
      return "layered";
    case MediumConfig::Builder::File:
      break;
  }
  return "file";
}

}  // namespace

RunSpec SimConfig::to_run_spec() const {
  RunSpec spec;
  spec.equation = equation;
  spec.grid = grid;
  grid.validate();
  switch (medium.builder) {
    case MediumConfig::Builder::Homogeneous:
      spec.medium = equation == Equation::Acoustic
                        ? build_homogeneous_acoustic(grid.nx, grid.ny, medium.rho, medium.c)
                        : build_homogeneous_elastic(grid.nx, grid.ny, medium.rho, medium.c, medium.cs);
      break;
    case MediumConfig::Builder::Layered:
      if (equation != Equation::Elastic) throw std::invalid_argument("layered media are elastic only");
      spec.medium = build_layered_elastic(grid.nx, grid.ny, medium.layers.empty() ? default_layers() : medium.layers);
      break;
    case MediumConfig::Builder::File:
      spec.medium = load_medium_file(medium.path);
      break;
  }
  spec.source = source;
  spec.receivers = receivers;
  spec.stencil_precision = stencil_precision;
  spec.update_precision = update_precision;
  spec.mode = mode;
  spec.energy_cadence = energy_cadence;
  spec.initial = initial;
  detail::validate_common(spec, equation == Equation::Acoustic ? MediumKind::Acoustic : MediumKind::Elastic);
  return spec;
}

std::vector<std::string> preset_names() { return {"paper-acoustic", "paper-elastic"}; }

SimConfig preset(std::string_view name, bool desk) {
  SimConfig cfg;
  cfg.name = std::string(name);
  cfg.source.wavelet.f_center = 5.0;
  cfg.source.wavelet.delay = kDefaultDelayPeriods / 5.0;
  cfg.source.wavelet.amplitude = kSourceAmplitude;
  cfg.grid.nx = cfg.grid.ny = 600;
  cfg.grid.dt = 1.0e-4;
  cfg.grid.nt = 60000;
  if (name == "paper-acoustic") {
    // 12.5 Hz maximum frequency at c = 1 m/s and 10 points per wavelength.
    cfg.equation = Equation::Acoustic;
    cfg.grid.dx = 1.0 / 125.0;
    cfg.medium.rho = 1.0;
    cfg.medium.c = 1.0;
    cfg.source.kind = SourceKind::PressurePoint;
    cfg.source.ix = cfg.source.iy = 200;
    cfg.receivers = {{400, 400}};
  } else if (name == "paper-elastic") {
    // Same rule on the slowest shear speed, in km, s and Gt/km^3.
    cfg.equation = Equation::Elastic;
    cfg.grid.dx = 1.0117 / 125.0;
    cfg.grid.bc_y = BoundaryCondition::FreeSurface;
    cfg.medium.builder = MediumConfig::Builder::Layered;
    cfg.medium.layers = default_layers();
    cfg.source.kind = SourceKind::VyPoint;
    cfg.source.ix = 200;
    cfg.source.iy = 10;
    cfg.receivers = {{400, 10}};
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  if (desk) {
    cfg.name += "-desk";
    cfg.grid.nx /= kDeskShrink;
    cfg.grid.ny /= kDeskShrink;
    cfg.grid.nt = kDeskSteps;
    cfg.source.ix /= kDeskShrink;
    if (cfg.equation == Equation::Acoustic) cfg.source.iy /= kDeskShrink;
    for (Receiver& r : cfg.receivers) {
      r.ix /= kDeskShrink;
      if (cfg.equation == Equation::Acoustic) r.iy /= kDeskShrink;
    }
  }
  return cfg;
}

void apply_setting(SimConfig& cfg, std::string_view section, std::string_view key, const std::string& value) {
  auto unknown = [&]() {
    throw std::invalid_argument("unknown config key '" + std::string(section) + "." + std::string(key) + "'");
  };
  auto num = [&]() { return to_double(section, key, value); };
  auto integer = [&]() { return to_int(section, key, value); };
  try {
    if (section == "run") {
      if (key == "name") cfg.name = value;
      else if (key == "equation") cfg.equation = parse_equation(value);
      else if (key == "energy_cadence") cfg.energy_cadence = integer();
      else if (key == "output_dir") cfg.output_dir = value;
      else unknown();
    } else if (section == "grid") {
      if (key == "nx") cfg.grid.nx = integer();
      else if (key == "ny") cfg.grid.ny = integer();
      else if (key == "dx") cfg.grid.dx = num();
      else if (key == "dt") cfg.grid.dt = num();
      else if (key == "nt") cfg.grid.nt = integer();
      else if (key == "bc_x") cfg.grid.bc_x = parse_boundary(value);
      else if (key == "bc_y") cfg.grid.bc_y = parse_boundary(value);
      else unknown();
    } else if (section == "medium") {
      if (key == "builder") {
        if (value == "homogeneous") cfg.medium.builder = MediumConfig::Builder::Homogeneous;
        else if (value == "layered") cfg.medium.builder = MediumConfig::Builder::Layered;
        else if (value == "file") cfg.medium.builder = MediumConfig::Builder::File;
        else bad_value(section, key, value);
      } else if (key == "rho") cfg.medium.rho = num();
      else if (key == "c" || key == "cp") cfg.medium.c = num();
      else if (key == "cs") cfg.medium.cs = num();
      else if (key == "path") {
        cfg.medium.path = value;
        cfg.medium.builder = MediumConfig::Builder::File;
      } else if (key == "layers") {
        cfg.medium.layers.clear();
        for (const auto& item : split(value, ',')) {
          const auto parts = split(item, ':');
          if (parts.size() != 4) bad_value(section, key, value);
          cfg.medium.layers.push_back({to_double(section, key, parts[0]), to_double(section, key, parts[1]),
                                       to_double(section, key, parts[2]), to_double(section, key, parts[3])});
        }
      } else unknown();
    } else if (section == "source") {
      if (key == "kind") cfg.source.kind = parse_source_kind(value);
      else if (key == "ix") cfg.source.ix = integer();
      else if (key == "iy") cfg.source.iy = integer();
      else if (key == "f_center") cfg.source.wavelet.f_center = num();
      else if (key == "delay") cfg.source.wavelet.delay = num();
      else if (key == "amplitude") cfg.source.wavelet.amplitude = num();
      else if (key == "enabled") cfg.source.enabled = to_bool(section, key, value);
      else unknown();
    } else if (section == "receivers") {
      if (key != "list") unknown();
      cfg.receivers.clear();
      for (const auto& item : split(value, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) bad_value(section, key, value);
        cfg.receivers.push_back({to_int(section, key, parts[0]), to_int(section, key, parts[1])});
      }
    } else if (section == "precision") {
      if (key == "stencil") cfg.stencil_precision = parse_precision(value);
      else if (key == "update") cfg.update_precision = parse_precision(value);
      else if (key == "both") cfg.stencil_precision = cfg.update_precision = parse_precision(value);
      else if (key == "mode") cfg.mode = parse_mode(value, cfg.equation);
      else unknown();
    } else if (section == "initial") {
      if (key == "amplitude") cfg.initial.amplitude = num();
      else if (key == "x0") cfg.initial.x0 = num();
      else if (key == "y0") cfg.initial.y0 = num();
      else if (key == "width") cfg.initial.width = num();
      else unknown();
    } else {
      throw std::invalid_argument("unknown config section '" + std::string(section) + "'");
    }
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.find(std::string(section) + ".") != std::string::npos || what.rfind("unknown config", 0) == 0) throw;
    throw std::invalid_argument(std::string(section) + "." + std::string(key) + ": " + what);
  }
}

void apply_setting(SimConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq) {
    throw std::invalid_argument("expected section.key=value, got '" + std::string(assignment) + "'");
  }
  apply_setting(cfg, assignment.substr(0, dot), assignment.substr(dot + 1, eq - dot - 1),
                std::string(assignment.substr(eq + 1)));
}

SimConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  // The INI reader only knows whole-line ';' comments. Drop '#' lines and
  // any comment that follows whitespace.
  std::ostringstream cleaned;
  for (std::string line; std::getline(in, line);) {
    const auto b = line.find_first_not_of(" \t");
    if (b != std::string::npos && line[b] == '#') continue;
    for (std::size_t k = 1; k < line.size(); ++k) {
      if ((line[k] == ';' || line[k] == '#') && (line[k - 1] == ' ' || line[k - 1] == '\t')) {
        line.erase(k);
        break;
      }
    }
    cleaned << line << '\n';
  }
  boost::property_tree::ptree tree;
  std::istringstream text(cleaned.str());
  try {
    boost::property_tree::ini_parser::read_ini(text, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.message() + " at line " + std::to_string(e.line()));
  }

  SimConfig cfg;
  bool desk = false;
  if (auto run = tree.get_child_optional("run")) {
    desk = to_bool("run", "desk", run->get<std::string>("desk", "false"));
    if (auto name = run->get_optional<std::string>("preset")) cfg = preset(*name, desk);
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw std::invalid_argument("key '" + section + "' outside a section");
    }
    for (const auto& [key, value] : body) {
      if (section == "run" && (key == "preset" || key == "desk")) continue;
      if (section == "precision" && key == "mode") continue;
      apply_setting(cfg, section, key, value.data());
    }
  }
  // The default compensated variant depends on the equation, so apply it last.
  if (auto mode = tree.get_optional<std::string>("precision.mode")) apply_setting(cfg, "precision", "mode", *mode);
  apply_environment(cfg);
  return cfg;
}

std::string to_config_text(const SimConfig& cfg) {
  std::ostringstream out;
  out << "[run]\nname = " << cfg.name << "\nequation = " << to_string(cfg.equation)
      << "\nenergy_cadence = " << cfg.energy_cadence << "\noutput_dir = " << cfg.output_dir.string() << "\n\n";
  out << "[grid]\nnx = " << cfg.grid.nx << "\nny = " << cfg.grid.ny << "\ndx = " << shortest(cfg.grid.dx)
      << "\ndt = " << shortest(cfg.grid.dt) << "\nnt = " << cfg.grid.nt << "\nbc_x = " << to_string(cfg.grid.bc_x)
      << "\nbc_y = " << to_string(cfg.grid.bc_y) << "\n\n";
  out << "[medium]\nbuilder = " << builder_name(cfg.medium.builder);
  switch (cfg.medium.builder) {
    case MediumConfig::Builder::Homogeneous:
      out << "\nrho = " << shortest(cfg.medium.rho) << "\nc = " << shortest(cfg.medium.c);
      if (cfg.equation == Equation::Elastic) out << "\ncs = " << shortest(cfg.medium.cs);
      break;
    case MediumConfig::Builder::Layered: {
      out << "\nlayers = ";
      const auto layers = cfg.medium.layers.empty() ? default_layers() : cfg.medium.layers;
      for (std::size_t k = 0; k < layers.size(); ++k) {
        const Layer& l = layers[k];
        out << (k ? ", " : "") << shortest(l.depth_fraction) << ":" << shortest(l.rho) << ":" << shortest(l.cp) << ":"
            << shortest(l.cs);
      }
      break;
    }
    case MediumConfig::Builder::File:
      out << "\npath = " << cfg.medium.path.string();
      break;
  }
  out << "\n\n[source]\nkind = " << to_string(cfg.source.kind) << "\nix = " << cfg.source.ix
      << "\niy = " << cfg.source.iy << "\nf_center = " << shortest(cfg.source.wavelet.f_center)
      << "\ndelay = " << shortest(cfg.source.wavelet.delay)
      << "\namplitude = " << shortest(cfg.source.wavelet.amplitude)
      << "\nenabled = " << (cfg.source.enabled ? "true" : "false") << "\n\n";
  out << "[receivers]\nlist = ";
  for (std::size_t k = 0; k < cfg.receivers.size(); ++k)
    out << (k ? ", " : "") << cfg.receivers[k].ix << ":" << cfg.receivers[k].iy;
  out << "\n\n[precision]\nstencil = " << to_string(cfg.stencil_precision)
      << "\nupdate = " << to_string(cfg.update_precision) << "\nmode = " << cfg.mode.label() << "\n";
  if (cfg.initial.amplitude != 0.0) {
    out << "\n[initial]\namplitude = " << shortest(cfg.initial.amplitude) << "\nx0 = " << shortest(cfg.initial.x0)
        << "\ny0 = " << shortest(cfg.initial.y0) << "\nwidth = " << shortest(cfg.initial.width) << "\n";
  }
  return out.str();
}

void apply_environment(SimConfig& cfg) {
  if (const char* out = std::getenv("HALFWAVE_OUT"); out != nullptr && *out != '\0') cfg.output_dir = out;
}

bool AuditReport::ok() const {
  for (const auto& i : issues)
    if (i.severity == AuditIssue::Severity::Error) return false;
  return true;
}

std::string AuditReport::text() const {
  std::ostringstream out;
  for (const auto& i : issues) {
    out << (i.severity == AuditIssue::Severity::Error ? "error: " : "warning: ") << i.message << '\n';
  }
  if (issues.empty()) out << "all parameters within the normal range of their formats\n";
  return out.str();
}

AuditReport range_audit(const SimConfig& cfg) { return range_audit(cfg, cfg.to_run_spec().medium); }

AuditReport range_audit(const SimConfig& cfg, const Medium& medium) {
  AuditReport report;
  auto check = [&](const std::string& what, double x, Precision p) {
    if (x == 0.0 || !std::isfinite(x)) return;
    const FloatFormat f = format_constants(p);
    const double a = std::abs(x);
    const double rounded = std::abs(round_value(p, x));
    std::ostringstream msg;
    msg << what << " = " << format_sig5(x) << " in " << to_string(p) << ": ";
    if (std::isinf(rounded)) {
      msg << "overflows (max finite " << format_sig5(f.max_finite) << ")";
      report.issues.push_back({AuditIssue::Severity::Error, what, x, p, msg.str()});
    } else if (rounded == 0.0) {
      msg << "underflows to zero (min subnormal " << format_sig5(f.min_positive_subnormal) << ")";
      report.issues.push_back({AuditIssue::Severity::Error, what, x, p, msg.str()});
    } else if (a < f.min_positive_normal) {
      msg << "subnormal (min normal " << format_sig5(f.min_positive_normal) << "), precision is reduced";
      report.issues.push_back({AuditIssue::Severity::Warning, what, x, p, msg.str()});
    }
  };
  // Report each distinct offending value once per quantity.
  auto check_plane = [&](const std::string& what, const std::vector<double>& plane, Precision p) {
    double lo = 0.0;
    double hi = 0.0;
    for (double x : plane) {
      const double a = std::abs(x);
      if (a == 0.0) continue;
      if (lo == 0.0 || a < lo) lo = a;
      hi = std::max(hi, a);
    }
    check(what, hi, p);
    if (lo != hi) check(what, lo, p);
  };
  const Precision sp = cfg.stencil_precision;
  const Precision up = cfg.update_precision;
  check_plane("rho", medium.rho_x(), sp);
  if (medium.kind() == MediumKind::Acoustic) {
    check_plane("beta", medium.beta(), sp);
    std::vector<double> bulk;
    for (double b : medium.beta()) bulk.push_back(1.0 / b);
    check_plane("bulk modulus 1/beta", bulk, sp);
  } else {
    check_plane("lambda", medium.lambda(), sp);
    check_plane("mu", medium.mu(), sp);
    std::vector<double> modulus;
    for (std::size_t k = 0; k < medium.mu().size(); ++k) modulus.push_back(medium.lambda()[k] + 2.0 * medium.mu()[k]);
    check_plane("lambda + 2 mu", modulus, sp);
  }
  check("dt", cfg.grid.dt, up);
  check("stencil tap 9/(8 dx)", 9.0 / (8.0 * cfg.grid.dx), sp);
  check("stencil tap 1/(24 dx)", 1.0 / (24.0 * cfg.grid.dx), sp);
  if (cfg.source.enabled) check("source peak", cfg.source.wavelet.amplitude, sp);
  return report;
}

}  // namespace halfwave
