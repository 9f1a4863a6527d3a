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

#include <omp.h>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "halfwave/config.hpp"
#include "halfwave/scenario.hpp"

namespace hw = halfwave;

namespace {

// Exit codes: 0 clean, 1 range failure (audit error or non-finite field),
// 2 bad input.
constexpr int kRangeFailure = 1;
constexpr int kBadInput = 2;

struct ConfigArgs {
  std::string config;
  std::string preset;
  bool desk = false;
  std::vector<std::string> sets;
  std::string out;

  void attach(CLI::App* cmd) {
    auto* c = cmd->add_option("--config", config, "INI config file")->check(CLI::ExistingFile);
    auto* p = cmd->add_option("--preset", preset, "built-in configuration")
                  ->check(CLI::IsMember(hw::preset_names()));
    c->excludes(p);
    cmd->add_flag("--desk", desk, "shrink a preset to desk scale");
    cmd->add_option("--set", sets, "override, section.key=value");
    cmd->add_option("--out", out, "output directory");
  }

  hw::SimConfig load() const {
    if (config.empty() && preset.empty()) throw std::invalid_argument("one of --config or --preset is required");
    hw::SimConfig cfg = config.empty() ? hw::preset(preset, desk) : hw::parse_config_file(config);
    for (const auto& s : sets) hw::apply_setting(cfg, s);
    hw::apply_environment(cfg);
    if (!out.empty()) cfg.output_dir = out;
    return cfg;
  }
};

int cmd_run(const ConfigArgs& args, bool ignore_audit) {
  const hw::SimConfig cfg = args.load();
  const hw::AuditReport audit = hw::range_audit(cfg);
  if (!audit.issues.empty()) std::cerr << audit.text();
  if (!audit.ok() && !ignore_audit) {
    std::cerr << "refusing to run; rescale the units or pass --ignore-audit\n";
    return kRangeFailure;
  }
  const auto result = hw::run_scenario(cfg, cfg.output_dir);
  std::printf("%s: %d/%d steps in %.2f s, output in %s\n", cfg.name.c_str(), result.output.steps_completed,
              cfg.grid.nt, result.output.wall_seconds, cfg.output_dir.string().c_str());
  if (result.drift) {
    std::printf("energy drift after source: rel_deviation %s, slope %s\n",
                hw::format_sig5(result.drift->rel_deviation).c_str(),
                hw::format_sig5(result.drift->trend_slope).c_str());
  }
  if (result.output.failure) {
    std::cerr << result.output.failure->message() << '\n';
    return kRangeFailure;
  }
  return 0;
}

int cmd_repro(const std::string& name, bool desk, const std::string& out) {
  std::vector<std::string> names = name == "all" ? hw::repro_names() : std::vector<std::string>{name};
  hw::SimConfig env;
  hw::apply_environment(env);
  const std::filesystem::path root = out.empty() ? env.output_dir : std::filesystem::path(out);
  int status = 0;
  for (const auto& n : names) {
    const hw::ReproSuite suite = hw::repro_suite(n, desk);
    const auto results = hw::run_repro(suite, root);
    std::printf("%s\n", n.c_str());
    for (std::size_t k = 0; k < results.size(); ++k) {
      const auto& r = results[k];
      std::printf("  %-15s %6.1f s", suite.variants[k].label.c_str(), r.output.wall_seconds);
      if (r.drift) std::printf("  drift %-10s", hw::format_sig5(r.drift->rel_deviation).c_str());
      if (r.comparison && !r.comparison->traces.empty()) {
        std::printf("  %s l2 vs ref %-10s", r.comparison->traces.front().first.c_str(),
                    hw::format_sig5(r.comparison->traces.front().second.l2_rel).c_str());
      }
      if (r.comparison && r.comparison->final_energy_rel) {
        std::printf("  final energy vs ref %s", hw::format_sig5(*r.comparison->final_energy_rel).c_str());
      }
      if (r.output.failure) {
        std::printf("  %s", r.output.failure->message().c_str());
        status = kRangeFailure;
      }
      std::printf("\n");
    }
    std::printf("  written to %s\n", (root / n).string().c_str());
  }
  return status;
}

int cmd_audit(const ConfigArgs& args) {
  const hw::AuditReport audit = hw::range_audit(args.load());
  std::cout << audit.text();
  return audit.ok() ? 0 : kRangeFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staggered-grid wave simulation in binary64, binary32 and binary16 with compensated updates"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (default: runtime choice)")->check(CLI::PositiveNumber);

  ConfigArgs run_args;
  bool ignore_audit = false;
  auto* run = app.add_subcommand("run", "run one scenario and write traces, energy and a summary");
  run_args.attach(run);
  run->add_flag("--ignore-audit", ignore_audit, "run even if parameters overflow or underflow");

  std::string repro_name;
  bool repro_desk = false;
  std::string repro_out;
  auto* repro = app.add_subcommand("repro", "run a canned reproduction suite of precision variants");
  std::vector<std::string> suites = hw::repro_names();
  suites.push_back("all");
  repro->add_option("name", repro_name, "suite")->required()->check(CLI::IsMember(suites));
  repro->add_flag("--desk", repro_desk, "desk-scale grids");
  repro->add_option("--out", repro_out, "output directory");

  ConfigArgs audit_args;
  auto* audit = app.add_subcommand("audit", "check parameters against the range of their formats");
  audit_args.attach(audit);

  ConfigArgs show_args;
  auto* show = app.add_subcommand("config", "print the resolved config in file form");
  show_args.attach(show);

  auto* formats = app.add_subcommand("formats", "print the constants of the floating-point formats");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*run) return cmd_run(run_args, ignore_audit);
    if (*repro) return cmd_repro(repro_name, repro_desk, repro_out);
    if (*audit) return cmd_audit(audit_args);
    if (*show) {
      std::cout << hw::to_config_text(show_args.load());
      return 0;
    }
    if (*formats) {
      std::cout << hw::formats_table();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
