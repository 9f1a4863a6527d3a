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

#include "halfwave/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace halfwave {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

std::vector<double> strided(const std::vector<double>& v, int stride) {
  if (stride == 1) return v;
  std::vector<double> out;
  for (std::size_t k = stride - 1; k < v.size(); k += stride) out.push_back(v[k]);
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string traces_csv(const RunOutput& out) {
  std::string text = "step,time";
  for (const auto& t : out.traces) text += "," + t.column_name();
  text += '\n';
  for (std::size_t k = 0; k < out.trace_times.size(); ++k) {
    text += std::to_string(k + 1) + ',' + format_number(out.trace_times[k]);
    for (const auto& t : out.traces) text += ',' + format_number(t.samples[k]);
    text += '\n';
  }
  return text;
}

std::string energy_csv(const EnergySeries& series) {
  std::string text = "time,energy\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    text += format_number(series.times[k]) + ',' + format_number(series.values[k]) + '\n';
  }
  return text;
}

RunComparison compare_runs(const RunOutput& run, const RunOutput& reference, int stride) {
  if (run.traces.size() != reference.traces.size()) throw std::invalid_argument("runs record different traces");
  RunComparison cmp;
  for (std::size_t c = 0; c < run.traces.size(); ++c) {
    const auto& a = run.traces[c];
    const auto& b = reference.traces[c];
    if (a.column_name() != b.column_name()) throw std::invalid_argument("runs record different traces");
    const auto samples = strided(a.samples, stride);
    const std::size_t n = std::min(samples.size(), b.samples.size());
    cmp.traces.emplace_back(a.column_name(),
                            compare_traces(std::span(samples).first(n), std::span(b.samples).first(n)));
  }
  if (stride == 1 && run.energy.size() == reference.energy.size() && !run.energy.empty()) {
    const double ref_final = reference.energy.values.back();
    cmp.final_energy_rel = std::abs(run.energy.values.back() - ref_final) / std::abs(ref_final);
    cmp.energy_history_rel = energy_history_difference(run.energy, reference.energy);
  }
  return cmp;
}

nlohmann::json summary_json(const ScenarioResult& r) {
  using nlohmann::json;
  const SimConfig& c = r.config;
  json j;
  j["name"] = c.name;
  j["equation"] = to_string(c.equation);
  j["grid"] = {{"nx", c.grid.nx}, {"ny", c.grid.ny}, {"dx", c.grid.dx}, {"dt", c.grid.dt}, {"nt", c.grid.nt},
               {"cfl", c.grid.cfl(r.spec.medium.max_velocity())}};
  j["precision"] = {{"stencil", to_string(c.stencil_precision)},
                    {"update", to_string(c.update_precision)},
                    {"mode", c.mode.label()}};
  j["steps_completed"] = r.output.steps_completed;
  j["wall_seconds"] = r.output.wall_seconds;
  j["state_bytes"] = r.output.state_bytes;
  j["failure"] = r.output.failure ? json(r.output.failure->message()) : json(nullptr);
  json energy;
  if (!r.output.energy.empty()) {
    energy["initial"] = number_or_null(r.output.energy.values.front());
    energy["final"] = number_or_null(r.output.energy.values.back());
  }
  if (r.drift) {
    energy["source_off_time"] = source_off_time(r.spec);
    energy["rel_deviation"] = number_or_null(r.drift->rel_deviation);
    energy["trend_slope"] = number_or_null(r.drift->trend_slope);
    energy["mean"] = number_or_null(r.drift->mean);
  }
  j["energy"] = energy;
  if (r.comparison) {
    json cmp;
    for (const auto& [column, t] : r.comparison->traces) {
      cmp["traces"][column] = {{"l2_rel", number_or_null(t.l2_rel)},
                               {"linf_rel", number_or_null(t.linf_rel)},
                               {"lag0_correlation", number_or_null(t.lag0_correlation)}};
    }
    if (r.comparison->final_energy_rel) cmp["final_energy_rel"] = number_or_null(*r.comparison->final_energy_rel);
    if (r.comparison->energy_history_rel) {
      cmp["energy_history_rel"] = number_or_null(*r.comparison->energy_history_rel);
    }
    j["comparison"] = cmp;
  }
  return j;
}

ScenarioResult run_scenario(const SimConfig& cfg, const std::filesystem::path& dir, const RunOutput* reference,
                            int stride) {
  ScenarioResult r{cfg, cfg.to_run_spec(), {}, std::nullopt, std::nullopt};
  r.output = run(r.spec);
  try {
    r.drift = energy_drift(r.output.energy, source_off_time(r.spec));
  } catch (const std::invalid_argument&) {
    // Too short to leave a post-source window.
  }
  if (reference != nullptr) r.comparison = compare_runs(r.output, *reference, stride);

  std::filesystem::create_directories(dir);
  if (!r.output.traces.empty()) write_file(dir / "traces.csv", traces_csv(r.output));
  write_file(dir / "energy.csv", energy_csv(r.output.energy));
  write_file(dir / "summary.json", summary_json(r).dump(2) + '\n');

  const auto plots = dir / "plotdata";
  std::filesystem::create_directories(plots);
  for (const auto& t : r.output.traces) {
    write_plot_data(plots / (t.column_name() + ".dat"), t.column_name() + " " + cfg.name, r.output.trace_times,
                    t.samples);
  }
  write_plot_data(plots / "energy.dat", "energy " + cfg.name, r.output.energy.times, r.output.energy.values);
  return r;
}

void write_plot_data(const std::filesystem::path& path, std::string_view title, const std::vector<double>& x,
                     const std::vector<double>& y) {
  std::string text = "# " + std::string(title) + '\n';
  for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
    text += format_number(x[k]) + ' ' + format_number(y[k]) + '\n';
  }
  write_file(path, text);
}

std::vector<std::string> repro_names() { return {"acoustic", "elastic"}; }

ReproSuite repro_suite(std::string_view name, bool desk) {
  auto variant = [](SimConfig cfg, std::string label, Precision s, Precision u, UpdateMode mode) {
    cfg.name += "-" + label;
    cfg.stencil_precision = s;
    cfg.update_precision = u;
    cfg.mode = mode;
    return ReproVariant{std::move(label), std::move(cfg)};
  };
  const auto naive = UpdateMode::baseline();
  const auto op3 = UpdateMode::with(SumVariant::OP3);
  const auto op6 = UpdateMode::with(SumVariant::OP6);
  constexpr auto F64 = Precision::FP64;
  constexpr auto F32 = Precision::FP32;
  constexpr auto F16 = Precision::FP16;

  ReproSuite suite{std::string(name), {}};
  if (name == "acoustic") {
    const SimConfig base = preset("paper-acoustic", desk);
    suite.variants.push_back(variant(base, "fp64", F64, F64, naive));
    suite.variants.push_back(variant(base, "fp32", F32, F32, naive));

    // Three times the points per wavelength. A point source adds to the
    // cell-averaged pressure, so its amplitude grows with the cell count.
    constexpr int refine = 3;
    SimConfig fine = base;
    fine.grid.nx *= refine;
    fine.grid.ny *= refine;
    fine.grid.dx /= refine;
    fine.grid.dt /= refine;
    fine.grid.nt *= refine;
    fine.energy_cadence *= refine;
    fine.source.ix = fine.source.ix * refine + refine / 2;
    fine.source.iy = fine.source.iy * refine + refine / 2;
    fine.source.wavelet.amplitude *= refine * refine;
    for (Receiver& rc : fine.receivers) rc = {rc.ix * refine + refine / 2, rc.iy * refine + refine / 2};
    ReproVariant v = variant(fine, "fp64-ppw30", F64, F64, naive);
    v.stride = refine;
    suite.variants.push_back(std::move(v));

    suite.variants.push_back(variant(base, "fp16-naive", F16, F16, naive));
    suite.variants.push_back(variant(base, "fp16-op3", F16, F16, op3));
    suite.variants.push_back(variant(base, "fp16-op6", F16, F16, op6));
    suite.variants.push_back(variant(base, "s64-u16-naive", F64, F16, naive));
    suite.variants.push_back(variant(base, "s64-u16-op3", F64, F16, op3));
  } else if (name == "elastic") {
    const SimConfig base = preset("paper-elastic", desk);
    suite.variants.push_back(variant(base, "fp64", F64, F64, naive));
    suite.variants.push_back(variant(base, "fp16-naive", F16, F16, naive));
    suite.variants.push_back(variant(base, "fp16-op6", F16, F16, op6));
    suite.variants.push_back(variant(base, "fp16-op3", F16, F16, op3));
  } else {
    throw std::invalid_argument("unknown repro suite '" + std::string(name) + "'");
  }
  return suite;
}

std::vector<ScenarioResult> run_repro(const ReproSuite& suite, const std::filesystem::path& root) {
  const auto dir = root / suite.name;
  const auto plots = dir / "plotdata";
  std::filesystem::create_directories(plots);

  std::vector<ScenarioResult> results;
  nlohmann::json index = nlohmann::json::object();
  for (const ReproVariant& v : suite.variants) {
    const RunOutput* reference = results.empty() ? nullptr : &results.front().output;
    results.push_back(run_scenario(v.config, dir / v.label, reference, v.stride));
    const ScenarioResult& r = results.back();
    index[v.label] = summary_json(r);

    std::vector<double> times = strided(r.output.trace_times, v.stride);
    for (const TraceSeries& t : r.output.traces) {
      const auto samples = strided(t.samples, v.stride);
      write_plot_data(plots / (t.column_name() + "_" + v.label + ".dat"), t.column_name() + " " + v.label, times,
                      samples);

      // Zoom-in: one period either side of the reference peak.
      const auto& ref = results.front().output;
      const TraceSeries* rt = nullptr;
      for (const auto& cand : ref.traces)
        if (cand.column_name() == t.column_name()) rt = &cand;
      if (rt == nullptr || rt->samples.empty()) continue;
      const auto peak = std::max_element(rt->samples.begin(), rt->samples.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
      const double t_peak = ref.trace_times[peak - rt->samples.begin()];
      const double half = 1.0 / v.config.source.wavelet.f_center;
      std::vector<double> zt;
      std::vector<double> zv;
      for (std::size_t k = 0; k < std::min(times.size(), samples.size()); ++k) {
        if (std::abs(times[k] - t_peak) <= half) {
          zt.push_back(times[k]);
          zv.push_back(samples[k]);
        }
      }
      write_plot_data(plots / (t.column_name() + "_zoom_" + v.label + ".dat"),
                      t.column_name() + " zoom " + v.label, zt, zv);
    }
    write_plot_data(plots / ("energy_" + v.label + ".dat"), "energy " + v.label, r.output.energy.times,
                    r.output.energy.values);
  }
  write_file(dir / "summary.json", index.dump(2) + '\n');
  return results;
}

}  // namespace halfwave
