// Copyright 2026 The qaoa-exactcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qaoa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "qaoa/errors.hpp"
#include "qaoa/rng.hpp"
#include "qaoa/simplex.hpp"

namespace qaoa {

namespace {

constexpr std::uint64_t kStartStream = 0x5354415254ULL;

// Stream ids by optimizer kind, so adding or reordering optimizers does not
// change any other optimizer's results.
std::uint64_t optimizer_stream(std::uint64_t base, OptimizerKind kind) {
  return derive_seed(base, 0x4f50540000ULL + static_cast<std::uint64_t>(kind));
}

nlohmann::ordered_json stats_json(const OptimizerStats &s) {
  nlohmann::ordered_json j;
  j["runs"] = s.runs;
  j["converged_runs"] = s.converged_runs;
  j["convergence_fraction"] = s.convergence_fraction;
  j["calls_mean"] = s.calls_mean;
  j["calls_std"] = s.calls_std;
  j["best_P_solution"] = s.best_p_solution;
  j["histogram_bin_width"] = kHistogramBinWidth;
  j["histogram"] = s.histogram;
  j["mean_F"] = s.mean_F;
  j["mean_P_solution"] = s.mean_p_solution;
  j["mean_support"] = s.mean_support;
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::filesystem::path &path, const std::string &contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open '" + path.string() + "' for writing");
  os << contents;
}

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Objective make_qaoa_objective(const IsingModel &model, std::size_t p, const Backend &backend, Shots shots,
                              std::uint64_t base_seed, std::set<Selection> solutions) {
  if (p == 0) throw ValidationError("QAOA level p must be >= 1");
  return Objective(2 * p, [model, backend, shots, base_seed, solutions = std::move(solutions)](
                              std::span<const double> x, std::size_t call_index) {
    const auto est = evaluate_angles(model, QaoaAngles::from_flat(x), backend, shots, derive_seed(base_seed, call_index));
    return ObjectiveValue{est.F, probability_of(est, solutions)};
  });
}

std::pair<std::size_t, std::size_t> Landscape::argmin() const {
  const auto it = std::min_element(F.begin(), F.end());
  const auto k = static_cast<std::size_t>(it - F.begin());
  return {k / resolution, k % resolution};
}

Landscape grid_search(const IsingModel &model, std::size_t p, std::size_t resolution, const Backend &backend,
                      Shots shots, std::uint64_t seed) {
  if (p != 1) throw ValidationError("grid search is limited to p = 1");
  if (resolution == 0) throw ValidationError("resolution must be >= 1");
  Landscape out;
  out.resolution = resolution;
  out.num_qubits = model.n;
  for (std::size_t k = 0; k < resolution; ++k) {
    const double a = static_cast<double>(k) * std::numbers::pi / static_cast<double>(resolution);
    out.gamma_axis.push_back(a);
    out.beta_axis.push_back(a);
  }
  const std::size_t cells = resolution * resolution;
  out.F.resize(cells);
  out.probs.assign(std::size_t{1} << model.n, std::vector<double>(cells));
  for (std::size_t g = 0; g < resolution; ++g) {
    for (std::size_t b = 0; b < resolution; ++b) {
      const std::size_t cell = g * resolution + b;
      const auto est = evaluate_angles(model, QaoaAngles({out.gamma_axis[g]}, {out.beta_axis[b]}), backend, shots,
                                       derive_seed(seed, cell));
      out.F[cell] = est.F;
      for (std::size_t s = 0; s < est.state_probs.size(); ++s) out.probs[s][cell] = est.state_probs[s];
    }
  }
  return out;
}

std::string landscape_csv(const Landscape &landscape) {
  std::ostringstream os;
  os << "gamma,beta,F";
  for (std::size_t s = 0; s < landscape.probs.size(); ++s) os << ",P_" << bit_string(s, landscape.num_qubits);
  os << '\n';
  for (std::size_t g = 0; g < landscape.resolution; ++g) {
    for (std::size_t b = 0; b < landscape.resolution; ++b) {
      const std::size_t cell = g * landscape.resolution + b;
      os << format_double(landscape.gamma_axis[g]) << ',' << format_double(landscape.beta_axis[b]) << ','
         << format_double(landscape.F[cell]);
      for (const auto &grid : landscape.probs) os << ',' << format_double(grid[cell]);
      os << '\n';
    }
  }
  return os.str();
}

Linecut linecut(const Landscape &landscape, Axis axis, std::size_t index) {
  if (index >= landscape.resolution) throw ValidationError("linecut index out of range");
  Linecut cut{axis, index, 0.0, {}, {}, {}};
  cut.fixed_angle = axis == Axis::Gamma ? landscape.gamma_axis[index] : landscape.beta_axis[index];
  cut.probs.assign(landscape.probs.size(), {});
  for (std::size_t k = 0; k < landscape.resolution; ++k) {
    const std::size_t cell = axis == Axis::Gamma ? index * landscape.resolution + k : k * landscape.resolution + index;
    cut.angles.push_back(axis == Axis::Gamma ? landscape.beta_axis[k] : landscape.gamma_axis[k]);
    cut.F.push_back(landscape.F[cell]);
    for (std::size_t s = 0; s < landscape.probs.size(); ++s) cut.probs[s].push_back(landscape.probs[s][cell]);
  }
  return cut;
}

std::string linecut_csv(const Linecut &cut, std::size_t num_qubits) {
  std::ostringstream os;
  os << (cut.axis == Axis::Gamma ? "beta" : "gamma") << ",F";
  for (std::size_t s = 0; s < cut.probs.size(); ++s) os << ",P_" << bit_string(s, num_qubits);
  os << '\n';
  for (std::size_t k = 0; k < cut.angles.size(); ++k) {
    os << format_double(cut.angles[k]) << ',' << format_double(cut.F[k]);
    for (const auto &channel : cut.probs) os << ',' << format_double(channel[k]);
    os << '\n';
  }
  return os.str();
}

RefinedMinimum refine_minimum(const IsingModel &model, std::span<const double> start, const Backend &backend,
                              double xtol, std::size_t max_calls) {
  auto f = [&](std::span<const double> x) {
    return evaluate_angles(model, QaoaAngles::from_flat(x), backend, kExactShots, 0).F;
  };
  SimplexOptions opt;
  opt.initial_step = 0.05;
  opt.xtol = xtol;
  opt.max_evals = max_calls;
  auto res = minimize_simplex(f, start, opt);
  // A restart from the optimum guards against a collapsed simplex.
  opt.initial_step = 1e-3;
  auto again = minimize_simplex(f, res.x, opt);
  if (again.f < res.f) res = again;
  const QaoaAngles angles = QaoaAngles::from_flat(res.x);
  return {angles.flat(), evaluate_angles(model, angles, backend, kExactShots, 0)};
}

OptimizerStats compute_stats(const std::vector<OptimizationRun> &runs) {
  OptimizerStats s;
  s.runs = runs.size();
  s.histogram.assign(static_cast<std::size_t>(std::llround(1.0 / kHistogramBinWidth)), 0);
  std::vector<double> calls;
  for (const auto &run : runs) {
    const double p = run.best_p_solution;
    if (std::isfinite(p)) {
      const auto bin = std::min(s.histogram.size() - 1, static_cast<std::size_t>(std::max(0.0, p) / kHistogramBinWidth));
      ++s.histogram[bin];
      s.best_p_solution = std::max(s.best_p_solution, p);
    }
    if (!run.converged) continue;
    ++s.converged_runs;
    calls.push_back(static_cast<double>(*run.calls_to_convergence));
    if (s.mean_F.size() < run.trajectory.size()) {
      s.mean_F.resize(run.trajectory.size(), 0.0);
      s.mean_p_solution.resize(run.trajectory.size(), 0.0);
      s.mean_support.resize(run.trajectory.size(), 0);
    }
    for (std::size_t k = 0; k < run.trajectory.size(); ++k) {
      s.mean_F[k] += run.trajectory[k].F;
      s.mean_p_solution[k] += run.trajectory[k].p_solution;
      ++s.mean_support[k];
    }
  }
  for (std::size_t k = 0; k < s.mean_F.size(); ++k) {
    s.mean_F[k] /= static_cast<double>(s.mean_support[k]);
    s.mean_p_solution[k] /= static_cast<double>(s.mean_support[k]);
  }
  s.convergence_fraction = s.runs == 0 ? 0.0 : static_cast<double>(s.converged_runs) / static_cast<double>(s.runs);
  if (!calls.empty()) {
    double sum = 0.0;
    for (double c : calls) sum += c;
    s.calls_mean = sum / static_cast<double>(calls.size());
    if (calls.size() > 1) {
      double ss = 0.0;
      for (double c : calls) ss += (c - s.calls_mean) * (c - s.calls_mean);
      s.calls_std = std::sqrt(ss / static_cast<double>(calls.size() - 1));
    }
  }
  return s;
}

std::vector<std::vector<double>> benchmark_starts(std::uint64_t base_seed, std::size_t runs, std::size_t p) {
  std::vector<std::vector<double>> starts;
  const std::uint64_t stream = derive_seed(base_seed, kStartStream);
  for (std::size_t r = 0; r < runs; ++r) {
    Rng rng(derive_seed(stream, r));
    std::vector<double> x(2 * p);
    for (auto &v : x) v = rng.uniform(0.0, std::numbers::pi);
    starts.push_back(std::move(x));
  }
  return starts;
}

BenchmarkReport run_benchmark(const IsingModel &model, const BenchmarkConfig &config) {
  if (!(config.threshold < 0.0)) throw ValidationError("convergence threshold must be negative");
  if (config.runs == 0) throw ValidationError("runs must be >= 1");
  BenchmarkReport report;
  report.config = config;
  report.solutions = ground_states(model).states;
  report.starts = benchmark_starts(config.base_seed, config.runs, config.p);

  for (OptimizerKind kind : config.optimizers) {
    OptimizerReport entry;
    entry.config = OptimizerConfig::defaults(kind);
    if (config.max_calls) entry.config.max_calls = *config.max_calls;
    entry.config.threshold = config.threshold;
    entry.runs.resize(config.runs);
    const std::uint64_t stream = optimizer_stream(config.base_seed, kind);

    auto one_run = [&](std::size_t r) {
      OptimizerConfig oc = entry.config;
      oc.seed = derive_seed(stream, 2 * r + 1);
      Objective objective =
          make_qaoa_objective(model, config.p, config.backend, config.shots, derive_seed(stream, 2 * r), report.solutions);
      entry.runs[r] = run_optimizer(objective, report.starts[r], oc);
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, config.runs));
    if (jobs == 1) {
      for (std::size_t r = 0; r < config.runs; ++r) one_run(r);
    } else {
      // Each run writes only its own slot; results are independent of
      // scheduling.
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> workers;
      std::exception_ptr failure;
      std::mutex failure_mutex;
      for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
          for (std::size_t r = next++; r < config.runs; r = next++) {
            try {
              one_run(r);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
      for (auto &t : workers) t.join();
      if (failure) std::rethrow_exception(failure);
    }
    entry.stats = compute_stats(entry.runs);
    report.optimizers.push_back(std::move(entry));
  }
  return report;
}

std::string trajectory_jsonl(const OptimizationRun &run) {
  std::string out;
  for (const auto &e : run.trajectory) {
    nlohmann::ordered_json j;
    j["call_index"] = e.call_index;
    j["angles"] = e.x.size() % 2 == 0 ? QaoaAngles::from_flat(e.x).flat() : e.x;
    j["F"] = e.F;
    j["P_solution"] = e.p_solution;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string report_json(const BenchmarkReport &report) {
  nlohmann::ordered_json doc;
  const auto &c = report.config;
  doc["rng"] = kRngAlgorithm;
  doc["base_seed"] = c.base_seed;
  doc["p"] = c.p;
  doc["runs"] = c.runs;
  if (c.shots) {
    doc["shots"] = *c.shots;
  } else {
    doc["shots"] = "exact";
  }
  doc["threshold"] = c.threshold;
  doc["backend"] = nlohmann::json::parse(c.backend.descriptor());
  doc["solutions"] = nlohmann::ordered_json::array();
  for (const auto &s : report.solutions) doc["solutions"].push_back(s.to_string());
  doc["optimizers"] = nlohmann::ordered_json::array();
  for (const auto &entry : report.optimizers) {
    nlohmann::ordered_json o;
    o["name"] = optimizer_name(entry.config.kind);
    o["max_calls"] = entry.config.max_calls;
    o["stats"] = stats_json(entry.stats);
    o["runs"] = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < entry.runs.size(); ++r) {
      const auto &run = entry.runs[r];
      nlohmann::ordered_json jr;
      jr["run"] = r;
      jr["start"] = report.starts[r];
      jr["calls"] = run.trajectory.size();
      jr["converged"] = run.converged;
      if (run.calls_to_convergence) {
        jr["calls_to_convergence"] = *run.calls_to_convergence;
      } else {
        jr["calls_to_convergence"] = nullptr;
      }
      jr["best_F"] = run.best_F;
      jr["final_P_solution"] = run.best_p_solution;
      jr["best_angles"] = run.best_x.size() % 2 == 0 && !run.best_x.empty() ? QaoaAngles::from_flat(run.best_x).flat()
                                                                            : run.best_x;
      jr["budget_exhausted"] = run.budget_exhausted;
      o["runs"].push_back(std::move(jr));
    }
    doc["optimizers"].push_back(std::move(o));
  }
  return doc.dump(2) + "\n";
}

void write_benchmark(const BenchmarkReport &report, const std::filesystem::path &dir) {
  write_text_file(dir / "report.json", report_json(report));
  for (const auto &entry : report.optimizers) {
    for (std::size_t r = 0; r < entry.runs.size(); ++r) {
      char name[64];
      std::snprintf(name, sizeof name, "%s_%03zu.jsonl", std::string(optimizer_name(entry.config.kind)).c_str(), r);
      write_text_file(dir / "runs" / name, trajectory_jsonl(entry.runs[r]));
    }
  }
}

std::vector<PredictionRow> predict_and_compare(const IsingModel &model, const std::vector<std::size_t> &p_values,
                                               const NoiseModel &noise) {
  std::vector<PredictionRow> rows;
  for (std::size_t p : p_values) {
    if (p == 0) throw ValidationError("p must be >= 1");
    // Generic angles: no rotation in the compiled circuit cancels.
    const QaoaAngles angles(std::vector<double>(p, std::numbers::pi / 5.0), std::vector<double>(p, std::numbers::pi / 7.0));
    const GateTally tally = tally_gates(build_qaoa_circuit(model, angles));
    rows.push_back({p, tally, predict_circuit_fidelity(tally, noise)});
  }
  return rows;
}

std::string prediction_csv(const std::vector<PredictionRow> &rows) {
  std::ostringstream os;
  os << "p,H,X,RX,RZ,CZ,predicted_fidelity\n";
  for (const auto &row : rows) {
    os << row.p << ',' << row.tally.count(GateKind::H) << ',' << row.tally.count(GateKind::X) << ','
       << row.tally.count(GateKind::RX) << ',' << row.tally.count(GateKind::RZ) << ',' << row.tally.count(GateKind::CZ)
       << ',' << format_double(row.predicted_fidelity) << '\n';
  }
  return os.str();
}

}  // namespace qaoa
