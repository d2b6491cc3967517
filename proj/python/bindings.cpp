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

// Python bindings: plain types in, plain types out.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaoa/errors.hpp"
#include "qaoa/exactcover.hpp"
#include "qaoa/harness.hpp"
#include "qaoa/ising.hpp"
#include "qaoa/noise.hpp"
#include "qaoa/optimizers.hpp"
#include "qaoa/simulator.hpp"
#include "qaoa/rng.hpp"

namespace py = pybind11;
using namespace qaoa;

namespace {

std::vector<std::string> bit_strings(const std::set<Selection> &states) {
  std::vector<std::string> out;
  for (const auto &s : states) out.push_back(s.to_string());
  return out;
}

Backend make_backend(const std::string &noise) {
  if (noise == "ideal") return Backend::ideal();
  if (noise == "device") return Backend::noisy(NoiseModel::device_defaults());
  return Backend::noisy(parse_noise(noise));
}

py::dict estimate_dict(const CostEstimate &est) {
  py::dict d;
  d["F"] = est.F;
  d["z_single"] = est.z_single;
  d["state_probs"] = est.state_probs;
  d["shots"] = est.shots;
  return d;
}

py::dict run_dict(const OptimizationRun &run) {
  py::dict d;
  d["calls"] = run.trajectory.size();
  d["best_x"] = run.best_x;
  d["best_F"] = run.best_F;
  d["P_solution"] = run.best_p_solution;
  d["converged"] = run.converged;
  d["calls_to_convergence"] = run.calls_to_convergence;
  std::vector<double> trace;
  for (const auto &e : run.trajectory) trace.push_back(e.F);
  d["trace_F"] = trace;
  return d;
}

}  // namespace

PYBIND11_MODULE(qaoa_ec, m) {
  m.doc() = "Exact-cover QAOA simulation, noise modeling and optimizer benchmarks";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<ExactCoverInstance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("name"), py::arg("elements"), py::arg("subsets"))
      .def_readonly("name", &ExactCoverInstance::name)
      .def_readonly("elements", &ExactCoverInstance::elements)
      .def_readonly("subsets", &ExactCoverInstance::subsets)
      .def("to_json", &serialize_instance)
      .def("__eq__", [](const ExactCoverInstance &a, const ExactCoverInstance &b) { return a == b; });

  py::class_<IsingModel>(m, "IsingModel")
      .def_readonly("n", &IsingModel::n)
      .def_property_readonly("h",
                             [](const IsingModel &model) {
                               std::vector<double> h;
                               for (const auto &v : model.h) h.push_back(v.to_double());
                               return h;
                             })
      .def_property_readonly("J",
                             [](const IsingModel &model) {
                               std::map<std::pair<std::size_t, std::size_t>, double> J;
                               for (const auto &[key, v] : model.J) J[key] = v.to_double();
                               return J;
                             })
      .def_property_readonly("offset", [](const IsingModel &model) { return model.offset.to_double(); })
      .def("energy", [](const IsingModel &model, const std::string &bits) { return energy(model, Selection::from_string(bits)); })
      .def("spectrum", &energy_spectrum)
      .def("to_json", &serialize_model);

  m.def("builtin_problem", py::overload_cast<std::string_view>(&builtin_problem), py::arg("id"));
  m.def("parse_instance", &parse_instance, py::arg("text"));
  m.def("brute_force_covers", [](const ExactCoverInstance &inst) { return bit_strings(brute_force_covers(inst)); });
  m.def(
      "map_to_ising",
      [](const ExactCoverInstance &inst, bool normalize) {
        IsingModel model = map_to_ising(inst);
        return normalize ? normalize_integer_spectrum(model) : model;
      },
      py::arg("instance"), py::arg("normalize") = true);
  m.def("parse_model", &parse_model, py::arg("text"));
  m.def("ground_states", [](const IsingModel &model) {
    const GroundStates g = ground_states(model);
    return py::make_tuple(g.energy.to_double(), bit_strings(g.states));
  });

  m.def(
      "evaluate_angles",
      [](const IsingModel &model, const std::vector<double> &gammas, const std::vector<double> &betas,
         std::optional<std::size_t> shots, std::uint64_t seed, const std::string &noise) {
        return estimate_dict(evaluate_angles(model, QaoaAngles(gammas, betas), make_backend(noise), shots, seed));
      },
      py::arg("model"), py::arg("gammas"), py::arg("betas"), py::arg("shots") = py::none(), py::arg("seed") = 0,
      py::arg("noise") = "ideal");

  m.def(
      "gate_tally",
      [](const IsingModel &model, std::size_t p) {
        const std::vector<double> angles(p, 0.5);
        const GateTally tally = tally_gates(build_qaoa_circuit(model, QaoaAngles(angles, angles)));
        std::map<std::string, std::size_t> out;
        for (auto kind : {GateKind::H, GateKind::X, GateKind::RX, GateKind::RZ, GateKind::CZ}) {
          out[std::string(gate_name(kind))] = tally.count(kind);
        }
        return out;
      },
      py::arg("model"), py::arg("p"));

  m.def(
      "optimize",
      [](const IsingModel &model, std::size_t p, const std::string &optimizer, std::optional<std::size_t> shots,
         std::uint64_t seed, const std::string &noise, std::optional<std::size_t> max_calls) {
        OptimizerConfig config = OptimizerConfig::defaults(parse_optimizer(optimizer));
        if (max_calls) config.max_calls = *max_calls;
        config.seed = derive_seed(seed, 1);
        Objective objective =
            make_qaoa_objective(model, p, make_backend(noise), shots, derive_seed(seed, 2), ground_states(model).states);
        const auto start = benchmark_starts(seed, 1, p).front();
        return run_dict(run_optimizer(objective, start, config));
      },
      py::arg("model"), py::arg("p"), py::arg("optimizer") = "nm", py::arg("shots") = py::none(),
      py::arg("seed") = 0, py::arg("noise") = "ideal", py::arg("max_calls") = py::none());

  m.def(
      "grid_search",
      [](const IsingModel &model, std::size_t resolution, std::optional<std::size_t> shots, std::uint64_t seed,
         const std::string &noise) {
        const Landscape land = grid_search(model, 1, resolution, make_backend(noise), shots, seed);
        py::dict d;
        d["gamma"] = land.gamma_axis;
        d["beta"] = land.beta_axis;
        d["F"] = land.F;
        d["argmin"] = land.argmin();
        d["csv"] = landscape_csv(land);
        return d;
      },
      py::arg("model"), py::arg("resolution") = 61, py::arg("shots") = py::none(), py::arg("seed") = 0,
      py::arg("noise") = "ideal");

  m.def(
      "run_benchmark",
      [](const IsingModel &model, std::size_t p, std::size_t runs, std::optional<std::size_t> shots,
         const std::vector<std::string> &optimizers, std::uint64_t seed, std::optional<std::size_t> max_calls) {
        BenchmarkConfig config;
        config.p = p;
        config.runs = runs;
        config.shots = shots;
        config.base_seed = seed;
        config.max_calls = max_calls;
        config.optimizers.clear();
        for (const auto &name : optimizers) config.optimizers.push_back(parse_optimizer(name));
        return report_json(run_benchmark(model, config));
      },
      py::arg("model"), py::arg("p") = 2, py::arg("runs") = 200, py::arg("shots") = 5000,
      py::arg("optimizers") = std::vector<std::string>{"bgp", "nm", "cmaes"}, py::arg("seed") = 0,
      py::arg("max_calls") = py::none());

  m.def(
      "predict",
      [](const IsingModel &model, std::size_t pmax, const std::string &noise) {
        std::vector<std::size_t> ps;
        for (std::size_t p = 1; p <= pmax; ++p) ps.push_back(p);
        const NoiseModel nm = noise == "device" ? NoiseModel::device_defaults() : parse_noise(noise);
        std::vector<double> out;
        for (const auto &row : predict_and_compare(model, ps, nm)) out.push_back(row.predicted_fidelity);
        return out;
      },
      py::arg("model"), py::arg("pmax") = 3, py::arg("noise") = "device");

  m.def(
      "apply_readout_error",
      [](const std::vector<double> &probs, const std::vector<double> &fro) {
        return apply_readout_error(probs, ConfusionMatrix::symmetric(fro));
      },
      py::arg("probs"), py::arg("readout_fidelities"));
  m.def(
      "mitigate_readout",
      [](const std::vector<double> &probs, const std::vector<double> &fro) {
        return mitigate_readout(probs, ConfusionMatrix::symmetric(fro));
      },
      py::arg("probs"), py::arg("readout_fidelities"));
}
