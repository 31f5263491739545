// Copyright 2026 The treeopt Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "treeopt/harness.hpp"
#include "treeopt/optimizers.hpp"
#include "treeopt/theory.hpp"

namespace py = pybind11;
using namespace treeopt;

namespace {

Objective from_callable(py::function f, Box domain, std::optional<double> optimum, std::string name) {
    return Objective{std::move(name), std::move(domain),
                     [f = std::move(f)](std::span<const double> x) {
                         py::gil_scoped_acquire gil;
                         return f(std::vector<double>(x.begin(), x.end())).cast<double>();
                     },
                     optimum, std::nullopt};
}

RunConfig make_config(std::int64_t budget, unsigned branching, std::uint64_t seed, bool trace) {
    RunConfig c;
    c.budget_n = budget;
    c.branching = branching;
    c.seed = seed;
    c.record_trace = trace;
    return c;
}

py::dict result_dict(const RunResult& r) {
    py::dict d;
    d["recommendation"] = r.recommendation;
    d["recommended_cell"] = py::make_tuple(r.recommended_cell.depth, r.recommended_cell.to_string());
    d["value_estimate"] = r.recommendation_value_estimate;
    d["openings"] = r.openings_used;
    d["evaluations"] = r.evaluations_used;
    d["budget_used"] = r.budget_used;
    d["deepest_depth"] = r.deepest_depth;
    if (r.trace) {
        py::list ops;
        for (const auto& e : r.trace->openings) {
            ops.append(py::make_tuple(e.cell.depth, e.cell.to_string(), e.evals_per_child));
        }
        d["trace"] = ops;
    }
    return d;
}

py::dict record_dict(const RegretRecord& r) {
    py::dict d;
    d["algo"] = r.algo;
    d["objective"] = r.objective;
    d["n"] = r.n;
    d["b"] = r.b;
    d["seed"] = r.seed;
    d["regret"] = r.regret;
    d["openings"] = r.openings;
    d["evaluations"] = r.evaluations;
    d["wall_ms"] = r.wall_ms;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hierarchical black-box optimizers with simple-regret guarantees";

    py::class_<Box>(m, "Box")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("lower"), py::arg("upper"))
        .def_static("unit", &Box::unit, py::arg("dim"))
        .def_property_readonly("lower", &Box::lower)
        .def_property_readonly("upper", &Box::upper)
        .def_property_readonly("dim", &Box::dim)
        .def("center", &Box::center)
        .def("contains", [](const Box& b, const std::vector<double>& x) { return b.contains(x); });

    py::class_<Objective>(m, "Objective")
        .def(py::init(&from_callable), py::arg("f"), py::arg("domain"), py::arg("optimum") = std::nullopt,
             py::arg("name") = "custom")
        .def_readonly("name", &Objective::name)
        .def_readonly("domain", &Objective::domain)
        .def_readonly("optimum_value", &Objective::optimum_value)
        .def_readonly("optimum_point", &Objective::optimum_point)
        .def("__call__", [](const Objective& o, const std::vector<double>& x) { return o.value(x); });

    m.def("objective", &make_objective, py::arg("name"), "Built-in objective: 'garland' or 'wrapped-sine'");
    m.def("garland", py::overload_cast<double>(&garland), py::arg("x"));
    m.def("wrapped_sine", py::overload_cast<double>(&wrapped_sine), py::arg("x"));

    auto noisy = [](auto run) {
        return [run](const Objective& f, std::int64_t budget, double noise_b, std::uint64_t seed,
                     unsigned branching, bool trace, const std::string& distribution) {
            NoiseModel noise(noise_b, parse_noise_distribution(distribution), seed);
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run(f, noise, make_config(budget, branching, seed, trace));
            }
            return r;
        };
    };
    m.def("stroquool",
          noisy([](const Objective& f, NoiseModel& n, const RunConfig& c) { return stroquool_run(f, n, c); }),
          py::arg("objective"), py::arg("budget"), py::arg("noise_b") = 0.0, py::arg("seed") = 0,
          py::arg("branching") = 3, py::arg("trace") = false, py::arg("distribution") = "uniform");
    m.def("uniform",
          noisy([](const Objective& f, NoiseModel& n, const RunConfig& c) { return uniform_run(f, n, c); }),
          py::arg("objective"), py::arg("budget"), py::arg("noise_b") = 0.0, py::arg("seed") = 0,
          py::arg("branching") = 3, py::arg("trace") = false, py::arg("distribution") = "uniform");

    m.def(
        "sequool",
        [](const Objective& f, std::int64_t budget, unsigned branching, bool rescale, bool cap, bool trace) {
            RunConfig c = make_config(budget, branching, 0, trace);
            c.rescale_quotas = rescale;
            c.cap_quotas_by_cell_count = cap;
            py::gil_scoped_release release;
            return sequool_run(f, c);
        },
        py::arg("objective"), py::arg("budget"), py::arg("branching") = 3, py::arg("rescale") = false,
        py::arg("cap") = false, py::arg("trace") = false);
    m.def(
        "soo",
        [](const Objective& f, std::int64_t budget, unsigned branching, bool trace) {
            py::gil_scoped_release release;
            return soo_run(f, make_config(budget, branching, 0, trace));
        },
        py::arg("objective"), py::arg("budget"), py::arg("branching") = 3, py::arg("trace") = false);
    m.def(
        "doo",
        [](const Objective& f, std::int64_t budget, double nu, double rho, unsigned branching, bool trace) {
            py::gil_scoped_release release;
            return doo_run(f, make_config(budget, branching, 0, trace), nu, rho);
        },
        py::arg("objective"), py::arg("budget"), py::arg("nu"), py::arg("rho"), py::arg("branching") = 3,
        py::arg("trace") = false);

    py::class_<RunResult>(m, "RunResult")
        .def("to_dict", &result_dict)
        .def_readonly("recommendation", &RunResult::recommendation)
        .def_readonly("value_estimate", &RunResult::recommendation_value_estimate)
        .def_readonly("openings", &RunResult::openings_used)
        .def_readonly("evaluations", &RunResult::evaluations_used)
        .def_readonly("budget_used", &RunResult::budget_used)
        .def_readonly("deepest_depth", &RunResult::deepest_depth)
        .def_property_readonly("trace", [](const RunResult& r) -> py::object {
            if (!r.trace) return py::none();
            return result_dict(r)["trace"];
        });

    m.def("harmonic", &harmonic, py::arg("n"));
    m.def("lambert_w", &lambert_w, py::arg("x"));
    m.def("sequool_depth", &sequool_depth, py::arg("n"));
    m.def("stroquool_depth", &stroquool_depth, py::arg("n"));
    m.def("stroquool_min_budget", &stroquool_min_budget);
    m.def(
        "sequool_bound",
        [](std::int64_t n, double nu, double rho, double C, double d) {
            return sequool_bound(n, SmoothnessParams{nu, rho, C, d}).bound;
        },
        py::arg("n"), py::arg("nu") = 1.0, py::arg("rho") = 0.5, py::arg("C") = 1.0, py::arg("d") = 0.0);
    m.def(
        "stroquool_bound",
        [](std::int64_t n, double b, double delta, double nu, double rho, double C, double d) {
            const StroquoolBounds s = stroquool_bounds({n, b, delta}, SmoothnessParams{nu, rho, C, d});
            return py::make_tuple(s.bound, std::string(to_string(s.regime)));
        },
        py::arg("n"), py::arg("b"), py::arg("delta") = 0.05, py::arg("nu") = 1.0, py::arg("rho") = 0.5,
        py::arg("C") = 1.0, py::arg("d") = 0.0);

    m.def(
        "run_experiment",
        [](const std::string& config_json) {
            const ExperimentSpec spec = ExperimentSpec::from_json(config_json);
            std::vector<RegretRecord> records;
            {
                py::gil_scoped_release release;
                records = run_experiment(spec);
            }
            py::list out;
            for (const auto& r : records) out.append(record_dict(r));
            return out;
        },
        py::arg("config_json"), "Runs an experiment grid given as a JSON config; returns one dict per run");
    m.def(
        "summarize_csv",
        [](const std::string& csv_text) {
            std::istringstream in(csv_text);
            std::ostringstream out;
            write_summary(out, summarize(read_csv(in)));
            return out.str();
        },
        py::arg("csv_text"));
}
