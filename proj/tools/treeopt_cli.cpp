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

// treeopt: run regret experiments, summarize them, print bound overlays,
// or optimize a benchmark once.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeopt/multiprecision.hpp"
#include "treeopt/harness.hpp"
#include "treeopt/optimizers.hpp"
#include "treeopt/theory.hpp"

namespace {

using namespace treeopt;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Overrides {
    std::string config;
    std::vector<std::string> algos;
    std::string objective;
    std::vector<std::int64_t> budgets;
    std::vector<double> noise_b;
    std::vector<std::uint64_t> seed_list;
    std::int64_t seed_count = 0;
    std::optional<double> delta;
    std::optional<unsigned> branching;
    std::string out;
    std::optional<std::uint64_t> master_seed;
    std::optional<unsigned> threads;
    std::string precision;
    std::string distribution;
    bool no_wall_time = false;
};

void add_spec_options(CLI::App* app, Overrides& o) {
    app->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
    app->add_option("--algo", o.algos, "sequool, stroquool, soo, uniform, doo:NU:RHO");
    app->add_option("--objective", o.objective, "garland or wrapped-sine");
    app->add_option("--budget", o.budgets, "Budgets n, strictly increasing");
    app->add_option("--noise-b", o.noise_b, "Noise ranges b");
    auto* count = app->add_option("--seeds", o.seed_count, "Number of repeats");
    app->add_option("--seed-list", o.seed_list, "Explicit repeat keys")->excludes(count);
    app->add_option("--delta", o.delta, "Confidence level for the noisy bounds");
    app->add_option("--branching", o.branching, "Branching factor K");
    app->add_option("--master-seed", o.master_seed, "Seed all per-run seeds derive from");
    app->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    app->add_option("--precision", o.precision, "double or extended");
    app->add_option("--distribution", o.distribution, "uniform or truncated-gaussian");
}

ExperimentSpec build_spec(const Overrides& o) {
    ExperimentSpec s;
    if (!o.config.empty()) s = ExperimentSpec::from_json(read_file(o.config), false);
    if (!o.algos.empty()) {
        s.algorithms.clear();
        for (const auto& a : o.algos) s.algorithms.push_back(AlgorithmSpec::parse(a));
    }
    if (!o.objective.empty()) s.objective = o.objective;
    if (!o.budgets.empty()) s.budgets = o.budgets;
    if (!o.noise_b.empty()) s.noise_b = o.noise_b;
    if (o.seed_count > 0) {
        s.seeds.clear();
        for (std::int64_t i = 0; i < o.seed_count; ++i) s.seeds.push_back(static_cast<std::uint64_t>(i));
    }
    if (!o.seed_list.empty()) s.seeds = o.seed_list;
    if (o.delta) s.delta = *o.delta;
    if (o.branching) s.branching = *o.branching;
    if (!o.out.empty()) s.output = o.out;
    if (o.master_seed) s.master_seed = *o.master_seed;
    if (o.threads) s.threads = *o.threads;
    if (!o.precision.empty()) s.precision = parse_precision(o.precision);
    if (!o.distribution.empty()) s.distribution = parse_noise_distribution(o.distribution);
    if (o.no_wall_time) s.record_wall_time = false;
    return s;
}

int cmd_run(const Overrides& o) {
    const ExperimentSpec spec = build_spec(o);
    spec.validate();
    if (spec.output.empty() || spec.output == "-") {
        run_experiment(spec, &std::cout);
        return 0;
    }
    std::ofstream out(spec.output);
    if (!out) throw std::runtime_error("cannot write " + spec.output);
    const auto records = run_experiment(spec, &out);
    std::cerr << "wrote " << records.size() << " records to " << spec.output << '\n';
    return 0;
}

int cmd_summarize(const std::string& in_path, const std::string& out_path) {
    std::vector<RegretRecord> records;
    if (in_path == "-") {
        records = read_csv(std::cin);
    } else {
        std::ifstream in(in_path);
        if (!in) throw std::runtime_error("cannot open " + in_path);
        records = read_csv(in);
    }
    const Summary s = summarize(records);
    if (out_path.empty() || out_path == "-") {
        write_summary(std::cout, s);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        write_summary(out, s);
    }
    return 0;
}

struct OptimizeOptions {
    std::string algo = "sequool";
    std::string objective = "garland";
    std::int64_t budget = 100;
    double noise_b = 0.0;
    std::uint64_t seed = 0;
    unsigned branching = 3;
    std::string precision = "double";
    std::string distribution = "uniform";
    bool trace = false;
};

template <class Real>
nlohmann::ordered_json optimize(const OptimizeOptions& o, const BasicObjective<Real>& objective) {
    const AlgorithmSpec algo = AlgorithmSpec::parse(o.algo);
    if (algo.deterministic_only() && o.noise_b > 0.0) {
        throw std::invalid_argument(algo.label() + " needs noiseless feedback");
    }
    RunConfig cfg;
    cfg.budget_n = o.budget;
    cfg.seed = o.seed;
    cfg.branching = o.branching;
    cfg.record_trace = o.trace;
    NoiseModel noise(o.noise_b, parse_noise_distribution(o.distribution), o.seed);
    BasicRunResult<Real> r;
    switch (algo.kind) {
        case Algorithm::sequool: r = sequool_run(objective, cfg); break;
        case Algorithm::stroquool: r = stroquool_run(objective, noise, cfg); break;
        case Algorithm::soo: r = soo_run(objective, cfg); break;
        case Algorithm::doo: r = doo_run(objective, cfg, algo.nu, algo.rho); break;
        case Algorithm::uniform: r = uniform_run(objective, noise, cfg); break;
    }
    nlohmann::ordered_json j;
    j["algo"] = algo.label();
    j["objective"] = objective.name;
    j["n"] = o.budget;
    j["b"] = o.noise_b;
    std::vector<double> x;
    for (const Real& v : r.recommendation) x.push_back(static_cast<double>(v));
    j["recommendation"] = x;
    j["cell"] = r.recommended_cell.to_string();
    j["value"] = static_cast<double>(objective.value(r.recommendation));
    if (objective.optimum_value) {
        j["regret"] = static_cast<double>(*objective.optimum_value - objective.value(r.recommendation));
    }
    j["openings"] = r.openings_used;
    j["evaluations"] = r.evaluations_used;
    j["budget_used"] = r.budget_used;
    j["deepest_depth"] = r.deepest_depth;
    if (r.trace) {
        auto& t = j["trace"];
        t = nlohmann::ordered_json::array();
        for (const auto& e : r.trace->openings) {
            t.push_back({{"cell", e.cell.to_string()}, {"evals_per_child", e.evals_per_child}});
        }
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tree-based global optimization experiments"};
    app.require_subcommand(1);

    Overrides run_opts;
    auto* run = app.add_subcommand("run", "Run a regret experiment grid and write CSV");
    add_spec_options(run, run_opts);
    run->add_option("--out", run_opts.out, "Output CSV path ('-' for stdout)");
    run->add_flag("--no-wall-time", run_opts.no_wall_time, "Write wall_ms as 0 for byte-stable output");

    std::string sum_in, sum_out;
    auto* summ = app.add_subcommand("summarize", "Median/quantile table and decay fits from a CSV");
    summ->add_option("input", sum_in, "Records CSV ('-' for stdin)")->required();
    summ->add_option("--out", sum_out, "Output path ('-' for stdout)");

    Overrides bound_opts;
    SmoothnessParams params;
    auto* bounds = app.add_subcommand("bounds", "Print the theoretical regret bounds per budget");
    add_spec_options(bounds, bound_opts);
    bounds->add_option("--nu", params.nu, "Smoothness scale nu");
    bounds->add_option("--rho", params.rho, "Smoothness rate rho");
    bounds->add_option("--C", params.C, "Near-optimal cell constant");
    bounds->add_option("--d", params.d, "Near-optimality dimension");

    OptimizeOptions opt;
    auto* optimize_cmd = app.add_subcommand("optimize", "Run one optimizer and print the result as JSON");
    optimize_cmd->add_option("--algo", opt.algo, "Algorithm");
    optimize_cmd->add_option("--objective", opt.objective, "Objective");
    optimize_cmd->add_option("--budget", opt.budget, "Budget n");
    optimize_cmd->add_option("--noise-b", opt.noise_b, "Noise range b");
    optimize_cmd->add_option("--seed", opt.seed, "Noise seed");
    optimize_cmd->add_option("--branching", opt.branching, "Branching factor K");
    optimize_cmd->add_option("--precision", opt.precision, "double or extended");
    optimize_cmd->add_option("--distribution", opt.distribution, "uniform or truncated-gaussian");
    optimize_cmd->add_flag("--trace", opt.trace, "Include the opened cells");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(run_opts);
        if (*summ) return cmd_summarize(sum_in, sum_out);
        if (*bounds) {
            ExperimentSpec spec = build_spec(bound_opts);
            emit_bound_overlay(spec, params, std::cout);
            return 0;
        }
        if (*optimize_cmd) {
            const auto j = parse_precision(opt.precision) == Precision::extended
                               ? optimize(opt, make_extended_objective(opt.objective))
                               : optimize(opt, make_objective(opt.objective));
            std::cout << j.dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "treeopt: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
