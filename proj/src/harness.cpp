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

#include "treeopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "treeopt/multiprecision.hpp"
#include "treeopt/optimizers.hpp"

namespace treeopt {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

AlgorithmSpec AlgorithmSpec::parse(std::string_view text) {
    AlgorithmSpec a;
    if (text == "sequool") {
        a.kind = Algorithm::sequool;
    } else if (text == "stroquool") {
        a.kind = Algorithm::stroquool;
    } else if (text == "soo") {
        a.kind = Algorithm::soo;
    } else if (text == "uniform") {
        a.kind = Algorithm::uniform;
    } else if (text == "doo") {
        a.kind = Algorithm::doo;
    } else if (text.starts_with("doo:")) {
        a.kind = Algorithm::doo;
        const std::string rest(text.substr(4));
        const auto colon = rest.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("expected doo:NU:RHO, got '" + std::string(text) + "'");
        }
        try {
            std::size_t used = 0;
            a.nu = std::stod(rest.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("trailing characters");
            const std::string r = rest.substr(colon + 1);
            a.rho = std::stod(r, &used);
            if (used != r.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::invalid_argument("expected doo:NU:RHO, got '" + std::string(text) + "'");
        }
        if (!(a.nu > 0.0) || !(a.rho > 0.0 && a.rho < 1.0)) {
            throw std::invalid_argument("doo needs nu > 0 and 0 < rho < 1");
        }
    } else {
        throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
    }
    return a;
}

std::string AlgorithmSpec::label() const {
    switch (kind) {
        case Algorithm::sequool: return "sequool";
        case Algorithm::stroquool: return "stroquool";
        case Algorithm::soo: return "soo";
        case Algorithm::uniform: return "uniform";
        case Algorithm::doo: return "doo:" + format_double(nu) + ":" + format_double(rho);
    }
    return "unknown";
}

bool AlgorithmSpec::deterministic_only() const noexcept {
    return kind == Algorithm::sequool || kind == Algorithm::soo || kind == Algorithm::doo;
}

std::string_view to_string(Precision p) noexcept {
    return p == Precision::extended ? "extended" : "double";
}

Precision parse_precision(std::string_view text) {
    if (text == "double") return Precision::double_precision;
    if (text == "extended") return Precision::extended;
    throw std::invalid_argument("unknown precision '" + std::string(text) + "'");
}

void ExperimentSpec::validate() const {
    if (algorithms.empty()) throw std::invalid_argument("no algorithms given");
    if (budgets.empty()) throw std::invalid_argument("no budgets given");
    if (noise_b.empty()) throw std::invalid_argument("no noise ranges given");
    if (seeds.empty()) throw std::invalid_argument("no seeds given");
    for (std::size_t i = 0; i < budgets.size(); ++i) {
        if (budgets[i] < 1) throw std::invalid_argument("budgets must be positive");
        if (i > 0 && budgets[i] <= budgets[i - 1]) {
            throw std::invalid_argument("budgets must be strictly increasing");
        }
    }
    for (double b : noise_b) {
        if (!(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("noise ranges must be >= 0");
    }
    for (const auto& a : algorithms) {
        if (!a.deterministic_only()) continue;
        for (double b : noise_b) {
            if (b > 0.0) {
                throw std::invalid_argument(a.label() + " needs noiseless feedback but b = " +
                                            format_double(b) + " was requested");
            }
        }
    }
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
    if (branching < 2) throw std::invalid_argument("branching factor must be at least 2");
    (void)make_objective(objective);
}

ExperimentSpec ExperimentSpec::from_json(std::string_view text, bool check) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
    ExperimentSpec s;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "algorithms") {
                if (!v.is_array()) throw std::invalid_argument("'algorithms' must be a list");
                s.algorithms.clear();
                for (const auto& a : v) s.algorithms.push_back(AlgorithmSpec::parse(a.get<std::string>()));
            } else if (key == "objective") {
                s.objective = v.get<std::string>();
            } else if (key == "budgets") {
                s.budgets = v.get<std::vector<std::int64_t>>();
            } else if (key == "noise_b") {
                s.noise_b = v.get<std::vector<double>>();
            } else if (key == "seeds") {
                if (v.is_number_integer()) {
                    const auto count = v.get<std::int64_t>();
                    if (count < 1) throw std::invalid_argument("seed count must be positive");
                    s.seeds.resize(static_cast<std::size_t>(count));
                    std::iota(s.seeds.begin(), s.seeds.end(), std::uint64_t{0});
                } else {
                    s.seeds = v.get<std::vector<std::uint64_t>>();
                }
            } else if (key == "delta") {
                s.delta = v.get<double>();
            } else if (key == "branching") {
                s.branching = v.get<unsigned>();
            } else if (key == "output") {
                s.output = v.get<std::string>();
            } else if (key == "master_seed") {
                s.master_seed = v.get<std::uint64_t>();
            } else if (key == "distribution") {
                s.distribution = parse_noise_distribution(v.get<std::string>());
            } else if (key == "precision") {
                s.precision = parse_precision(v.get<std::string>());
            } else if (key == "threads") {
                s.threads = v.get<unsigned>();
            } else if (key == "record_wall_time") {
                s.record_wall_time = v.get<bool>();
            } else {
                throw std::invalid_argument("unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
    }
    if (check) s.validate();
    return s;
}

std::string ExperimentSpec::to_json() const {
    nlohmann::ordered_json j;
    std::vector<std::string> algos;
    for (const auto& a : algorithms) algos.push_back(a.label());
    j["algorithms"] = algos;
    j["objective"] = objective;
    j["budgets"] = budgets;
    j["noise_b"] = noise_b;
    j["seeds"] = seeds;
    j["delta"] = delta;
    j["branching"] = branching;
    j["output"] = output;
    j["master_seed"] = master_seed;
    j["distribution"] = std::string(to_string(distribution));
    j["precision"] = std::string(to_string(precision));
    j["threads"] = threads;
    j["record_wall_time"] = record_wall_time;
    return j.dump(2);
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view algo, std::int64_t n,
                              double b, std::uint64_t repeat) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ fnv1a(algo));
    h = splitmix64(h ^ static_cast<std::uint64_t>(n));
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(b));
    return splitmix64(h ^ repeat);
}

namespace {

struct Task {
    std::size_t algo = 0;
    std::int64_t n = 0;
    double b = 0.0;
    std::uint64_t repeat = 0;
};

template <class Real>
RegretRecord run_task(const ExperimentSpec& spec, const BasicObjective<Real>& objective,
                      const Task& task) {
    const AlgorithmSpec& algo = spec.algorithms[task.algo];
    RegretRecord rec;
    rec.algo = algo.label();
    rec.objective = spec.objective;
    rec.n = task.n;
    rec.b = task.b;
    rec.seed = derive_run_seed(spec.master_seed, rec.algo, task.n, task.b, task.repeat);

    RunConfig cfg;
    cfg.budget_n = task.n;
    cfg.seed = rec.seed;
    cfg.branching = spec.branching;
    NoiseModel noise(task.b, spec.distribution, rec.seed);

    const auto start = std::chrono::steady_clock::now();
    BasicRunResult<Real> result;
    switch (algo.kind) {
        case Algorithm::sequool: result = sequool_run(objective, cfg); break;
        case Algorithm::stroquool: result = stroquool_run(objective, noise, cfg); break;
        case Algorithm::soo: result = soo_run(objective, cfg); break;
        case Algorithm::doo: result = doo_run(objective, cfg, algo.nu, algo.rho); break;
        case Algorithm::uniform: result = uniform_run(objective, noise, cfg); break;
    }
    const auto stop = std::chrono::steady_clock::now();

    const Real regret = *objective.optimum_value - objective.value(result.recommendation);
    rec.regret = static_cast<double>(regret);
    if (rec.regret < -1e-12) {
        throw std::logic_error("negative regret " + format_double(rec.regret) + " for " + rec.algo +
                               " at n = " + std::to_string(task.n) +
                               ": the objective's optimum_value is not a supremum");
    }
    rec.openings = result.openings_used;
    rec.evaluations = result.evaluations_used;
    if (spec.record_wall_time) {
        rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }
    return rec;
}

std::vector<Task> grid(const ExperimentSpec& spec) {
    std::vector<Task> tasks;
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a)
        for (std::int64_t n : spec.budgets)
            for (double b : spec.noise_b)
                for (std::uint64_t r : spec.seeds) tasks.push_back({a, n, b, r});
    return tasks;
}

template <class Real>
std::vector<RegretRecord> run_grid(const ExperimentSpec& spec, const BasicObjective<Real>& objective,
                                   std::ostream* csv) {
    const std::vector<Task> tasks = grid(spec);
    std::vector<std::optional<RegretRecord>> slots(tasks.size());
    std::mutex mu;
    std::size_t next_to_write = 0;
    std::exception_ptr failure;
    std::atomic<std::size_t> next_task{0};
    std::atomic<bool> stop{false};

    auto worker = [&] {
        for (;;) {
            if (stop.load()) return;
            const std::size_t i = next_task.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                RegretRecord rec = run_task(spec, objective, tasks[i]);
                std::lock_guard lock(mu);
                slots[i] = std::move(rec);
                while (next_to_write < slots.size() && slots[next_to_write]) {
                    if (csv) write_csv_record(*csv, *slots[next_to_write]);
                    ++next_to_write;
                }
                if (csv) csv->flush();
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                stop = true;
                return;
            }
        }
    };

    unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<RegretRecord> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace

std::vector<RegretRecord> run_experiment(const ExperimentSpec& spec, std::ostream* csv) {
    spec.validate();
    if (csv) {
        write_csv_metadata(*csv, spec);
        *csv << kCsvHeader << '\n';
    }
    if (spec.precision == Precision::extended) {
        const ExtendedObjective objective = make_extended_objective(spec.objective);
        if (!objective.optimum_value) {
            throw std::invalid_argument("objective " + spec.objective + " has no known optimum");
        }
        return run_grid(spec, objective, csv);
    }
    const Objective objective = make_objective(spec.objective);
    if (!objective.optimum_value) {
        throw std::invalid_argument("objective " + spec.objective + " has no known optimum");
    }
    return run_grid(spec, objective, csv);
}

const char* const kCsvHeader = "algo,objective,n,b,seed,regret,openings,evaluations,wall_ms";

void write_csv_metadata(std::ostream& out, const ExperimentSpec& spec) {
    out << "# treeopt regret records\n";
    out << "# objective=" << spec.objective << " precision=" << to_string(spec.precision)
        << " distribution=" << to_string(spec.distribution) << " branching=" << spec.branching
        << " master_seed=" << spec.master_seed << '\n';
    if (spec.objective == "garland") {
        out << "# optimum_value=" << format_double(garland_max_value())
            << " (4 x0 (1 - x0) at x0 = pi/6; double rounding tolerance 1.2e-16;"
               " garland evaluated in double loses about 1e-8 near x0)\n";
    } else {
        out << "# optimum_value=0 (limit at x = 1/2, where the function is defined as 0;"
               " tolerance 0)\n";
    }
}

void write_csv_record(std::ostream& out, const RegretRecord& r) {
    out << r.algo << ',' << r.objective << ',' << r.n << ',' << format_double(r.b) << ',' << r.seed
        << ',' << format_double(r.regret) << ',' << r.openings << ',' << r.evaluations << ','
        << format_double(r.wall_ms) << '\n';
}

std::vector<RegretRecord> read_csv(std::istream& in) {
    std::vector<RegretRecord> out;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 9) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected 9 fields");
        }
        try {
            RegretRecord r;
            r.algo = f[0];
            r.objective = f[1];
            r.n = std::stoll(f[2]);
            r.b = std::stod(f[3]);
            r.seed = std::stoull(f[4]);
            r.regret = std::stod(f[5]);
            r.openings = std::stoll(f[6]);
            r.evaluations = std::stoll(f[7]);
            r.wall_ms = std::stod(f[8]);
            out.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": bad number");
        }
    }
    if (!header_seen) throw std::runtime_error("missing CSV header");
    return out;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
    if (x.size() < 2) throw std::invalid_argument("a line fit needs at least two points");
    const double m = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("all x values are equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy > 0.0) {
        double sse = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double e = y[i] - (fit.slope * x[i] + fit.intercept);
            sse += e * e;
        }
        fit.r_squared = 1.0 - sse / syy;
    }
    return fit;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of an empty set");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must be in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Summary summarize(const std::vector<RegretRecord>& records) {
    if (records.empty()) throw std::invalid_argument("no records to summarize");
    using Key = std::tuple<std::string, std::int64_t, double>;
    std::vector<Key> order;
    std::map<Key, std::vector<double>> groups;
    for (const auto& r : records) {
        Key k{r.algo, r.n, r.b};
        auto [it, inserted] = groups.try_emplace(k);
        if (inserted) order.push_back(k);
        it->second.push_back(r.regret);
    }

    Summary s;
    for (const auto& k : order) {
        const auto& v = groups[k];
        SummaryRow row;
        row.algo = std::get<0>(k);
        row.n = std::get<1>(k);
        row.b = std::get<2>(k);
        row.count = v.size();
        row.median = quantile(v, 0.5);
        row.q10 = quantile(v, 0.1);
        row.q90 = quantile(v, 0.9);
        row.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        s.rows.push_back(row);
    }

    std::vector<std::pair<std::string, double>> curves;
    for (const auto& row : s.rows) {
        std::pair<std::string, double> c{row.algo, row.b};
        if (std::find(curves.begin(), curves.end(), c) == curves.end()) curves.push_back(c);
    }
    for (const auto& [algo, b] : curves) {
        DecayFit fit;
        fit.algo = algo;
        fit.b = b;
        std::vector<double> xn, xs, y;
        for (const auto& row : s.rows) {
            if (row.algo != algo || row.b != b || !(row.median > 0.0)) continue;
            xn.push_back(static_cast<double>(row.n));
            xs.push_back(std::sqrt(static_cast<double>(row.n)));
            y.push_back(std::log2(row.median));
        }
        fit.points = y.size();
        if (y.size() >= 2) {
            fit.vs_n = fit_line(xn, y);
            fit.vs_sqrt_n = fit_line(xs, y);
            fit.flat = !fit.vs_n->r_squared.has_value();
        } else {
            fit.flat = y.size() == 1;
        }
        s.fits.push_back(fit);
    }
    return s;
}

void write_summary(std::ostream& out, const Summary& s) {
    out << "algo,n,b,count,median,q10,q90,mean\n";
    for (const auto& r : s.rows) {
        out << r.algo << ',' << r.n << ',' << format_double(r.b) << ',' << r.count << ','
            << format_double(r.median) << ',' << format_double(r.q10) << ',' << format_double(r.q90)
            << ',' << format_double(r.mean) << '\n';
    }
    out << "\nalgo,b,points,slope_log2_vs_n,r2_vs_n,slope_log2_vs_sqrt_n,r2_vs_sqrt_n,shape\n";
    auto r2 = [](const std::optional<LinearFit>& f) {
        return f && f->r_squared ? format_double(*f->r_squared) : std::string("nan");
    };
    for (const auto& f : s.fits) {
        out << f.algo << ',' << format_double(f.b) << ',' << f.points << ','
            << (f.vs_n ? format_double(f.vs_n->slope) : "nan") << ',' << r2(f.vs_n) << ','
            << (f.vs_sqrt_n ? format_double(f.vs_sqrt_n->slope) : "nan") << ',' << r2(f.vs_sqrt_n)
            << ',' << (f.flat ? "flat" : f.points < 2 ? "insufficient" : "fit") << '\n';
    }
}

void emit_bound_overlay(const ExperimentSpec& spec, const SmoothnessParams& params, std::ostream& out) {
    params.validate();
    if (spec.budgets.empty() || spec.noise_b.empty()) {
        throw std::invalid_argument("bound overlay needs budgets and noise ranges");
    }
    out << "n,b,sequool_bound,stroquool_bound,regime\n";
    for (std::int64_t n : spec.budgets) {
        const double seq = sequool_bound(n, params).bound;
        for (double b : spec.noise_b) {
            const StroquoolBounds s = stroquool_bounds({n, b, spec.delta}, params);
            out << n << ',' << format_double(b) << ',' << format_double(seq) << ','
                << format_double(s.bound) << ',' << to_string(s.regime) << '\n';
        }
    }
}

}  // namespace treeopt
