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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracle/reference_optimizers.hpp"
#include "treeopt/multiprecision.hpp"
#include "treeopt/optimizers.hpp"
#include "treeopt/partition.hpp"
#include "treeopt/theory.hpp"

using namespace treeopt;

namespace {

RunConfig config(std::int64_t n, std::uint64_t seed = 0) {
    RunConfig c;
    c.budget_n = n;
    c.seed = seed;
    c.record_trace = true;
    return c;
}

std::set<CellId> evaluated_cells(const RunTrace& t, unsigned k) {
    std::set<CellId> s;
    for (const auto& e : t.openings) {
        for (unsigned j = 0; j < k; ++j) s.insert(e.cell.child(j));
    }
    return s;
}

double regret(const Objective& f, const RunResult& r) { return *f.optimum_value - f.value(r.recommendation); }

// Sum of cell volumes at a depth and pairwise interior disjointness.
void check_tiling(const Box& domain, unsigned k, std::uint32_t depth) {
    std::uint64_t cells = 1;
    for (std::uint32_t h = 0; h < depth; ++h) cells *= k;
    double total = 0.0;
    std::vector<Box> boxes;
    for (std::uint64_t i = 0; i < cells; ++i) {
        boxes.push_back(cell_box(domain, k, CellId::from_index(depth, i, k)));
        double v = 1.0;
        for (std::size_t a = 0; a < domain.dim(); ++a) v *= boxes.back().width(a);
        total += v;
    }
    double vol = 1.0;
    for (std::size_t a = 0; a < domain.dim(); ++a) vol *= domain.width(a);
    CHECK(total == Catch::Approx(vol).epsilon(1e-12));
    std::mt19937_64 rng(depth * 31 + k);
    for (int s = 0; s < 200; ++s) {
        Point x(domain.dim());
        for (std::size_t a = 0; a < domain.dim(); ++a) {
            x[a] = std::uniform_real_distribution<double>(domain.lower()[a], domain.upper()[a])(rng);
        }
        int inside = 0;
        for (const Box& b : boxes) {
            bool strict = true;
            for (std::size_t a = 0; a < domain.dim(); ++a) {
                strict = strict && b.lower()[a] < x[a] && x[a] < b.upper()[a];
            }
            inside += strict;
        }
        CHECK(inside <= 1);
        const CellId id = locate(domain, k, x, depth);
        CHECK(cell_box(domain, k, id).contains(x));
    }
}

}  // namespace

TEST_CASE("cells at each depth tile the domain") {
    for (unsigned k : {2u, 3u, 4u}) {
        for (std::uint32_t h = 0; h <= 6; ++h) {
            check_tiling(Box::unit(1), k, h);
            check_tiling(Box({-1.0, 0.0, 2.0}, {1.0, 0.5, 5.0}), k, h);
        }
    }
}

TEST_CASE("children tile their parent") {
    const Box dom({-2.0, 1.0}, {3.0, 4.0});
    for (unsigned k : {2u, 3u, 5u}) {
        for (std::uint32_t h = 0; h < 5; ++h) {
            const CellId id = CellId::from_index(h, (h * 7) % static_cast<std::uint64_t>(std::pow(k, h)), k);
            const Box parent = cell_box(dom, k, id);
            const std::size_t axis = h % 2;
            double lo = parent.lower()[axis];
            for (unsigned j = 0; j < k; ++j) {
                const Box c = cell_box(dom, k, id.child(j));
                CHECK(c.lower()[axis] == lo);
                lo = c.upper()[axis];
                CHECK(c.lower()[1 - axis] == parent.lower()[1 - axis]);
                CHECK(c.upper()[1 - axis] == parent.upper()[1 - axis]);
            }
            CHECK(lo == Catch::Approx(parent.upper()[axis]));
        }
    }
}

TEST_CASE("evaluation ledger matches the tree") {
    const Objective g = garland_objective();
    PartitionTree tree(g.domain, 3);
    Evaluator ev(g);
    std::mt19937_64 rng(5);
    std::vector<CellId> frontier{CellId::root()};
    std::int64_t expected_evals = 0, opened = 0;
    for (int step = 0; step < 300 && !frontier.empty(); ++step) {
        const std::size_t pick = rng() % frontier.size();
        const CellId id = frontier[pick];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
        const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 3);
        tree.open_cell(id, m, ev);
        expected_evals += 3 * m;
        ++opened;
        for (unsigned j = 0; j < 3; ++j) frontier.push_back(id.child(j));
        CHECK(tree.openings() == opened);
        CHECK(ev.count() == expected_evals);
        CHECK_THROWS_AS(tree.open_cell(id, 1, ev), std::logic_error);
    }
}

TEST_CASE("runs are deterministic for a fixed seed") {
    const Objective g = garland_objective();
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
        NoiseModel a(0.5, NoiseDistribution::uniform, seed), b(0.5, NoiseDistribution::uniform, seed);
        const RunResult r1 = stroquool_run(g, a, config(2000, seed));
        const RunResult r2 = stroquool_run(g, b, config(2000, seed));
        CHECK(r1.trace->openings == r2.trace->openings);
        CHECK(r1.recommendation == r2.recommendation);
        CHECK(r1.recommendation_value_estimate == r2.recommendation_value_estimate);
        NoiseModel c(0.5, NoiseDistribution::truncated_gaussian, seed), d(0.5, NoiseDistribution::truncated_gaussian, seed);
        CHECK(uniform_run(g, c, config(300)).recommendation == uniform_run(g, d, config(300)).recommendation);
    }
    CHECK(sequool_run(g, config(3000)).trace->openings == sequool_run(g, config(3000)).trace->openings);
    CHECK(soo_run(g, config(500)).trace->openings == soo_run(g, config(500)).trace->openings);
}

TEST_CASE("recommendations lie in the domain and openings recount from the trace") {
    const Objective w = wrapped_sine_objective();
    const Objective g = garland_objective();
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::int64_t n = 68 + static_cast<std::int64_t>(rng() % 3000);
        const Objective& f = (trial % 2) ? w : g;
        const unsigned k = 2 + static_cast<unsigned>(rng() % 3);
        RunConfig c = config(n, trial);
        c.branching = k;
        NoiseModel noise(0.3, NoiseDistribution::uniform, trial), silent;
        for (const RunResult& r : {sequool_run(f, c), stroquool_run(f, noise, c), soo_run(f, c),
                                   uniform_run(f, silent, c)}) {
            CHECK(f.domain.contains(r.recommendation));
            CHECK(r.openings_used == static_cast<std::int64_t>(r.trace->openings.size()));
            std::set<CellId> seen;
            for (const auto& e : r.trace->openings) {
                CHECK(seen.insert(e.cell).second);
                if (e.cell != CellId::root()) CHECK(seen.count(e.cell.parent()) == 1);
            }
            CHECK(cell_box(f.domain, k, r.recommended_cell).contains(r.recommendation));
        }
    }
}

TEST_CASE("anytime baselines never get worse as the budget grows") {
    const Objective g = garland_objective();
    const Objective w = wrapped_sine_objective();
    for (const Objective* f : {&g, &w}) {
        double soo_prev = INFINITY, doo_prev = INFINITY, uni_prev = INFINITY;
        for (std::int64_t n = 1; n <= 600; n += 7) {
            NoiseModel silent;
            const double s = regret(*f, soo_run(*f, config(n)));
            const double d = regret(*f, doo_run(*f, config(n), 3.0, 0.5));
            const double u = regret(*f, uniform_run(*f, silent, config(n)));
            CHECK(s <= soo_prev);
            CHECK(d <= doo_prev);
            CHECK(u <= uni_prev);
            soo_prev = s;
            doo_prev = d;
            uni_prev = u;
        }
    }
}

TEST_CASE("deterministic optimizer's budget identity up to n = 10^4") {
    for (std::int64_t n = 1; n <= 10000; ++n) {
        const auto q = sequool_quotas(n, 3, false, false);
        const std::int64_t h_max = sequool_depth(n);
        REQUIRE(static_cast<std::int64_t>(q.size()) == h_max + 1);
        std::int64_t total = 0;
        for (std::int64_t h = 1; h <= h_max; ++h) total += q[h];
        // 1 + sum floor(h_max / h) <= 1 + h_max H(h_max) <= 1 + n.
        REQUIRE(1 + total <= n + 1);
    }
    const Objective g = garland_objective();
    for (std::int64_t n = 1; n <= 10000; n = n * 3 / 2 + 1) {
        const RunResult r = sequool_run(g, config(n));
        CHECK(r.openings_used <= n + 1);
        CHECK(r.budget_used == r.openings_used);
        CHECK(r.evaluations_used == 3 * r.openings_used);
    }
}

TEST_CASE("noisy optimizer's ledger never exceeds n up to n = 10^4") {
    const Objective g = garland_objective();
    for (std::int64_t n = 68; n <= 10000; n += 97) {
        NoiseModel noise(1.0, NoiseDistribution::uniform, static_cast<std::uint64_t>(n));
        RunConfig c = config(n);
        c.record_trace = false;
        const RunResult r = stroquool_run(g, noise, c);
        INFO("n = " << n);
        CHECK(r.budget_used <= n);
        CHECK(r.openings_used <= r.budget_used);
    }
}

TEST_CASE("deeper noiseless openings shrink the regret bound by cell width") {
    // On a 1-Lipschitz function the recommendation of a deterministic run is
    // within the width of the deepest cell on the path to the optimum.
    const Objective f{"kink", Box::unit(1), [](std::span<const double> x) { return -std::abs(x[0] - 0.377); },
                      0.0, Point{0.377}};
    for (std::int64_t n : {10, 100, 1000, 10000}) {
        const RunResult r = sequool_run(f, config(n));
        std::uint32_t opened_depth = 0;
        for (const auto& e : r.trace->openings) {
            if (cell_box(f.domain, 3, e.cell).contains(*f.optimum_point))
                opened_depth = std::max(opened_depth, e.cell.depth);
        }
        CHECK(regret(f, r) <= std::pow(3.0, -double(opened_depth + 1)) / 2 + 1e-15);
    }
}

TEST_CASE("deterministic optimizer's evaluated set grows with n on a unimodal objective") {
    const Objective f{"kink", Box::unit(1), [](std::span<const double> x) { return -std::abs(x[0] - 0.377); },
                      0.0, Point{0.377}};
    std::set<CellId> prev;
    double prev_value = -INFINITY;
    for (std::int64_t n = 1; n <= 3000; ++n) {
        const RunResult r = sequool_run(f, config(n));
        const std::set<CellId> cur = evaluated_cells(*r.trace, 3);
        INFO("n = " << n);
        REQUIRE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
        REQUIRE(f.value(r.recommendation) >= prev_value);
        prev = cur;
        prev_value = f.value(r.recommendation);
    }
}

TEST_CASE("on garland the evaluated set is not monotone in n, in the reference too") {
    // From n = 12 to 13 the deepest depth grows from 3 to 4, depth 2 gets a
    // second opening, and depth 3 may then prefer a child of the new cell.
    using reference::Index;
    const reference::CellValue<Extended> f = [](std::uint32_t h, const Index& i) {
        const Extended width = Extended(Index(boost::multiprecision::pow(Index(3), h)).str());
        return garland(Extended(Index(2 * i + 1).str()) / (2 * width));
    };
    auto reference_cells = [&](std::int64_t n) {
        std::set<std::pair<std::uint32_t, Index>> s;
        for (const auto& o : reference::sequool<Extended>(n, 3, f).openings) {
            for (unsigned j = 0; j < 3; ++j) s.insert({o.depth + 1, o.index * 3 + j});
        }
        return s;
    };
    const auto a = reference_cells(12), b = reference_cells(13);
    CHECK_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end()));

    const ExtendedObjective g = garland_objective_extended();
    RunConfig c = config(12);
    const auto s12 = evaluated_cells(*sequool_run(g, c).trace, 3);
    c.budget_n = 13;
    const auto s13 = evaluated_cells(*sequool_run(g, c).trace, 3);
    CHECK_FALSE(std::includes(s13.begin(), s13.end(), s12.begin(), s12.end()));
}
