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

#include "oracle/reference_optimizers.hpp"
#include "treeopt/multiprecision.hpp"
#include "treeopt/optimizers.hpp"
#include "treeopt/theory.hpp"

using namespace treeopt;
using reference::Index;

namespace {

Index index_of(const CellId& id, unsigned K) {
    Index i = 0;
    for (auto d : id.digits) i = i * K + d;
    return i;
}

RationalObjective vee() {
    return RationalObjective{"vee", Box::unit(1),
                             [](std::span<const Rational> x) { return Rational(-abs(x[0] - Rational(1, 2))); },
                             Rational(0), std::vector<Rational>{Rational(1, 2)}};
}

reference::CellValue<Rational> vee_by_cell(unsigned K) {
    return [K](std::uint32_t h, const Index& i) {
        const Index width = boost::multiprecision::pow(Index(K), h);
        const Rational x(Index(2 * i + 1), Index(2 * width));
        return Rational(-abs(x - Rational(1, 2)));
    };
}

template <class Real>
void require_same_trace(const BasicRunResult<Real>& got, const reference::Result& want, unsigned K) {
    REQUIRE(got.trace.has_value());
    const auto& ops = got.trace->openings;
    REQUIRE(ops.size() == want.openings.size());
    for (std::size_t k = 0; k < ops.size(); ++k) {
        INFO("opening " << k);
        CHECK(ops[k].cell.depth == want.openings[k].depth);
        CHECK(index_of(ops[k].cell, K) == want.openings[k].index);
        CHECK(ops[k].evals_per_child == want.openings[k].evals);
    }
    CHECK(got.recommended_cell.depth == want.best.depth);
    CHECK(index_of(got.recommended_cell, K) == want.best.index);
}

}  // namespace

TEST_CASE("reference depths agree with the library's floor formulas") {
    for (std::int64_t n = 1; n <= 2000; ++n) {
        INFO("n = " << n);
        REQUIRE(reference::deterministic_depth(n) == sequool_depth(n));
        REQUIRE(reference::noisy_depth(n) == stroquool_depth(n));
    }
}

TEST_CASE("deterministic optimizer matches the reference cell for cell on a vee") {
    const auto obj = vee();
    for (unsigned K : {2u, 3u}) {
        const auto f = vee_by_cell(K);
        for (std::int64_t n = 1; n <= 200; ++n) {
            INFO("K = " << K << ", n = " << n);
            RunConfig cfg;
            cfg.budget_n = n;
            cfg.branching = K;
            cfg.record_trace = true;
            const auto got = sequool_run(obj, cfg);
            const auto want = reference::sequool<Rational>(n, K, f);
            require_same_trace(got, want, K);
            CHECK(got.openings_used == want.ledger);
        }
    }
}

TEST_CASE("noisy optimizer at b = 0 matches the reference cell for cell on a vee") {
    const auto obj = vee();
    const auto f = vee_by_cell(3);
    for (std::int64_t n = stroquool_min_budget(); n <= 200; ++n) {
        INFO("n = " << n);
        RunConfig cfg;
        cfg.budget_n = n;
        cfg.record_trace = true;
        NoiseModel silent;
        const auto got = stroquool_run(obj, silent, cfg);
        const auto want = reference::stroquool<Rational>(n, 3, f);
        require_same_trace(got, want, 3);
        REQUIRE(got.trace->candidates.size() == want.candidates.size());
        for (std::size_t k = 0; k < want.candidates.size(); ++k) {
            CHECK(got.trace->candidates[k].depth == want.candidates[k].depth);
            CHECK(index_of(got.trace->candidates[k], 3) == want.candidates[k].index);
        }
        CHECK(got.budget_used == want.ledger);
    }
}

TEST_CASE("noisy optimizer on garland at n = 10^4, b = 0 matches the reference and beats uniform") {
    const std::int64_t n = 10000;
    const auto obj = garland_objective_extended();
    const reference::CellValue<Extended> f = [](std::uint32_t h, const Index& i) {
        const Extended width = Extended(Index(boost::multiprecision::pow(Index(3), h)).str());
        return garland(Extended(Index(2 * i + 1).str()) / (2 * width));
    };
    RunConfig cfg;
    cfg.budget_n = n;
    cfg.record_trace = true;
    NoiseModel silent;
    const auto got = stroquool_run(obj, silent, cfg);
    const auto want = reference::stroquool<Extended>(n, 3, f);
    require_same_trace(got, want, 3);

    const Extended regret = *obj.optimum_value - obj.value(got.recommendation);
    const Extended ref_regret = *obj.optimum_value - f(want.best.depth, want.best.index);
    // Same cell; the two representatives differ only by rounding at the
    // working precision.
    CHECK(abs(regret - ref_regret) <= Extended("1e-350"));

    NoiseModel silent_uniform;
    const auto flat = uniform_run(obj, silent_uniform, cfg);
    const Extended uniform_regret = *obj.optimum_value - obj.value(flat.recommendation);
    CHECK(regret < uniform_regret);
}
