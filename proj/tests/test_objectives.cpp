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

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "treeopt/multiprecision.hpp"
#include "treeopt/objectives.hpp"

using namespace treeopt;

TEST_CASE("garland endpoints and domain") {
    CHECK(garland(0.0) == 0.0);
    CHECK(garland(1.0) == 0.0);
    CHECK_THROWS_AS(garland(-0.01), std::out_of_range);
    CHECK_THROWS_AS(garland(1.01), std::out_of_range);
    const double x = 0.3;
    CHECK(garland(x) == 4 * x * (1 - x) * (0.75 + 0.25 * (1 - std::sqrt(std::abs(std::sin(60 * x))))));
}

TEST_CASE("garland maximum agrees with a dense grid plus local refinement") {
    // 10^7-point grid, then a golden-section-free refinement: scan ever
    // finer grids around the best point.
    const int N = 10'000'000;
    double best_x = 0.0, best = -1.0;
    for (int i = 0; i <= N; ++i) {
        const double x = static_cast<double>(i) / N;
        const double v = garland(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double step = 1.0 / N;
    for (int round = 0; round < 12; ++round) {
        const double centre = best_x;
        for (int k = -1000; k <= 1000; ++k) {
            const double x = centre + k * step / 500.0;
            if (x < 0.0 || x > 1.0) continue;
            const double v = garland(x);
            if (v > best) {
                best = v;
                best_x = x;
            }
        }
        step /= 500.0;
    }
    CHECK(std::abs(best_x - garland_argmax()) <= 1e-12);
    // The stored value is the supremum, which no double attains: sqrt|sin|
    // has a cusp and sin(60x) is never exactly 0 at a double.
    CHECK(best <= garland_max_value() + 1e-12);
    CHECK(garland_max_value() - best <= 5e-8);
    const Objective g = garland_objective();
    REQUIRE(g.optimum_value.has_value());
    CHECK(*g.optimum_value == garland_max_value());
    CHECK(garland_max_value() == Catch::Approx(4 * (std::numbers::pi / 6) * (1 - std::numbers::pi / 6)).epsilon(1e-15));
}

TEST_CASE("no grid point beats the stored optima") {
    const Objective g = garland_objective();
    const Objective s = wrapped_sine_objective();
    for (int i = 0; i <= 1'000'000; ++i) {
        const double x = i / 1e6;
        REQUIRE(g.eval(std::vector<double>{x}) <= *g.optimum_value + 1e-12);
        REQUIRE(s.eval(std::vector<double>{x}) <= *s.optimum_value + 1e-12);
    }
}

TEST_CASE("wrapped sine endpoint values, symmetry and convention at 1/2") {
    CHECK(wrapped_sine(1.0) == Catch::Approx(-1.0).margin(1e-15));
    CHECK(wrapped_sine(0.0) == Catch::Approx(-1.0).margin(1e-15));
    CHECK(wrapped_sine(0.5) == 0.0);
    CHECK_THROWS_AS(wrapped_sine(1.5), std::out_of_range);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 10000; ++k) {
        // Pick x with an exactly representable mirror 1 - x.
        const double x = std::ldexp(std::floor(std::ldexp(u(rng), 40)), -40);
        REQUIRE(wrapped_sine(x) == wrapped_sine(1.0 - x));
    }
}

TEST_CASE("wrapped sine approaches its supremum 0 from below near 1/2") {
    // The envelope oscillates in log |x - 1/2|, so only the limit is checked.
    double prev_sup = -INFINITY;
    for (int k = 1; k <= 12; ++k) {
        const double r = std::pow(10.0, -k);
        // Grid over 0 < |x - 1/2| <= r, excluding 1/2 itself.
        double sup = -INFINITY;
        for (int i = 1; i <= 2000; ++i) {
            const double x = 0.5 + r * i / 2000.0;
            sup = std::max(sup, wrapped_sine(x));
        }
        CHECK(sup < 0.0);
        CHECK(sup >= -2.0 * std::pow(r, -std::log(0.8)));
        prev_sup = sup;
    }
    CHECK(prev_sup > -1e-2);
}

TEST_CASE("objective lookup by name") {
    CHECK(make_objective("garland").name == "garland");
    CHECK(make_objective("wrapped-sine").name == "wrapped-sine");
    CHECK_THROWS_AS(make_objective("rosenbrock"), std::invalid_argument);
    const Objective g = make_objective("garland");
    CHECK_THROWS_AS(g.value(std::vector<double>{1.2}), std::out_of_range);
}

TEST_CASE("extended-precision objectives agree with the double ones") {
    for (double x : {0.0, 0.1, 0.25, 0.5, 0.52, 0.77, 1.0}) {
        CHECK(static_cast<double>(garland(Extended(x))) == Catch::Approx(garland(x)).epsilon(1e-14).margin(1e-300));
        CHECK(static_cast<double>(wrapped_sine(Extended(x))) ==
              Catch::Approx(wrapped_sine(x)).epsilon(1e-12).margin(1e-15));
    }
    const Extended x0 = boost::math::constants::pi<Extended>() / 6;
    // sin(60 x0) is zero only up to rounding, and its square root lifts the
    // error to about half the working digits.
    CHECK(abs(garland(x0) - garland_max_value_extended()) <= Extended("1e-190"));
    CHECK(static_cast<double>(garland_max_value_extended()) == garland_max_value());
}

TEST_CASE("noiseless observation is the exact value") {
    const Objective g = garland_objective();
    NoiseModel silent(0.0);
    const std::vector<double> x{0.3};
    CHECK(observe(g, &silent, std::span<const double>(x)) == g.value(x));
    CHECK(observe(g, nullptr, std::span<const double>(x)) == g.value(x));
    CHECK_THROWS_AS(observe(g, &silent, std::span<const double>(std::vector<double>{2.0})), std::out_of_range);
}

TEST_CASE("seeded noise replays exactly") {
    for (auto dist : {NoiseDistribution::uniform, NoiseDistribution::truncated_gaussian}) {
        NoiseModel a(1.0, dist, 99), b(1.0, dist, 99), c(1.0, dist, 100);
        bool differs = false;
        for (int k = 0; k < 1000; ++k) {
            const double x = a.sample();
            REQUIRE(x == b.sample());
            differs |= x != c.sample();
        }
        CHECK(differs);
    }
}

TEST_CASE("noise is bounded and centred") {
    const Objective g = garland_objective();
    const std::vector<double> x{0.4};
    const double fx = g.value(x);
    for (auto dist : {NoiseDistribution::uniform, NoiseDistribution::truncated_gaussian}) {
        for (double b : {0.1, 1.0}) {
            NoiseModel noise(b, dist, 12345);
            const int N = 100000;
            double sum = 0.0, worst = 0.0;
            for (int k = 0; k < N; ++k) {
                const double y = observe(g, &noise, std::span<const double>(x));
                sum += y - fx;
                worst = std::max(worst, std::abs(y - fx));
            }
            INFO(to_string(dist) << " b = " << b);
            CHECK(std::abs(sum / N) <= 3.0 * b / std::sqrt(double(N)));
            CHECK(worst <= b);
        }
    }
    CHECK_THROWS_AS(NoiseModel(-1.0), std::invalid_argument);
    CHECK(parse_noise_distribution("truncated-gaussian") == NoiseDistribution::truncated_gaussian);
    CHECK_THROWS_AS(parse_noise_distribution("cauchy"), std::invalid_argument);
}

TEST_CASE("evaluator counts calls") {
    const Objective g = garland_objective();
    Evaluator ev(g);
    const std::vector<double> x{0.2};
    ev(x);
    ev(x);
    CHECK(ev.count() == 2);
}
