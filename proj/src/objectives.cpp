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

#include "treeopt/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace treeopt {

double garland(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::out_of_range("garland is defined on [0, 1]");
    return 4.0 * x * (1.0 - x) * (0.75 + 0.25 * (1.0 - std::sqrt(std::abs(std::sin(60.0 * x)))));
}

double wrapped_sine(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::out_of_range("wrapped-sine is defined on [0, 1]");
    const double u = 2.0 * std::abs(x - 0.5);
    if (u == 0.0) return 0.0;
    static const double a = -std::log(0.8);
    static const double c = -std::log(0.3);
    const double ua = std::pow(u, a);
    return 0.5 * (std::sin(std::numbers::pi * std::log2(u)) + 1.0) * (ua - std::pow(u, c)) - ua;
}

double garland_max_value() {
    constexpr long double x0 = std::numbers::pi_v<long double> / 6.0L;
    static const double value = static_cast<double>(4.0L * x0 * (1.0L - x0));
    return value;
}

double garland_argmax() { return std::numbers::pi / 6.0; }

Objective garland_objective() {
    return Objective{"garland", Box::unit(1),
                     [](std::span<const double> x) { return garland(x[0]); },
                     garland_max_value(), Point{garland_argmax()}};
}

Objective wrapped_sine_objective() {
    return Objective{"wrapped-sine", Box::unit(1),
                     [](std::span<const double> x) { return wrapped_sine(x[0]); }, 0.0,
                     Point{0.5}};
}

Objective make_objective(std::string_view name) {
    if (name == "garland") return garland_objective();
    if (name == "wrapped-sine" || name == "wrapped_sine") return wrapped_sine_objective();
    throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

std::string_view to_string(NoiseDistribution d) noexcept {
    switch (d) {
        case NoiseDistribution::uniform: return "uniform";
        case NoiseDistribution::truncated_gaussian: return "truncated-gaussian";
    }
    return "uniform";
}

NoiseDistribution parse_noise_distribution(std::string_view name) {
    if (name == "uniform") return NoiseDistribution::uniform;
    if (name == "truncated-gaussian" || name == "gaussian") return NoiseDistribution::truncated_gaussian;
    throw std::invalid_argument("unknown noise distribution '" + std::string(name) + "'");
}

NoiseModel::NoiseModel(double range, NoiseDistribution distribution, std::uint64_t seed)
    : range_(range),
      distribution_(distribution),
      seed_(seed),
      rng_(seed),
      uniform_(-range, range),
      normal_(0.0, 1.0) {
    if (!(range >= 0.0) || !std::isfinite(range)) {
        throw std::invalid_argument("noise range must be finite and non-negative");
    }
}

double NoiseModel::sample() {
    if (range_ == 0.0) return 0.0;
    if (distribution_ == NoiseDistribution::uniform) return uniform_(rng_);
    for (;;) {
        const double e = 0.5 * range_ * normal_(rng_);
        if (std::abs(e) <= range_) return e;
    }
}

}  // namespace treeopt
