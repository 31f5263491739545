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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeopt/box.hpp"

namespace treeopt {

/// A bounded real function on a box, with an optional known supremum used
/// for regret scoring. `Real` is the arithmetic used for points and values;
/// the domain itself is always given in doubles.
template <class Real>
struct BasicObjective {
    std::string name;
    Box domain;
    std::function<Real(std::span<const Real>)> eval;
    std::optional<Real> optimum_value;
    std::optional<std::vector<Real>> optimum_point;

    /// Noiseless value. Throws std::out_of_range outside the domain.
    Real value(std::span<const Real> x) const {
        if (x.size() != domain.dim()) throw std::out_of_range("point has the wrong dimension for " + name);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!(x[i] >= domain.lower()[i] && x[i] <= domain.upper()[i])) {
                throw std::out_of_range("point outside the domain of " + name);
            }
        }
        return eval(x);
    }
};

using Objective = BasicObjective<double>;

/// G(x) = 4x(1-x)(3/4 + 1/4 (1 - sqrt|sin(60x)|)) on [0, 1].
double garland(double x);

/// Wrapped sine on [0, 1]; exponents use natural logs. S(1/2) = 0, which
/// is the supremum (the limit as x -> 1/2).
double wrapped_sine(double x);

/// Supremum of garland(), 4 x0 (1 - x0) at the cusp x0 = pi/6, rounded to
/// double. Evaluating garland at doubles near x0 loses about 1e-8 to the
/// rounding of sin(60x), which bounds the regret any double-precision run
/// can reach.
double garland_max_value();
/// The double nearest to pi/6.
double garland_argmax();

Objective garland_objective();
Objective wrapped_sine_objective();

/// Looks up a benchmark by name ("garland", "wrapped-sine").
/// Throws std::invalid_argument for unknown names.
Objective make_objective(std::string_view name);

enum class NoiseDistribution { uniform, truncated_gaussian };

std::string_view to_string(NoiseDistribution d) noexcept;
NoiseDistribution parse_noise_distribution(std::string_view name);

/// Additive bounded noise: every draw satisfies |eps| <= range. The
/// truncated gaussian has sigma = range / 2 and rejects draws outside
/// [-range, range]. Each instance owns its own RNG stream.
class NoiseModel {
 public:
    explicit NoiseModel(double range = 0.0,
                        NoiseDistribution distribution = NoiseDistribution::uniform,
                        std::uint64_t seed = 0);

    double range() const noexcept { return range_; }
    NoiseDistribution distribution() const noexcept { return distribution_; }
    std::uint64_t seed() const noexcept { return seed_; }

    double sample();

 private:
    double range_;
    NoiseDistribution distribution_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> uniform_;
    std::normal_distribution<double> normal_;
};

/// y = f(x) + eps. A null noise model (or range 0) returns f(x) exactly.
template <class Real>
Real observe(const BasicObjective<Real>& objective, NoiseModel* noise, std::span<const Real> x) {
    Real f = objective.value(x);
    if (noise == nullptr || noise->range() == 0.0) return f;
    return f + Real(noise->sample());
}

/// Objective + noise handle handed to the partition tree; counts point
/// evaluations.
template <class Real>
class BasicEvaluator {
 public:
    explicit BasicEvaluator(const BasicObjective<Real>& objective, NoiseModel* noise = nullptr)
        : objective_(&objective), noise_(noise) {}

    Real operator()(std::span<const Real> x) {
        ++count_;
        return observe(*objective_, noise_, x);
    }

    const BasicObjective<Real>& objective() const noexcept { return *objective_; }
    std::int64_t count() const noexcept { return count_; }

 private:
    const BasicObjective<Real>* objective_;
    NoiseModel* noise_;
    std::int64_t count_ = 0;
};

using Evaluator = BasicEvaluator<double>;

}  // namespace treeopt
