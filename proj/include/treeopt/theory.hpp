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
#include <optional>
#include <string_view>

#include "treeopt/objectives.hpp"
#include "treeopt/partition.hpp"

namespace treeopt {

/// H(n) = sum_{t=1}^n 1/t. Throws std::invalid_argument for n < 1.
double harmonic(std::int64_t n);

/// Principal branch of the Lambert W function on [0, inf): the w >= 0 with
/// w e^w = x. Throws std::domain_error for negative or NaN input.
double lambert_w(double x);

/// Local smoothness (nu, rho), near-optimal cell constant C and
/// near-optimality dimension d.
struct SmoothnessParams {
    double nu = 1.0;
    double rho = 0.5;
    double C = 1.0;
    double d = 0.0;

    /// Throws std::invalid_argument unless nu > 0, 0 < rho < 1, C >= 1, d >= 0.
    void validate() const;
};

struct BoundInputs {
    std::int64_t n = 1;
    double b = 0.0;
    double delta = 0.05;

    void validate() const;
};

/// floor(n / H(n)): the deepest depth explored by the deterministic optimizer.
std::int64_t sequool_depth(std::int64_t n);

/// floor(n / (2 (H(n) + 1)^2)): the noisy optimizer's depth.
std::int64_t stroquool_depth(std::int64_t n);

/// floor((n/2) / (log2(n) + 1)^2), the depth that appears in the noisy
/// regret bounds.
std::int64_t stroquool_bound_depth(std::int64_t n);

struct SequoolBound {
    double bound = 0.0;
    /// nu (n~ / log n~)^(-1/d), present only when d > 0 and n~ > e.
    std::optional<double> readable;
    double n_tilde = 0.0;
};

/// Simple-regret bound for the deterministic optimizer after n openings.
SequoolBound sequool_bound(std::int64_t n, const SmoothnessParams& params);

enum class NoiseRegime { high, low };
std::string_view to_string(NoiseRegime r) noexcept;

struct StroquoolBounds {
    NoiseRegime regime = NoiseRegime::low;
    double bound = 0.0;
    /// Root of h_max nu^2 rho^{2h} / (4 h b^2 L) = C rho^{-d h}, with
    /// L = log(2 n^2 / delta). Infinite when b == 0.
    double h_tilde = 0.0;
    /// The same depth through the closed form W(.)/((d+2) log(1/rho)).
    double h_tilde_lambert = 0.0;
    /// log(n_bar / log n_bar) / ((d+2) log(1/rho)), without the o(1) term;
    /// NaN when n_bar <= e.
    double h_tilde_asymptotic = 0.0;
    double n_bar = 0.0;
    double n_tilde = 0.0;
    std::int64_t depth = 0;
    /// Readable form of whichever bound applies, when its argument
    /// exceeds e.
    std::optional<double> readable;
};

/// High-probability simple-regret bound for the noisy optimizer.
StroquoolBounds stroquool_bounds(const BoundInputs& inputs, const SmoothnessParams& params);

/// b sqrt(log(2 n^2 / delta) / (2 evals)); evals must be a power of two.
double confidence_radius(double b, std::int64_t n, double delta, std::int64_t evals);

struct PartitionSpec {
    unsigned branching = 3;
    SplitAxisRule split_axis = cycle_axes();
};

/// Counts depth-h cells whose supremum is within epsilon of f(x*). The
/// supremum of each cell is estimated on a grid of `grid_per_dim` points per
/// axis (endpoints included), so it is a lower bound and the count can only
/// undercount. f(x*) is the objective's optimum_value when present and the
/// best grid value otherwise. Throws std::invalid_argument when K^h > 1e6.
std::int64_t count_near_optimal(const Objective& objective, const PartitionSpec& partition,
                                std::uint32_t depth, double epsilon,
                                std::size_t grid_per_dim = 100);

}  // namespace treeopt
