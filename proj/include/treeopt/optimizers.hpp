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
#include <vector>

#include "treeopt/objectives.hpp"
#include "treeopt/partition.hpp"

namespace treeopt {

struct RunConfig {
    /// Budget n, counted in openings. The noisy optimizer charges an opening
    /// with m evaluations per child as m units.
    std::int64_t budget_n = 1;
    std::uint64_t seed = 0;
    unsigned branching = 3;
    SplitAxisRule split_axis = cycle_axes();
    /// Deterministic optimizer only: scale the depth quotas up so that
    /// 1 + sum of quotas is as close to n as possible without exceeding it.
    bool rescale_quotas = false;
    /// Deterministic optimizer only: never plan more openings at depth h
    /// than the K^h cells that exist there.
    bool cap_quotas_by_cell_count = false;
    bool record_trace = false;

    /// Throws std::invalid_argument when budget_n < 1 or branching < 2.
    void validate() const;
};

struct OpeningEvent {
    CellId cell;
    std::int64_t evals_per_child = 1;

    friend bool operator==(const OpeningEvent&, const OpeningEvent&) = default;
};

struct RunTrace {
    std::vector<OpeningEvent> openings;
    /// Noisy optimizer: the distinct cross-validation candidates, in the
    /// order they were selected.
    std::vector<CellId> candidates;
};

template <class Real>
struct BasicRunResult {
    std::vector<Real> recommendation;
    CellId recommended_cell;
    /// f at the recommendation for deterministic runs; the held-out mean
    /// for the noisy optimizer; the sample mean for the uniform strategy.
    Real recommendation_value_estimate = Real(0);
    std::int64_t openings_used = 0;
    /// Point evaluations, K per opening per evaluation plus validation draws.
    std::int64_t evaluations_used = 0;
    /// Budget units charged against n.
    std::int64_t budget_used = 0;
    /// Deepest depth of an opened cell.
    std::uint32_t deepest_depth = 0;
    std::optional<RunTrace> trace;
};

using RunResult = BasicRunResult<double>;

/// Openings planned per depth by the deterministic optimizer; entry h is
/// the quota at depth h (entry 0 is the root). The vector has
/// floor(n / H(n)) + 1 entries.
std::vector<std::int64_t> sequool_quotas(std::int64_t n, unsigned branching, bool rescale,
                                         bool cap_by_cell_count);

/// Sequential Zipf-allocated exploration for deterministic feedback: opens
/// floor(h_max/h) of the best depth-h cells for h = 1..h_max, then
/// recommends the best evaluated representative.
template <class Real>
BasicRunResult<Real> sequool_run(const BasicObjective<Real>& objective, const RunConfig& config);

/// Smallest n with floor(n / (2 (H(n) + 1)^2)) >= 1.
std::int64_t stroquool_min_budget();

/// Noise-adaptive variant: at depth h and rank m it opens, with
/// floor(h_max/(h m)) evaluations per child, the best unopened cell that
/// already has at least that many evaluations; then it picks one candidate
/// per evaluation threshold 2^p and keeps the one with the best held-out
/// mean. Throws std::invalid_argument when n < stroquool_min_budget().
template <class Real>
BasicRunResult<Real> stroquool_run(const BasicObjective<Real>& objective, NoiseModel& noise,
                                   const RunConfig& config);

/// Maximum depth explored by SOO after t openings.
using DepthLimit = std::function<double(std::int64_t t)>;
DepthLimit sqrt_depth_limit();

/// Simultaneous optimistic optimization: sweeps depths 0..limit(t), opening
/// the best leaf of each depth if it is at least as good as every leaf
/// opened earlier in the sweep.
template <class Real>
BasicRunResult<Real> soo_run(const BasicObjective<Real>& objective, const RunConfig& config,
                             const DepthLimit& depth_limit = sqrt_depth_limit());

/// Deterministic optimistic optimization with known smoothness: always opens
/// the leaf maximizing f + nu rho^h. Throws std::invalid_argument unless
/// nu > 0 and 0 < rho < 1.
template <class Real>
BasicRunResult<Real> doo_run(const BasicObjective<Real>& objective, const RunConfig& config, double nu,
                             double rho);

/// Breadth-first opening in CellId order until the budget runs out; one
/// evaluation per child.
template <class Real>
BasicRunResult<Real> uniform_run(const BasicObjective<Real>& objective, NoiseModel& noise,
                                 const RunConfig& config);

// Defined for double here and for Extended in treeopt/multiprecision.hpp.
extern template RunResult sequool_run(const Objective&, const RunConfig&);
extern template RunResult stroquool_run(const Objective&, NoiseModel&, const RunConfig&);
extern template RunResult soo_run(const Objective&, const RunConfig&, const DepthLimit&);
extern template RunResult doo_run(const Objective&, const RunConfig&, double, double);
extern template RunResult uniform_run(const Objective&, NoiseModel&, const RunConfig&);

}  // namespace treeopt
