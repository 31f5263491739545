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

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include "optimizer_common.hpp"
#include "treeopt/multiprecision.hpp"
#include "treeopt/theory.hpp"

namespace treeopt {

std::int64_t stroquool_min_budget() {
    static const std::int64_t n_min = [] {
        std::int64_t n = 1;
        while (stroquool_depth(n) < 1) ++n;
        return n;
    }();
    return n_min;
}

template <class Real>
BasicRunResult<Real> stroquool_run(const BasicObjective<Real>& objective, NoiseModel& noise,
                                   const RunConfig& config) {
    config.validate();
    using detail::NodeRef;
    const std::int64_t n = config.budget_n;
    const std::int64_t h_max = stroquool_depth(n);
    if (h_max < 1) {
        throw std::invalid_argument("budget n = " + std::to_string(n) +
                                    " leaves no depth to explore; the noisy optimizer needs n >= " +
                                    std::to_string(stroquool_min_budget()));
    }
    const int p_max = std::bit_width(static_cast<std::uint64_t>(h_max)) - 1;

    BasicPartitionTree<Real> tree(objective.domain, config.branching, config.split_axis);
    BasicEvaluator<Real> evaluator(objective, &noise);
    detail::OpeningLog<Real> log(tree, config.record_trace);
    auto better = [&](NodeRef a, NodeRef b) { return detail::better_mean(tree, a, b); };

    std::int64_t charged = h_max;
    log.open(PartitionTree::root_ref, h_max, evaluator);

    // Exploration: rank m at depth h gets floor(h_max / (h m)) evaluations.
    for (std::int64_t h = 1; h <= h_max; ++h) {
        for (std::int64_t m = 1; m <= h_max / h; ++m) {
            const std::int64_t q = h_max / (h * m);
            assert(q >= 1);
            std::optional<NodeRef> pick;
            for (NodeRef r : tree.cells_at_depth(static_cast<std::uint32_t>(h))) {
                if (tree.is_opened(r) || tree.eval_count(r) < q) continue;
                if (!pick || better(r, *pick)) pick = r;
            }
            if (!pick) continue;
            log.open(*pick, q, evaluator);
            charged += q;
        }
    }

    // Cross-validation: best cell among those with at least 2^p samples,
    // re-evaluated on fresh draws only.
    std::vector<NodeRef> candidates;
    for (int p = 0; p <= p_max; ++p) {
        const std::int64_t threshold = std::int64_t{1} << p;
        std::optional<NodeRef> pick;
        for (NodeRef r = 0; r < tree.size(); ++r) {
            if (tree.eval_count(r) < threshold) continue;
            if (!pick || better(r, *pick)) pick = r;
        }
        if (pick && std::find(candidates.begin(), candidates.end(), *pick) == candidates.end()) {
            candidates.push_back(*pick);
        }
    }

    const std::int64_t fresh = std::max<std::int64_t>(h_max / 2, 1);
    std::optional<NodeRef> best;
    Real best_mean = Real(0);
    for (NodeRef c : candidates) {
        const auto x = tree.representative(c);
        Real sum = Real(0);
        for (std::int64_t k = 0; k < fresh; ++k) sum += evaluator(x);
        charged += fresh;
        const Real mean = sum / Real(fresh);
        if (!best || mean > best_mean || (mean == best_mean && tree.id_less(c, *best))) {
            best = c;
            best_mean = mean;
        }
    }
    if (auto& trace = log.trace()) {
        for (NodeRef c : candidates) trace->candidates.push_back(tree.id_of(c));
    }
    return detail::finish(tree, *best, best_mean, evaluator, log, charged);
}

template RunResult stroquool_run(const Objective&, NoiseModel&, const RunConfig&);
template ExtendedRunResult stroquool_run(const ExtendedObjective&, NoiseModel&, const RunConfig&);
template RationalRunResult stroquool_run(const RationalObjective&, NoiseModel&, const RunConfig&);

}  // namespace treeopt
