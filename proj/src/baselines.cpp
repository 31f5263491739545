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

// Comparison baselines: SOO, DOO and breadth-first uniform search.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "optimizer_common.hpp"
#include "treeopt/multiprecision.hpp"

namespace treeopt {

DepthLimit sqrt_depth_limit() {
    return [](std::int64_t t) { return std::sqrt(static_cast<double>(t)); };
}

template <class Real>
BasicRunResult<Real> soo_run(const BasicObjective<Real>& objective, const RunConfig& config,
                             const DepthLimit& depth_limit) {
    config.validate();
    using detail::NodeRef;
    const DepthLimit limit = depth_limit ? depth_limit : sqrt_depth_limit();
    BasicPartitionTree<Real> tree(objective.domain, config.branching, config.split_axis);
    BasicEvaluator<Real> evaluator(objective);
    detail::OpeningLog<Real> log(tree, config.record_trace);
    log.open(PartitionTree::root_ref, 1, evaluator);

    auto best_leaf = [&](std::uint32_t h) {
        std::optional<NodeRef> pick;
        for (NodeRef r : tree.cells_at_depth(h)) {
            if (tree.is_opened(r) || tree.eval_count(r) == 0) continue;
            if (!pick || detail::better_mean(tree, r, *pick)) pick = r;
        }
        return pick;
    };

    while (tree.openings() < config.budget_n) {
        const double cap = std::floor(limit(tree.openings()));
        const auto h_stop = static_cast<std::uint32_t>(
            std::clamp(cap, 0.0, static_cast<double>(tree.max_depth())));
        std::optional<Real> v_max;
        bool opened = false;
        for (std::uint32_t h = 0; h <= h_stop && tree.openings() < config.budget_n; ++h) {
            const auto leaf = best_leaf(h);
            if (!leaf || (v_max && tree.mean(*leaf) < *v_max)) continue;
            v_max = tree.mean(*leaf);
            log.open(*leaf, 1, evaluator);
            opened = true;
        }
        if (!opened) {
            // Every depth allowed by the limit is fully opened: go one deeper.
            for (std::uint32_t h = h_stop + 1; h <= tree.max_depth(); ++h) {
                if (const auto leaf = best_leaf(h)) {
                    log.open(*leaf, 1, evaluator);
                    break;
                }
            }
        }
    }

    const NodeRef best = detail::best_evaluated(tree);
    return detail::finish(tree, best, tree.mean(best), evaluator, log, tree.openings());
}

template <class Real>
BasicRunResult<Real> doo_run(const BasicObjective<Real>& objective, const RunConfig& config, double nu,
                             double rho) {
    config.validate();
    if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("DOO needs nu > 0");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("DOO needs 0 < rho < 1");
    using detail::NodeRef;
    BasicPartitionTree<Real> tree(objective.domain, config.branching, config.split_axis);
    BasicEvaluator<Real> evaluator(objective);
    detail::OpeningLog<Real> log(tree, config.record_trace);

    // A leaf's b-value is fixed once it is evaluated, so it is computed on
    // insertion and stored next to the ref.
    using Entry = std::pair<Real, NodeRef>;
    auto cmp = [&](const Entry& a, const Entry& b) {
        if (a.first != b.first) return a.first > b.first;
        return tree.id_less(a.second, b.second);
    };
    std::set<Entry, decltype(cmp)> leaves(cmp);
    auto open = [&](NodeRef r) {
        log.open(r, 1, evaluator);
        const NodeRef first = tree.first_child(r);
        const Real width = Real(nu * std::pow(rho, static_cast<double>(tree.depth(first))));
        for (NodeRef c = first; c < first + tree.branching(); ++c) {
            leaves.emplace(tree.mean(c) + width, c);
        }
    };

    open(PartitionTree::root_ref);
    while (tree.openings() < config.budget_n) {
        const NodeRef next = leaves.begin()->second;
        leaves.erase(leaves.begin());
        open(next);
    }

    const NodeRef best = detail::best_evaluated(tree);
    return detail::finish(tree, best, tree.mean(best), evaluator, log, tree.openings());
}

template <class Real>
BasicRunResult<Real> uniform_run(const BasicObjective<Real>& objective, NoiseModel& noise,
                                 const RunConfig& config) {
    config.validate();
    using detail::NodeRef;
    BasicPartitionTree<Real> tree(objective.domain, config.branching, config.split_axis);
    BasicEvaluator<Real> evaluator(objective, &noise);
    detail::OpeningLog<Real> log(tree, config.record_trace);

    // Parents are opened in CellId order, so each depth's cells are already
    // listed in CellId order.
    std::vector<NodeRef> level{PartitionTree::root_ref};
    for (std::uint32_t h = 0; tree.openings() < config.budget_n; ++h) {
        if (h > 0) {
            const auto cells = tree.cells_at_depth(h);
            level.assign(cells.begin(), cells.end());
        }
        for (NodeRef r : level) {
            if (tree.openings() >= config.budget_n) break;
            log.open(r, 1, evaluator);
        }
    }

    const NodeRef best = detail::best_evaluated(tree);
    return detail::finish(tree, best, tree.mean(best), evaluator, log, tree.openings());
}

template RunResult soo_run(const Objective&, const RunConfig&, const DepthLimit&);
template RunResult doo_run(const Objective&, const RunConfig&, double, double);
template RunResult uniform_run(const Objective&, NoiseModel&, const RunConfig&);
template ExtendedRunResult soo_run(const ExtendedObjective&, const RunConfig&, const DepthLimit&);
template ExtendedRunResult doo_run(const ExtendedObjective&, const RunConfig&, double, double);
template ExtendedRunResult uniform_run(const ExtendedObjective&, NoiseModel&, const RunConfig&);
template RationalRunResult soo_run(const RationalObjective&, const RunConfig&, const DepthLimit&);
template RationalRunResult doo_run(const RationalObjective&, const RunConfig&, double, double);
template RationalRunResult uniform_run(const RationalObjective&, NoiseModel&, const RunConfig&);

}  // namespace treeopt
