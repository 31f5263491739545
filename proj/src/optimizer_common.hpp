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

// Shared plumbing for the optimizer implementations.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

#include "treeopt/optimizers.hpp"

namespace treeopt::detail {

using NodeRef = PartitionTree::NodeRef;

/// Opens cells and keeps the trace plus the deepest opened depth.
template <class Real>
class OpeningLog {
 public:
    OpeningLog(BasicPartitionTree<Real>& tree, bool record) : tree_(tree) {
        if (record) trace_.emplace();
    }

    void open(NodeRef ref, std::int64_t evals_per_child, BasicEvaluator<Real>& evaluator) {
        tree_.open(ref, evals_per_child, evaluator);
        deepest_ = std::max(deepest_, tree_.depth(ref));
        if (trace_) trace_->openings.push_back({tree_.id_of(ref), evals_per_child});
    }

    std::optional<RunTrace>& trace() { return trace_; }
    std::uint32_t deepest() const { return deepest_; }

 private:
    BasicPartitionTree<Real>& tree_;
    std::optional<RunTrace> trace_;
    std::uint32_t deepest_ = 0;
};

/// Higher mean first; ties go to the lower CellId.
template <class Real>
bool better_mean(const BasicPartitionTree<Real>& tree, NodeRef a, NodeRef b) {
    const Real& ma = tree.mean(a);
    const Real& mb = tree.mean(b);
    if (ma != mb) return ma > mb;
    return tree.id_less(a, b);
}

/// Best evaluated cell of the whole tree.
template <class Real>
NodeRef best_evaluated(const BasicPartitionTree<Real>& tree) {
    std::optional<NodeRef> best;
    for (NodeRef r = 0; r < tree.size(); ++r) {
        if (tree.eval_count(r) == 0) continue;
        if (!best || better_mean(tree, r, *best)) best = r;
    }
    return *best;  // the root is always opened, so children exist
}

template <class Real>
BasicRunResult<Real> finish(BasicPartitionTree<Real>& tree, NodeRef best, Real value_estimate,
                            const BasicEvaluator<Real>& evaluator, OpeningLog<Real>& log,
                            std::int64_t budget_used) {
    BasicRunResult<Real> out;
    const auto rep = tree.representative(best);
    out.recommendation.assign(rep.begin(), rep.end());
    out.recommended_cell = tree.id_of(best);
    out.recommendation_value_estimate = std::move(value_estimate);
    out.openings_used = tree.openings();
    out.evaluations_used = evaluator.count();
    out.budget_used = budget_used;
    out.deepest_depth = log.deepest();
    out.trace = std::move(log.trace());
    return out;
}

}  // namespace treeopt::detail
