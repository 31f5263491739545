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
#include <limits>
#include <stdexcept>
#include <vector>

#include "optimizer_common.hpp"
#include "treeopt/multiprecision.hpp"
#include "treeopt/theory.hpp"

namespace treeopt {

void RunConfig::validate() const {
    if (budget_n < 1) throw std::invalid_argument("budget must be at least 1");
    if (branching < 2) throw std::invalid_argument("branching factor must be at least 2");
}

namespace {

// K^h, saturated at the int64 maximum.
std::int64_t cells_at(unsigned K, std::int64_t h) {
    std::int64_t c = 1;
    for (std::int64_t i = 0; i < h; ++i) {
        if (c > std::numeric_limits<std::int64_t>::max() / K) return std::numeric_limits<std::int64_t>::max();
        c *= K;
    }
    return c;
}

std::int64_t planned(std::int64_t numerator, std::int64_t h, unsigned K, bool cap) {
    const std::int64_t q = numerator / h;
    return cap ? std::min(q, cells_at(K, h)) : q;
}

}  // namespace

std::vector<std::int64_t> sequool_quotas(std::int64_t n, unsigned branching, bool rescale,
                                         bool cap_by_cell_count) {
    if (n < 1) throw std::invalid_argument("budget must be at least 1");
    if (branching < 2) throw std::invalid_argument("branching factor must be at least 2");
    const std::int64_t h_max = sequool_depth(n);

    // floor(c h_max / h) = floor(floor(c h_max) / h), so scaling h_max by a
    // real c is the same as replacing it with an integer numerator T.
    std::int64_t numerator = h_max;
    if (rescale) {
        auto total = [&](std::int64_t T) {
            std::int64_t s = 1;
            for (std::int64_t h = 1; h <= h_max; ++h) {
                s += planned(T, h, branching, cap_by_cell_count);
                if (s > n) break;
            }
            return s;
        };
        std::int64_t lo = 0, hi = n * std::max<std::int64_t>(h_max, 1);
        if (total(hi) <= n) {
            lo = hi;
        } else {
            // total(lo) <= n < total(hi)
            while (hi - lo > 1) {
                const std::int64_t mid = lo + (hi - lo) / 2;
                (total(mid) <= n ? lo : hi) = mid;
            }
        }
        numerator = lo;
    }

    std::vector<std::int64_t> quotas(static_cast<std::size_t>(h_max) + 1);
    quotas[0] = 1;
    for (std::int64_t h = 1; h <= h_max; ++h) {
        quotas[static_cast<std::size_t>(h)] = planned(numerator, h, branching, cap_by_cell_count);
    }
    return quotas;
}

template <class Real>
BasicRunResult<Real> sequool_run(const BasicObjective<Real>& objective, const RunConfig& config) {
    config.validate();
    using detail::NodeRef;
    const auto quotas = sequool_quotas(config.budget_n, config.branching, config.rescale_quotas,
                                       config.cap_quotas_by_cell_count);

    BasicPartitionTree<Real> tree(objective.domain, config.branching, config.split_axis);
    BasicEvaluator<Real> evaluator(objective);
    detail::OpeningLog<Real> log(tree, config.record_trace);
    log.open(PartitionTree::root_ref, 1, evaluator);

    auto better = [&](NodeRef a, NodeRef b) { return detail::better_mean(tree, a, b); };
    std::vector<NodeRef> candidates;
    for (std::size_t h = 1; h < quotas.size(); ++h) {
        candidates.clear();
        for (NodeRef r : tree.cells_at_depth(static_cast<std::uint32_t>(h))) {
            if (!tree.is_opened(r)) candidates.push_back(r);
        }
        const auto q = std::min<std::size_t>(static_cast<std::size_t>(quotas[h]), candidates.size());
        if (q == 0) break;
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(q),
                          candidates.end(), better);
        for (std::size_t k = 0; k < q; ++k) log.open(candidates[k], 1, evaluator);
    }

    const NodeRef best = detail::best_evaluated(tree);
    return detail::finish(tree, best, tree.mean(best), evaluator, log, tree.openings());
}

template RunResult sequool_run(const Objective&, const RunConfig&);
template ExtendedRunResult sequool_run(const ExtendedObjective&, const RunConfig&);
template RationalRunResult sequool_run(const RationalObjective&, const RunConfig&);

}  // namespace treeopt
