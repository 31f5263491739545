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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeopt/box.hpp"
#include "treeopt/objectives.hpp"

namespace treeopt {

/// Position (h, i) of a cell in the hierarchical partition.
///
/// The index i is stored as its base-K digits (most significant first), one
/// digit per split, so ids stay exact at depths where K^h overflows any
/// machine integer. Ordering is depth-major, then by index.
struct CellId {
    std::uint32_t depth = 0;
    std::vector<std::uint32_t> digits;

    static CellId root() { return {}; }
    /// Throws std::invalid_argument if index >= K^depth.
    static CellId from_index(std::uint32_t depth, std::uint64_t index, unsigned branching);

    /// The integer index, or nullopt if it does not fit in 64 bits.
    std::optional<std::uint64_t> index(unsigned branching) const;

    CellId child(std::uint32_t j) const;
    CellId parent() const;

    std::string to_string() const;

    friend bool operator==(const CellId&, const CellId&) = default;
    friend std::strong_ordering operator<=>(const CellId& a, const CellId& b) {
        if (auto c = a.depth <=> b.depth; c != 0) return c;
        return a.digits <=> b.digits;
    }
};

/// Snapshot of one materialized cell.
struct Cell {
    CellId id;
    Box box;
    Point representative;
    std::int64_t eval_count = 0;
    double reward_sum = 0.0;
    bool opened = false;

    /// Empirical mean; only defined when eval_count > 0.
    std::optional<double> mean() const {
        if (eval_count == 0) return std::nullopt;
        return reward_sum / static_cast<double>(eval_count);
    }
};

struct ChildEstimate {
    CellId id;
    double mean;
};

/// Chooses the split axis for cells at a given depth.
using SplitAxisRule = std::function<std::size_t(std::uint32_t depth, std::size_t dim)>;

/// axis = depth mod dim
SplitAxisRule cycle_axes();

/// Box of cell `id` under K-ary equal-slab splitting of `domain`, computed
/// without building a tree.
Box cell_box(const Box& domain, unsigned branching, const CellId& id,
             const SplitAxisRule& rule = cycle_axes());

/// Depth-`depth` cell containing x. Slabs are closed on the left and open on
/// the right, except the last slab of each split which is closed.
CellId locate(const Box& domain, unsigned branching, std::span<const double> x,
              std::uint32_t depth, const SplitAxisRule& rule = cycle_axes());

/// The explored part of a K-ary partition of a box, with evaluation
/// statistics and the count of openings.
///
/// Nodes live in an arena and are addressed by `NodeRef` in the hot paths;
/// the CellId API below is a thin layer on top. Coordinates and reward sums
/// use `Real`; the Cell snapshots are always in doubles. Instantiated for
/// double and Extended.
template <class Real>
class BasicPartitionTree {
 public:
    using NodeRef = std::uint32_t;
    static constexpr NodeRef root_ref = 0;

    /// Throws std::invalid_argument when branching < 2.
    using Evaluator = BasicEvaluator<Real>;

    BasicPartitionTree(Box domain, unsigned branching, SplitAxisRule rule = cycle_axes());

    const Box& domain() const noexcept { return domain_; }
    unsigned branching() const noexcept { return branching_; }
    std::size_t dim() const noexcept { return domain_.dim(); }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::int64_t openings() const noexcept { return openings_; }

    // -- id-based interface ------------------------------------------------

    bool contains(const CellId& id) const { return find(id).has_value(); }
    /// Throws std::out_of_range for unknown ids.
    Cell cell(const CellId& id) const;

    /// Materializes the K children if needed. Throws std::out_of_range for
    /// unknown ids.
    std::vector<Cell> children_of(const CellId& id);

    /// Evaluates every child representative `evals_per_child` times and marks
    /// the cell opened. Throws std::logic_error if already opened,
    /// std::invalid_argument if evals_per_child < 1.
    std::vector<ChildEstimate> open_cell(const CellId& id, std::int64_t evals_per_child,
                                         Evaluator& evaluator);

    /// Adds `count` observations to a cell without opening anything.
    /// Returns the updated mean.
    Real add_evaluations(const CellId& id, std::int64_t count, Evaluator& evaluator);

    // -- arena interface ---------------------------------------------------

    std::optional<NodeRef> find(const CellId& id) const;
    CellId id_of(NodeRef ref) const;

    /// Materializes the children; they occupy refs [first, first + K) in
    /// index order.
    NodeRef first_child(NodeRef ref);
    void open(NodeRef ref, std::int64_t evals_per_child, Evaluator& evaluator);
    Real add_evaluations(NodeRef ref, std::int64_t count, Evaluator& evaluator);

    /// Cells materialized at `depth`, in CellId order when parents were
    /// opened in CellId order (true for breadth-first use), otherwise in
    /// materialization order.
    std::span<const NodeRef> cells_at_depth(std::uint32_t depth) const;
    std::uint32_t max_depth() const noexcept {
        return static_cast<std::uint32_t>(by_depth_.size() - 1);
    }

    std::uint32_t depth(NodeRef r) const { return nodes_[r].depth; }
    std::int64_t eval_count(NodeRef r) const { return nodes_[r].eval_count; }
    const Real& reward_sum(NodeRef r) const { return nodes_[r].reward_sum; }
    /// Cached reward_sum / eval_count; zero before the first evaluation.
    const Real& mean(NodeRef r) const { return nodes_[r].mean; }
    bool is_opened(NodeRef r) const { return nodes_[r].opened; }
    bool has_children(NodeRef r) const { return nodes_[r].first_child != npos; }
    std::span<const Real> representative(NodeRef r) const {
        return {coords_.data() + (r * 3 + 2) * dim(), dim()};
    }
    std::span<const Real> lower(NodeRef r) const {
        return {coords_.data() + (r * 3) * dim(), dim()};
    }
    std::span<const Real> upper(NodeRef r) const {
        return {coords_.data() + (r * 3 + 1) * dim(), dim()};
    }

    /// CellId order (depth, then index) without building the ids.
    bool id_less(NodeRef a, NodeRef b) const;

 private:
    static constexpr std::uint32_t npos = 0xffffffffu;

    struct Node {
        std::uint32_t parent = npos;
        std::uint32_t first_child = npos;
        std::uint32_t depth = 0;
        std::uint32_t digit = 0;
        std::int64_t eval_count = 0;
        Real reward_sum = Real(0);
        Real mean = Real(0);
        bool opened = false;
    };

    NodeRef require(const CellId& id) const;
    Cell snapshot(NodeRef ref) const;
    void materialize_children(NodeRef ref);
    void record(NodeRef ref, std::int64_t count, const Real& sum);

    Box domain_;
    unsigned branching_;
    SplitAxisRule rule_;
    std::vector<Node> nodes_;
    std::vector<Real> coords_;  // per node: lower, upper, representative
    std::vector<std::vector<NodeRef>> by_depth_;
    std::int64_t openings_ = 0;
};

using PartitionTree = BasicPartitionTree<double>;

extern template class BasicPartitionTree<double>;

}  // namespace treeopt
