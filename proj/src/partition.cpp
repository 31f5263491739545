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

#include "treeopt/partition.hpp"

#include "treeopt/multiprecision.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace treeopt {

namespace {

// Bounds of slab j out of K along [lo, hi]. Adjacent slabs share the exact
// same double at their common edge and the last slab ends exactly at hi.
template <class Real>
void slab(const Real& lo, const Real& hi, unsigned K, std::uint32_t j, Real& out_lo, Real& out_hi) {
    const Real w = hi - lo;
    out_lo = (j == 0) ? lo : Real(lo + w * j / K);
    out_hi = (j + 1 == K) ? hi : Real(lo + w * (j + 1) / K);
}

template <class Real>
double to_double(const Real& x) {
    return static_cast<double>(x);
}

}  // namespace

CellId CellId::from_index(std::uint32_t depth, std::uint64_t index, unsigned branching) {
    CellId id;
    id.depth = depth;
    id.digits.assign(depth, 0);
    for (std::uint32_t k = depth; k-- > 0;) {
        id.digits[k] = static_cast<std::uint32_t>(index % branching);
        index /= branching;
    }
    if (index != 0) {
        throw std::invalid_argument("cell index out of range for depth " + std::to_string(depth));
    }
    return id;
}

std::optional<std::uint64_t> CellId::index(unsigned branching) const {
    std::uint64_t i = 0;
    for (std::uint32_t d : digits) {
        if (i > (std::numeric_limits<std::uint64_t>::max() - d) / branching) return std::nullopt;
        i = i * branching + d;
    }
    return i;
}

CellId CellId::child(std::uint32_t j) const {
    CellId c{depth + 1, digits};
    c.digits.push_back(j);
    return c;
}

CellId CellId::parent() const {
    if (depth == 0) throw std::logic_error("root cell has no parent");
    CellId p{depth - 1, digits};
    p.digits.pop_back();
    return p;
}

std::string CellId::to_string() const {
    std::ostringstream os;
    os << '(' << depth << ", [";
    for (std::size_t k = 0; k < digits.size(); ++k) os << (k ? " " : "") << digits[k];
    os << "])";
    return os.str();
}

SplitAxisRule cycle_axes() {
    return [](std::uint32_t depth, std::size_t dim) { return static_cast<std::size_t>(depth % dim); };
}

Box cell_box(const Box& domain, unsigned branching, const CellId& id, const SplitAxisRule& rule) {
    std::vector<double> lo = domain.lower();
    std::vector<double> hi = domain.upper();
    for (std::uint32_t h = 0; h < id.depth; ++h) {
        if (id.digits[h] >= branching) throw std::invalid_argument("digit out of range in " + id.to_string());
        const std::size_t axis = rule(h, domain.dim());
        double a, b;
        slab(lo[axis], hi[axis], branching, id.digits[h], a, b);
        lo[axis] = a;
        hi[axis] = b;
    }
    return cell_box_unchecked(std::move(lo), std::move(hi));
}

CellId locate(const Box& domain, unsigned branching, std::span<const double> x, std::uint32_t depth,
              const SplitAxisRule& rule) {
    if (!domain.contains(x)) throw std::out_of_range("point outside the domain");
    std::vector<double> lo = domain.lower();
    std::vector<double> hi = domain.upper();
    CellId id;
    for (std::uint32_t h = 0; h < depth; ++h) {
        const std::size_t axis = rule(h, domain.dim());
        std::uint32_t j = 0;
        double a = lo[axis], b = hi[axis];
        for (; j < branching; ++j) {
            slab(lo[axis], hi[axis], branching, j, a, b);
            if (x[axis] < b || j + 1 == branching) break;
        }
        lo[axis] = a;
        hi[axis] = b;
        id = id.child(j);
    }
    return id;
}

template <class Real>
BasicPartitionTree<Real>::BasicPartitionTree(Box domain, unsigned branching, SplitAxisRule rule)
    : domain_(std::move(domain)), branching_(branching), rule_(std::move(rule)) {
    if (branching_ < 2) throw std::invalid_argument("branching factor must be at least 2");
    if (!rule_) rule_ = cycle_axes();
    nodes_.emplace_back();
    const Point c = domain_.center();
    for (const auto* v : {&domain_.lower(), &domain_.upper(), &c}) {
        for (double x : *v) coords_.emplace_back(x);
    }
    by_depth_.push_back({root_ref});
}

template <class Real>
void BasicPartitionTree<Real>::materialize_children(NodeRef ref) {
    if (nodes_[ref].first_child != npos) return;
    if (nodes_.size() + branching_ > npos) throw std::length_error("partition tree is full");
    const std::size_t d = dim();
    const std::uint32_t h = nodes_[ref].depth;
    const std::size_t axis = rule_(h, d);
    if (axis >= d) throw std::logic_error("split rule returned an invalid axis");
    const auto first = static_cast<NodeRef>(nodes_.size());
    nodes_[ref].first_child = first;
    if (by_depth_.size() <= h + 1) by_depth_.emplace_back();
    coords_.reserve(coords_.size() + branching_ * 3 * d);
    for (std::uint32_t j = 0; j < branching_; ++j) {
        Node n;
        n.parent = ref;
        n.depth = h + 1;
        n.digit = j;
        nodes_.push_back(n);
        // Copy the parent's bounds first: coords_ may reallocate below.
        const std::size_t pbase = static_cast<std::size_t>(ref) * 3 * d;
        const std::size_t base = coords_.size();
        coords_.resize(base + 3 * d);
        for (std::size_t k = 0; k < d; ++k) {
            coords_[base + k] = coords_[pbase + k];
            coords_[base + d + k] = coords_[pbase + d + k];
        }
        Real a, b;
        slab(coords_[pbase + axis], coords_[pbase + d + axis], branching_, j, a, b);
        coords_[base + axis] = a;
        coords_[base + d + axis] = b;
        for (std::size_t k = 0; k < d; ++k) {
            const Real& lo = coords_[base + k];
            const Real& hi = coords_[base + d + k];
            coords_[base + 2 * d + k] = lo + (hi - lo) / 2;
        }
        by_depth_[h + 1].push_back(first + j);
    }
}

template <class Real>
typename BasicPartitionTree<Real>::NodeRef BasicPartitionTree<Real>::first_child(NodeRef ref) {
    materialize_children(ref);
    return nodes_[ref].first_child;
}

template <class Real>
void BasicPartitionTree<Real>::open(NodeRef ref, std::int64_t evals_per_child, Evaluator& evaluator) {
    if (evals_per_child < 1) throw std::invalid_argument("evals_per_child must be at least 1");
    if (nodes_[ref].opened) throw std::logic_error("cell already opened: " + id_of(ref).to_string());
    const NodeRef first = first_child(ref);
    for (NodeRef c = first; c < first + branching_; ++c) {
        const std::span<const Real> x = representative(c);
        Real sum = Real(0);
        for (std::int64_t k = 0; k < evals_per_child; ++k) sum += evaluator(x);
        record(c, evals_per_child, sum);
    }
    nodes_[ref].opened = true;
    ++openings_;
}

template <class Real>
Real BasicPartitionTree<Real>::add_evaluations(NodeRef ref, std::int64_t count, Evaluator& evaluator) {
    if (count < 1) throw std::invalid_argument("evaluation count must be at least 1");
    const std::span<const Real> x = representative(ref);
    Real sum = Real(0);
    for (std::int64_t k = 0; k < count; ++k) sum += evaluator(x);
    record(ref, count, sum);
    return mean(ref);
}

template <class Real>
void BasicPartitionTree<Real>::record(NodeRef ref, std::int64_t count, const Real& sum) {
    Node& n = nodes_[ref];
    n.eval_count += count;
    n.reward_sum += sum;
    n.mean = n.eval_count == 1 ? n.reward_sum : Real(n.reward_sum / Real(n.eval_count));
}

template <class Real>
std::span<const typename BasicPartitionTree<Real>::NodeRef> BasicPartitionTree<Real>::cells_at_depth(std::uint32_t depth) const {
    if (depth >= by_depth_.size()) return {};
    return by_depth_[depth];
}

template <class Real>
bool BasicPartitionTree<Real>::id_less(NodeRef a, NodeRef b) const {
    if (a == b) return false;
    if (nodes_[a].depth != nodes_[b].depth) return nodes_[a].depth < nodes_[b].depth;
    // Same depth: climb to the common ancestor, then compare the digits
    // directly below it.
    while (nodes_[a].parent != nodes_[b].parent) {
        a = nodes_[a].parent;
        b = nodes_[b].parent;
    }
    return nodes_[a].digit < nodes_[b].digit;
}

template <class Real>
std::optional<typename BasicPartitionTree<Real>::NodeRef> BasicPartitionTree<Real>::find(const CellId& id) const {
    if (id.digits.size() != id.depth) return std::nullopt;
    NodeRef r = root_ref;
    for (std::uint32_t d : id.digits) {
        if (d >= branching_ || nodes_[r].first_child == npos) return std::nullopt;
        r = nodes_[r].first_child + d;
    }
    return r;
}

template <class Real>
CellId BasicPartitionTree<Real>::id_of(NodeRef ref) const {
    CellId id;
    id.depth = nodes_[ref].depth;
    id.digits.resize(id.depth);
    for (std::uint32_t k = id.depth; k-- > 0;) {
        id.digits[k] = nodes_[ref].digit;
        ref = nodes_[ref].parent;
    }
    return id;
}

template <class Real>
typename BasicPartitionTree<Real>::NodeRef BasicPartitionTree<Real>::require(const CellId& id) const {
    auto r = find(id);
    if (!r) throw std::out_of_range("unknown cell " + id.to_string());
    return *r;
}

template <class Real>
Cell BasicPartitionTree<Real>::snapshot(NodeRef ref) const {
    auto doubles = [](std::span<const Real> v) {
        std::vector<double> out;
        out.reserve(v.size());
        for (const Real& x : v) out.push_back(to_double(x));
        return out;
    };
    return Cell{id_of(ref),
                cell_box_unchecked(doubles(lower(ref)), doubles(upper(ref))),
                doubles(representative(ref)),
                nodes_[ref].eval_count,
                to_double(nodes_[ref].reward_sum),
                nodes_[ref].opened};
}

template <class Real>
Cell BasicPartitionTree<Real>::cell(const CellId& id) const { return snapshot(require(id)); }

template <class Real>
std::vector<Cell> BasicPartitionTree<Real>::children_of(const CellId& id) {
    const NodeRef first = first_child(require(id));
    std::vector<Cell> out;
    out.reserve(branching_);
    for (NodeRef c = first; c < first + branching_; ++c) out.push_back(snapshot(c));
    return out;
}

template <class Real>
std::vector<ChildEstimate> BasicPartitionTree<Real>::open_cell(const CellId& id, std::int64_t evals_per_child,
                                                    Evaluator& evaluator) {
    const NodeRef ref = require(id);
    open(ref, evals_per_child, evaluator);
    std::vector<ChildEstimate> out;
    out.reserve(branching_);
    const NodeRef first = nodes_[ref].first_child;
    for (NodeRef c = first; c < first + branching_; ++c) out.push_back({id_of(c), to_double(mean(c))});
    return out;
}

template <class Real>
Real BasicPartitionTree<Real>::add_evaluations(const CellId& id, std::int64_t count, Evaluator& evaluator) {
    return add_evaluations(require(id), count, evaluator);
}

template class BasicPartitionTree<double>;
template class BasicPartitionTree<Extended>;
template class BasicPartitionTree<Rational>;

}  // namespace treeopt
