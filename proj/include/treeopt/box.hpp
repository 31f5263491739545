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

#include <cstddef>
#include <span>
#include <vector>

namespace treeopt {

using Point = std::vector<double>;

/// Axis-aligned box [lower, upper] in R^d.
class Box {
 public:
    /// Throws std::invalid_argument on empty or mismatched bounds, or when
    /// lower[i] >= upper[i] ("inverted bounds at dimension i").
    Box(std::vector<double> lower, std::vector<double> upper);

    static Box unit(std::size_t dim);

    std::size_t dim() const noexcept { return lower_.size(); }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }
    double width(std::size_t axis) const { return upper_[axis] - lower_[axis]; }

    Point center() const;

    /// Componentwise inclusive containment.
    bool contains(std::span<const double> x) const noexcept;

    friend bool operator==(const Box&, const Box&) = default;

 private:
    struct unchecked_tag {};
    Box(std::vector<double> lower, std::vector<double> upper, unchecked_tag) noexcept
        : lower_(std::move(lower)), upper_(std::move(upper)) {}

    std::vector<double> lower_;
    std::vector<double> upper_;

    friend Box cell_box_unchecked(std::vector<double>, std::vector<double>) noexcept;
};

// Cells deeper than the floating point resolution of the domain have
// lower == upper along some axis, so they skip the strict-order check.
Box cell_box_unchecked(std::vector<double> lower, std::vector<double> upper) noexcept;

}  // namespace treeopt
