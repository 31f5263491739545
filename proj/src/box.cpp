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

#include "treeopt/box.hpp"

#include <stdexcept>
#include <string>

namespace treeopt {

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) throw std::invalid_argument("box must have at least one dimension");
    if (lower_.size() != upper_.size()) {
        throw std::invalid_argument("box bounds have different lengths (" +
                                    std::to_string(lower_.size()) + " vs " +
                                    std::to_string(upper_.size()) + ")");
    }
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!(lower_[i] < upper_[i])) {
            throw std::invalid_argument("inverted bounds at dimension " + std::to_string(i));
        }
    }
}

Box Box::unit(std::size_t dim) {
    return Box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

Point Box::center() const {
    Point c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = lower_[i] + 0.5 * (upper_[i] - lower_[i]);
    return c;
}

bool Box::contains(std::span<const double> x) const noexcept {
    if (x.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
    }
    return true;
}

Box cell_box_unchecked(std::vector<double> lower, std::vector<double> upper) noexcept {
    return Box(std::move(lower), std::move(upper), Box::unchecked_tag{});
}

}  // namespace treeopt
