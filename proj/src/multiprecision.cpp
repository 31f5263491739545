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

#include "treeopt/multiprecision.hpp"

#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>

namespace treeopt {

namespace {

const Extended& pi() {
    static const Extended value = boost::math::constants::pi<Extended>();
    return value;
}

}  // namespace

Extended garland(const Extended& x) {
    if (!(x >= 0 && x <= 1)) throw std::out_of_range("garland is defined on [0, 1]");
    const Extended s = sqrt(abs(sin(60 * x)));
    return 4 * x * (1 - x) * (Extended(3) / 4 + (1 - s) / 4);
}

Extended wrapped_sine(const Extended& x) {
    if (!(x >= 0 && x <= 1)) throw std::out_of_range("wrapped-sine is defined on [0, 1]");
    const Extended u = 2 * abs(x - Extended(1) / 2);
    if (u == 0) return Extended(0);
    static const Extended a = -log(Extended(8) / 10);
    static const Extended c = -log(Extended(3) / 10);
    static const Extended ln2 = log(Extended(2));
    const Extended ua = pow(u, a);
    return (sin(pi() * log(u) / ln2) + 1) / 2 * (ua - pow(u, c)) - ua;
}

Extended garland_max_value_extended() {
    const Extended x0 = pi() / 6;
    return 4 * x0 * (1 - x0);
}

ExtendedObjective garland_objective_extended() {
    return ExtendedObjective{"garland", Box::unit(1),
                             [](std::span<const Extended> x) { return garland(x[0]); },
                             garland_max_value_extended(), std::vector<Extended>{pi() / 6}};
}

ExtendedObjective wrapped_sine_objective_extended() {
    return ExtendedObjective{"wrapped-sine", Box::unit(1),
                             [](std::span<const Extended> x) { return wrapped_sine(x[0]); },
                             Extended(0), std::vector<Extended>{Extended(1) / 2}};
}

ExtendedObjective make_extended_objective(std::string_view name) {
    if (name == "garland") return garland_objective_extended();
    if (name == "wrapped-sine" || name == "wrapped_sine") return wrapped_sine_objective_extended();
    throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

}  // namespace treeopt
