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

// Multiprecision instantiations. Deep cells of a K-ary partition shrink
// like K^-h, so a double-precision run stops telling cells apart after a
// few dozen levels. Extended carries the same algorithms to depths in the
// hundreds; Rational is exact and suits objectives built from field
// operations only (piecewise linear functions, for instance).

#pragma once

#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "treeopt/objectives.hpp"
#include "treeopt/optimizers.hpp"
#include "treeopt/partition.hpp"

namespace treeopt {

/// 400 significant decimal digits (MPFR). With K = 3 on a unit interval,
/// cells stay distinct to roughly depth 800.
using Extended = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<400>,
                                               boost::multiprecision::et_off>;

using ExtendedObjective = BasicObjective<Extended>;
using ExtendedRunResult = BasicRunResult<Extended>;

/// Exact rationals. Cell bounds and representatives are exact, so equal
/// objective values tie exactly and ties go to the lowest CellId.
using Rational = boost::multiprecision::cpp_rational;

using RationalObjective = BasicObjective<Rational>;
using RationalRunResult = BasicRunResult<Rational>;

Extended garland(const Extended& x);
Extended wrapped_sine(const Extended& x);

/// Exact supremum 4 x0 (1 - x0), x0 = pi/6, to working precision.
Extended garland_max_value_extended();

ExtendedObjective garland_objective_extended();
ExtendedObjective wrapped_sine_objective_extended();

/// Same names as make_objective(). Throws std::invalid_argument for
/// unknown names.
ExtendedObjective make_extended_objective(std::string_view name);

extern template class BasicPartitionTree<Extended>;
extern template ExtendedRunResult sequool_run(const ExtendedObjective&, const RunConfig&);
extern template ExtendedRunResult stroquool_run(const ExtendedObjective&, NoiseModel&,
                                                const RunConfig&);
extern template ExtendedRunResult soo_run(const ExtendedObjective&, const RunConfig&,
                                          const DepthLimit&);
extern template ExtendedRunResult doo_run(const ExtendedObjective&, const RunConfig&, double,
                                          double);
extern template ExtendedRunResult uniform_run(const ExtendedObjective&, NoiseModel&,
                                              const RunConfig&);

extern template class BasicPartitionTree<Rational>;
extern template RationalRunResult sequool_run(const RationalObjective&, const RunConfig&);
extern template RationalRunResult stroquool_run(const RationalObjective&, NoiseModel&,
                                                const RunConfig&);
extern template RationalRunResult soo_run(const RationalObjective&, const RunConfig&,
                                          const DepthLimit&);
extern template RationalRunResult doo_run(const RationalObjective&, const RunConfig&, double,
                                          double);
extern template RationalRunResult uniform_run(const RationalObjective&, NoiseModel&,
                                              const RunConfig&);

}  // namespace treeopt
