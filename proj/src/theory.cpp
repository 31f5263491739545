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

#include "treeopt/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/tools/roots.hpp>

namespace treeopt {

double harmonic(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("harmonic number needs n >= 1");
    long double s = 0.0L;
    for (std::int64_t t = n; t >= 1; --t) s += 1.0L / static_cast<long double>(t);
    return static_cast<double>(s);
}

double lambert_w(double x) {
    if (std::isnan(x) || x < 0.0) throw std::domain_error("lambert_w: argument must be >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;

    double w;
    if (x < std::numbers::e) {
        // Series around 0; log1p is close enough further out.
        w = x < 0.5 ? x * (1.0 - x * (1.0 - 1.5 * x)) : std::log1p(x);
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    if (x <= 1e2) {
        // Halley on w e^w - x.
        for (int it = 0; it < 64; ++it) {
            const double ew = std::exp(w);
            const double f = w * ew - x;
            const double wp1 = w + 1.0;
            const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
            w -= step;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(w, 1e-300)) break;
        }
    } else {
        // Newton on w + log w - log x, which stays finite for huge x.
        const double lx = std::log(x);
        for (int it = 0; it < 64; ++it) {
            const double f = w + std::log(w) - lx;
            const double step = f / (1.0 + 1.0 / w);
            w -= step;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * w) break;
        }
    }
    return w;
}

void SmoothnessParams::validate() const {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("nu must be positive");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
    if (!(C >= 1.0) || !std::isfinite(C)) throw std::invalid_argument("C must be at least 1");
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("d must be non-negative");
}

void BoundInputs::validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (!(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("b must be non-negative");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

std::int64_t sequool_depth(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("budget must be at least 1");
    return static_cast<std::int64_t>(std::floor(static_cast<double>(n) / harmonic(n)));
}

std::int64_t stroquool_depth(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("budget must be at least 1");
    const double h = harmonic(n) + 1.0;
    return static_cast<std::int64_t>(std::floor(static_cast<double>(n) / (2.0 * h * h)));
}

std::int64_t stroquool_bound_depth(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("budget must be at least 1");
    const double l = std::log2(static_cast<double>(n)) + 1.0;
    return static_cast<std::int64_t>(std::floor((static_cast<double>(n) / 2.0) / (l * l)));
}

SequoolBound sequool_bound(std::int64_t n, const SmoothnessParams& params) {
    params.validate();
    const double depth = static_cast<double>(sequool_depth(n));
    SequoolBound out;
    if (params.d == 0.0) {
        out.bound = params.nu * std::pow(params.rho, depth / params.C);
        return out;
    }
    const double lambda = std::log(1.0 / params.rho);
    out.n_tilde = depth * params.d * lambda / params.C;
    out.bound = params.nu * std::exp(-lambert_w(out.n_tilde) / params.d);
    if (out.n_tilde > std::numbers::e) {
        out.readable = params.nu * std::pow(out.n_tilde / std::log(out.n_tilde), -1.0 / params.d);
    }
    return out;
}

std::string_view to_string(NoiseRegime r) noexcept { return r == NoiseRegime::high ? "high" : "low"; }

namespace {

// Solves log(A / C) - (d + 2) lambda h - log h = 0 for h > 0; the left side
// is strictly decreasing from +inf to -inf.
double solve_h_tilde(double log_a_over_c, double slope) {
    auto F = [&](double h) { return log_a_over_c - slope * h - std::log(h); };
    double lo = 1.0, hi = 1.0;
    while (F(lo) <= 0.0) lo *= 0.5;
    while (F(hi) >= 0.0) hi *= 2.0;
    if (lo == hi) return lo;
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        F, lo, hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    return 0.5 * (a + b);
}

}  // namespace

StroquoolBounds stroquool_bounds(const BoundInputs& inputs, const SmoothnessParams& params) {
    inputs.validate();
    params.validate();
    const auto [nu, rho, C, d] = params;
    const double b = inputs.b;
    const double n = static_cast<double>(inputs.n);
    const double L = std::log(2.0 * n * n / inputs.delta);
    const double lambda = std::log(1.0 / rho);
    const double dl = (d + 2.0) * lambda;
    const std::int64_t depth = stroquool_bound_depth(inputs.n);
    const double h = static_cast<double>(depth);

    StroquoolBounds out;
    out.depth = depth;
    out.n_tilde = h * d * lambda / (4.0 * C);
    out.h_tilde_asymptotic = std::numeric_limits<double>::quiet_NaN();

    if (b == 0.0) {
        out.h_tilde = out.h_tilde_lambert = std::numeric_limits<double>::infinity();
        out.n_bar = std::numeric_limits<double>::infinity();
        out.regime = NoiseRegime::low;
    } else {
        out.n_bar = h * nu * nu * dl / (4.0 * C * b * b * L);
        if (depth == 0) {
            out.h_tilde = out.h_tilde_lambert = 0.0;
        } else {
            const double log_a = std::log(h) + 2.0 * std::log(nu) - std::log(4.0 * b * b * L);
            out.h_tilde = solve_h_tilde(log_a - std::log(C), dl);
            out.h_tilde_lambert = lambert_w(out.n_bar) / dl;
        }
        if (out.n_bar > std::numbers::e) {
            out.h_tilde_asymptotic = std::log(out.n_bar / std::log(out.n_bar)) / dl;
        }
        const double threshold = nu * std::pow(rho, out.h_tilde) / std::sqrt(L);
        out.regime = b >= threshold ? NoiseRegime::high : NoiseRegime::low;
    }

    if (out.regime == NoiseRegime::high) {
        const double additive = depth == 0 ? std::numeric_limits<double>::infinity()
                                           : 2.0 * b * std::sqrt(L / h);
        out.bound = nu * std::pow(rho, lambert_w(out.n_bar) / dl) + additive;
        if (out.n_bar > std::numbers::e) {
            out.readable = nu * std::pow(std::log(out.n_bar) / out.n_bar, 1.0 / (d + 2.0)) +
                            2.0 * b * std::sqrt(18.0 * L / (2.0 * h));
        }
    } else if (d == 0.0) {
        out.bound = 3.0 * nu * std::pow(rho, h / (4.0 * C));
    } else {
        out.bound = 3.0 * nu * std::exp(-lambert_w(out.n_tilde) / d);
        if (out.n_tilde > std::numbers::e) {
            out.readable = 3.0 * nu * std::pow(std::log(out.n_tilde) / out.n_tilde, 1.0 / d);
        }
    }
    return out;
}

double confidence_radius(double b, std::int64_t n, double delta, std::int64_t evals) {
    if (!(b >= 0.0)) throw std::invalid_argument("b must be non-negative");
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (evals < 1 || !std::has_single_bit(static_cast<std::uint64_t>(evals))) {
        throw std::invalid_argument("evals must be a positive power of two");
    }
    const double nn = static_cast<double>(n);
    return b * std::sqrt(std::log(2.0 * nn * nn / delta) / (2.0 * static_cast<double>(evals)));
}

std::int64_t count_near_optimal(const Objective& objective, const PartitionSpec& partition,
                                std::uint32_t depth, double epsilon, std::size_t grid_per_dim) {
    const unsigned K = partition.branching;
    if (K < 2) throw std::invalid_argument("branching factor must be at least 2");
    if (grid_per_dim < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
    const std::size_t dim = objective.domain.dim();
    const double cells = std::pow(static_cast<double>(K), static_cast<double>(depth));
    if (cells > 1e6) throw std::invalid_argument("K^h exceeds 1e6 cells");
    const double points = cells * std::pow(static_cast<double>(grid_per_dim), static_cast<double>(dim));
    if (points > 2e9) throw std::invalid_argument("grid too large for this dimension");

    const auto n_cells = static_cast<std::uint64_t>(cells);
    std::vector<double> sup(n_cells, -std::numeric_limits<double>::infinity());
    Point x(dim);
    std::vector<std::size_t> counter(dim);
    for (std::uint64_t i = 0; i < n_cells; ++i) {
        const Box box = cell_box(objective.domain, K, CellId::from_index(depth, i, K), partition.split_axis);
        std::fill(counter.begin(), counter.end(), 0);
        for (;;) {
            for (std::size_t k = 0; k < dim; ++k) {
                const double t = static_cast<double>(counter[k]) / static_cast<double>(grid_per_dim - 1);
                x[k] = counter[k] + 1 == grid_per_dim ? box.upper()[k]
                                                      : box.lower()[k] + t * box.width(k);
            }
            sup[i] = std::max(sup[i], objective.eval(x));
            std::size_t k = 0;
            while (k < dim && ++counter[k] == grid_per_dim) counter[k++] = 0;
            if (k == dim) break;
        }
    }
    const double best = objective.optimum_value.value_or(*std::max_element(sup.begin(), sup.end()));
    return std::count_if(sup.begin(), sup.end(), [&](double s) { return s >= best - epsilon; });
}

}  // namespace treeopt
