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

// Experiment runner: a grid of (algorithm, budget, noise range, repeat)
// runs scored by simple regret, written as CSV.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treeopt/objectives.hpp"
#include "treeopt/theory.hpp"

namespace treeopt {

enum class Algorithm { sequool, stroquool, soo, doo, uniform };

struct AlgorithmSpec {
    Algorithm kind = Algorithm::sequool;
    /// Smoothness handed to DOO; ignored by the other algorithms.
    double nu = 1.0;
    double rho = 0.5;

    /// "sequool", "stroquool", "soo", "uniform", "doo" or "doo:NU:RHO".
    /// Throws std::invalid_argument for anything else.
    static AlgorithmSpec parse(std::string_view text);

    /// Name used in CSV output; round-trips through parse().
    std::string label() const;

    /// True for algorithms that only accept noiseless feedback.
    bool deterministic_only() const noexcept;

    friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

enum class Precision { double_precision, extended };

std::string_view to_string(Precision p) noexcept;
/// "double" or "extended".
Precision parse_precision(std::string_view text);

struct ExperimentSpec {
    std::vector<AlgorithmSpec> algorithms;
    std::string objective = "garland";
    std::vector<std::int64_t> budgets;
    std::vector<double> noise_b{0.0};
    /// Repeat keys. A count N in the config expands to 0..N-1.
    std::vector<std::uint64_t> seeds{0};
    double delta = 0.05;
    unsigned branching = 3;
    std::string output;
    std::uint64_t master_seed = 0;
    NoiseDistribution distribution = NoiseDistribution::uniform;
    Precision precision = Precision::double_precision;
    /// 0 means one worker per hardware thread.
    unsigned threads = 0;
    /// When false the wall_ms column is written as 0, which makes the CSV a
    /// pure function of the spec.
    bool record_wall_time = true;

    /// Throws std::invalid_argument on empty lists, non-increasing budgets,
    /// negative noise ranges, a deterministic-only algorithm paired with
    /// b > 0, or an unknown objective.
    void validate() const;

    /// Parses the JSON config format. Unknown keys are an error. With
    /// `check` false the result may be partial, for callers that fill in the
    /// rest and validate later.
    static ExperimentSpec from_json(std::string_view text, bool check = true);
    std::string to_json() const;
};

struct RegretRecord {
    std::string algo;
    std::string objective;
    std::int64_t n = 0;
    double b = 0.0;
    /// The derived per-run seed, which is what the noise RNG was seeded with.
    std::uint64_t seed = 0;
    double regret = 0.0;
    std::int64_t openings = 0;
    std::int64_t evaluations = 0;
    double wall_ms = 0.0;

    friend bool operator==(const RegretRecord&, const RegretRecord&) = default;
};

/// Seed of one run as a hash of the master seed, the algorithm label, the
/// budget, the noise range and the repeat key.
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::string_view algo, std::int64_t n,
                              double b, std::uint64_t repeat);

/// Runs the full grid (algorithms x budgets x noise_b x seeds, in that
/// nesting order) and returns the records in grid order. When `csv` is
/// given, the metadata, the header and each record are written as soon as
/// every earlier record is done. Throws on the first failed run, after
/// the workers have stopped.
std::vector<RegretRecord> run_experiment(const ExperimentSpec& spec, std::ostream* csv = nullptr);

extern const char* const kCsvHeader;

void write_csv_metadata(std::ostream& out, const ExperimentSpec& spec);
void write_csv_record(std::ostream& out, const RegretRecord& record);
/// Skips '#' comment lines. Throws std::runtime_error on a malformed file.
std::vector<RegretRecord> read_csv(std::istream& in);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Absent when y has no variance.
    std::optional<double> r_squared;
};

/// Least squares y = slope x + intercept. Throws std::invalid_argument with
/// fewer than two points or when all x are equal.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct SummaryRow {
    std::string algo;
    std::int64_t n = 0;
    double b = 0.0;
    std::size_t count = 0;
    double median = 0.0;
    double q10 = 0.0;
    double q90 = 0.0;
    double mean = 0.0;
};

/// Per (algo, b): median log2 regret against n and against sqrt(n). Budgets
/// whose median regret is not positive are left out of the fits.
struct DecayFit {
    std::string algo;
    double b = 0.0;
    std::size_t points = 0;
    std::optional<LinearFit> vs_n;
    std::optional<LinearFit> vs_sqrt_n;
    /// Every median used is the same value.
    bool flat = false;
};

struct Summary {
    std::vector<SummaryRow> rows;
    std::vector<DecayFit> fits;
};

/// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

/// Groups by (algo, n, b) in first-seen order. Throws std::invalid_argument
/// on empty input.
Summary summarize(const std::vector<RegretRecord>& records);

void write_summary(std::ostream& out, const Summary& summary);

/// One row per (budget, noise range): the deterministic and noisy regret
/// bounds and the noise regime. Columns n,b,sequool_bound,stroquool_bound,regime.
void emit_bound_overlay(const ExperimentSpec& spec, const SmoothnessParams& params,
                        std::ostream& out);

}  // namespace treeopt
