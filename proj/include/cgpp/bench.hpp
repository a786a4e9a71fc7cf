// Copyright 2026 The cgpp Authors
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
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgpp/colgen.hpp"
#include "cgpp/instance.hpp"
#include "cgpp/postprocess.hpp"

namespace cgpp {

inline constexpr std::size_t kExactOracleLimit = 24;

struct ExactResult {
    double E_star = 0.0;
    BinarySolution x_star;           ///< lexicographically smallest optimum
    bool feasible_exists = false;
    std::size_t optimum_count = 0;   ///< number of feasible points attaining E_star

    bool multiple_optima() const noexcept { return optimum_count > 1; }
};

/// Exact optimum of the constrained problem by Gray-code enumeration with
/// incremental objective and constraint updates. Throws CapacityError when
/// n > limit.
ExactResult solve_exact_original(const ProblemInstance& inst,
                                 std::size_t limit = kExactOracleLimit);

/// |(E - E_star) / E_star|, or std::nullopt when E_star == 0.
std::optional<double> relative_error(double E, double E_star);

/// Fraction of positions where x and y differ.
double hamming_distance(const BinarySolution& x, const BinarySolution& y);

/// Independent fair bits from Rng(seed), one draw per bit.
BinarySolution random_solution(std::size_t n, std::uint64_t seed);

/// Postprocessing applied to random_solution(n, seed).
PpResult random_baseline(const ProblemInstance& inst, std::uint64_t seed, const PpConfig& pp = {});

enum class Method { cg_exact_pp, cg_sa_pp, random_pp };

std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

struct ExperimentSpec {
    std::vector<std::size_t> n_values;
    std::vector<double> ratio_values;
    std::size_t instances_per_cell = 1;
    std::uint64_t base_seed = 0;
    std::vector<Method> methods;
    PpConfig pp{};
    CgConfig cg{};
    std::size_t oracle_limit = kExactOracleLimit;
    std::size_t jobs = 1;

    void validate() const;
};

/// m = round(ratio * n), at least 1.
std::size_t constraint_count(std::size_t n, double ratio);

/// derive_seed(base_seed, {n, ratio_index, instance_index}).
std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t n, std::size_t ratio_index,
                            std::size_t instance_index);

struct InstanceRecord {
    std::size_t n = 0;
    std::size_t m = 0;
    double ratio = 0.0;
    std::uint64_t seed = 0;
    Method method = Method::cg_exact_pp;
    std::size_t ratio_index = 0;
    std::size_t instance_index = 0;

    std::optional<double> relax_obj;
    std::optional<double> E;
    std::optional<double> E_star;
    std::optional<double> relative_error;
    std::optional<double> absolute_error;  ///< |E - E_star|, always set when both exist
    bool relative_error_undefined = false; ///< E_star == 0
    bool multiple_optima = false;
    /// Distance of the pre-postprocessing point (rounded X, or the random
    /// draw) to the oracle's x_star.
    std::optional<double> hamming;
    bool feasible = false;
    std::optional<std::size_t> cg_iterations;
    std::optional<Termination> cg_termination;
    std::size_t restoration_flips = 0;
    std::size_t optimization_flips = 0;
    double time_cg_ms = 0.0;
    double time_pp_ms = 0.0;
    double time_total_ms = 0.0;
    std::string error;  ///< non-empty when the method threw
};

/// One record per (n, ratio, instance, method), in that nesting order
/// regardless of spec.jobs.
std::vector<InstanceRecord> run_experiment(const ExperimentSpec& spec);

std::string_view csv_header() noexcept;
void write_csv(std::ostream& out, std::span<const InstanceRecord> records);

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;  ///< standard error of the mean; 0 for fewer than two samples
    std::size_t count = 0;
};

MeanSe mean_se(std::span<const double> values);

struct ExponentialFit {
    double a = 0.0;
    double b = 0.0;
};

/// Least-squares fit of ln(y) = a x + b. Throws std::invalid_argument for
/// fewer than two points, non-positive y, or constant x.
ExponentialFit fit_exponential(std::span<const std::pair<double, double>> points);

}  // namespace cgpp
