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
#include <unordered_set>

#include "cgpp/instance.hpp"

namespace cgpp {

/// energy(x) = sum_{i<=j} coeffs_ij x_i x_j + offset
struct Qubo {
    UpperTriangular coeffs;
    double offset = 0.0;

    std::size_t size() const noexcept { return coeffs.size(); }
    double energy(const BinarySolution& x) const { return eval_quadratic_form(coeffs, x) + offset; }
};

struct QuboSolution {
    BinarySolution x;
    double energy = 0.0;
};

using SolutionSet = std::unordered_set<BinarySolution, BinarySolutionHash>;

struct SaConfig {
    std::size_t num_reads = 20;
    std::size_t sweeps_per_read = 1000;
    double beta_initial = 0.1;
    double beta_final = 10.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on non-positive fields or beta_final <= beta_initial.
    void validate() const;
};

inline constexpr std::size_t kExactQuboLimit = 26;

/// energy(x with bit i flipped) - energy(x), in O(n).
double delta_energy(const Qubo& q, const BinarySolution& x, std::size_t i);

struct ExactStats {
    std::uint64_t states_scored = 0;  ///< states enumerated and not excluded
};

/// Minimum-energy state over {0,1}^n minus `exclude`, by Gray-code
/// enumeration with O(n) incremental updates per step. Ties (within 1e-9)
/// go to the lexicographically smallest bit string. Returns std::nullopt when
/// every state is excluded. Throws CapacityError when n > limit.
std::optional<QuboSolution> solve_exact(const Qubo& q, const SolutionSet& exclude = {},
                                        std::size_t limit = kExactQuboLimit,
                                        ExactStats* stats = nullptr);

/// Single-flip Metropolis annealing. Each read starts from a uniform random
/// state and runs sweeps_per_read sequential sweeps over x_1..x_n with
/// inverse temperature rising geometrically from beta_initial to
/// beta_final. Read r draws from Rng(derive_seed(seed, {r})). Returns the
/// best state seen over all reads (lexicographic tie-break) with its energy
/// re-evaluated from scratch.
QuboSolution solve_sa(const Qubo& q, const SaConfig& cfg);

}  // namespace cgpp
