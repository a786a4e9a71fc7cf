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
#include <optional>
#include <span>
#include <vector>

#include "cgpp/colgen.hpp"
#include "cgpp/instance.hpp"

namespace cgpp {

struct PpConfig {
    double alpha_f = 0.1;         ///< objective weight during feasibility restoration
    double alpha_l = 0.9;         ///< objective weight during local optimization
    std::size_t max_flips = 1000; ///< flip cap T for feasibility restoration

    void validate() const;
};

/// Single-flip deltas at a point x.
///
/// f[i] is +1 if bit i is 0 (flip 0 -> 1) and -1 otherwise; p[i] is the exact
/// objective change of flipping bit i and w[i][k] the exact change of
/// constraint k's left-hand side.
struct FlipDeltas {
    std::vector<int> f;
    std::vector<double> p;
    std::vector<std::vector<double>> w;
};

/// Bit i is 1 iff sqrt(clamp(X_ii, 0, 1)) > 0.5.
BinarySolution round_solution(std::span<const double> diagonal);
BinarySolution round_solution(const SymmetricMatrix& X);

FlipDeltas flip_deltas(const ProblemInstance& inst, const BinarySolution& x);

/// e_i = alpha * pbar_i + (1 - alpha) * sum_k beta_k * wbar_ik with
/// pbar_i = -p_i / max_j(-p_j) and wbar_ik = -w_ik / max_j(-w_jk).
///
/// A denominator with magnitude below 1e-12 zeroes its normalized term. A
/// negative denominator is used as is, which reverses that term's ordering.
std::vector<double> efficiency(const FlipDeltas& d, double alpha, std::span<const double> beta);

/// beta_k = v_k / sum v. Throws std::invalid_argument if no violation is positive.
std::vector<double> beta_feasibility(std::span<const double> violations);

/// beta_k = -r_k / sum r, or -1/m for every k when all margins are (near) zero.
std::vector<double> beta_local(std::span<const double> margins);

struct RestorationResult {
    BinarySolution x;   ///< last state reached
    bool feasible = false;
    std::size_t flips = 0;
};

/// Greedy flips in descending efficiency (ties to the lowest index), never
/// revisiting a state, until x is feasible, max_flips flips have been made,
/// or every neighbour of x has been visited.
RestorationResult feasibility_restoration(const ProblemInstance& inst, BinarySolution x,
                                          double alpha_f, std::size_t max_flips);

struct LocalOptResult {
    BinarySolution x;
    std::size_t flips = 0;
};

/// Greedy improving flips (p_i < 0) that keep every constraint satisfied,
/// until none remains. Throws std::invalid_argument if x is infeasible.
LocalOptResult local_optimization(const ProblemInstance& inst, BinarySolution x, double alpha_l);

struct PpResult {
    std::optional<BinarySolution> x;  ///< empty when no feasible solution was found
    double objective = 0.0;
    std::size_t restoration_flips = 0;
    std::size_t optimization_flips = 0;

    bool feasible() const noexcept { return x.has_value(); }
};

/// Feasibility restoration followed, on success, by local optimization.
PpResult postprocess(const ProblemInstance& inst, const BinarySolution& x_init,
                     const PpConfig& cfg = {});

}  // namespace cgpp
