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
#include <span>
#include <vector>

#include "cgpp/instance.hpp"
#include "cgpp/qubo.hpp"

namespace cgpp {

/// An extreme point x^p with its cost c_p = x^T Q x and activities
/// a_kp = x^T A_k x.
struct Column {
    BinarySolution x;
    double cost = 0.0;
    std::vector<double> activity;
};

Column build_column(const ProblemInstance& inst, const BinarySolution& x);

/// Insertion-ordered set of columns, unique by bit string.
class ColumnPool {
 public:
    /// Returns false (and leaves the pool unchanged) if x is already pooled.
    bool add(Column column);
    bool contains(const BinarySolution& x) const { return members_.contains(x); }

    std::size_t size() const noexcept { return columns_.size(); }
    bool empty() const noexcept { return columns_.empty(); }
    const Column& operator[](std::size_t p) const { return columns_[p]; }
    const std::vector<Column>& columns() const noexcept { return columns_; }
    const SolutionSet& members() const noexcept { return members_; }

 private:
    std::vector<Column> columns_;
    SolutionSet members_;
};

/// Optimal basic solution of
///   min sum_p c_p l_p  s.t.  sum_p a_kp l_p <= b_k (dual mu_k <= 0),
///                            sum_p l_p = 1 (dual sigma),  l >= 0.
/// The reduced cost of column p is c_p - sum_k mu_k a_kp - sigma.
struct RmpSolution {
    std::vector<double> lambda;
    double primal_obj = 0.0;
    std::vector<double> mu;
    double sigma = 0.0;
};

struct SimplexTolerances {
    double pivot = 1e-9;
    double reduced_cost = 1e-9;
    double feasibility = 1e-9;
};

/// Dense two-phase primal simplex with Bland's rule; duals are the simplex
/// multipliers of the final basis. Throws InfeasibleError naming the rows
/// with a nonzero multiplier in the phase-one infeasibility certificate.
RmpSolution solve_rmp(const ColumnPool& pool, std::span<const double> b,
                      const SimplexTolerances& tol = {});

}  // namespace cgpp
