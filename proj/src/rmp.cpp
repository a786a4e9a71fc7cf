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

#include "cgpp/rmp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cgpp/errors.hpp"

namespace cgpp {

Column build_column(const ProblemInstance& inst, const BinarySolution& x) {
    if (x.size() != inst.n()) {
        throw std::invalid_argument("build_column: solution has " + std::to_string(x.size()) +
                                    " bits, instance has n=" + std::to_string(inst.n()));
    }
    return Column{x, objective(inst, x), constraint_lhs(inst, x)};
}

bool ColumnPool::add(Column column) {
    if (!members_.insert(column.x).second) return false;
    columns_.push_back(std::move(column));
    return true;
}

namespace {

/// Dense tableau B^{-1}[A | rhs] over rows 0..m-1 (constraints) and m
/// (convexity). Every row owns one column that started as the unit vector
/// e_r, from which B^{-1} is read back for the duals.
class Tableau {
 public:
    Tableau(const ColumnPool& pool, std::span<const double> b) : rows_(b.size() + 1) {
        const std::size_t m = b.size();
        num_lambda_ = pool.size();
        negated_.resize(m);
        std::size_t num_art = 1;
        for (std::size_t k = 0; k < m; ++k) {
            negated_[k] = b[k] < 0.0;
            if (negated_[k]) ++num_art;
        }
        first_art_ = num_lambda_ + m;
        cols_ = first_art_ + num_art;
        data_.assign(rows_ * (cols_ + 1), 0.0);
        basis_.resize(rows_);
        unit_col_.resize(rows_);

        std::size_t art = first_art_;
        for (std::size_t k = 0; k < m; ++k) {
            const double sign = negated_[k] ? -1.0 : 1.0;
            for (std::size_t p = 0; p < num_lambda_; ++p) at(k, p) = sign * pool[p].activity[k];
            at(k, num_lambda_ + k) = sign;
            rhs(k) = sign * b[k];
            if (negated_[k]) {
                at(k, art) = 1.0;
                unit_col_[k] = art++;
            } else {
                unit_col_[k] = num_lambda_ + k;
            }
            basis_[k] = unit_col_[k];
        }
        for (std::size_t p = 0; p < num_lambda_; ++p) at(m, p) = 1.0;
        at(m, art) = 1.0;
        rhs(m) = 1.0;
        unit_col_[m] = art;
        basis_[m] = art;
    }

    double& at(std::size_t r, std::size_t j) { return data_[r * (cols_ + 1) + j]; }
    double at(std::size_t r, std::size_t j) const { return data_[r * (cols_ + 1) + j]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    double rhs(std::size_t r) const { return at(r, cols_); }

    bool is_artificial(std::size_t j) const { return j >= first_art_; }

    void pivot(std::size_t pr, std::size_t pc) {
        const double inv = 1.0 / at(pr, pc);
        for (std::size_t j = 0; j <= cols_; ++j) at(pr, j) *= inv;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            const double factor = at(r, pc);
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) at(r, j) -= factor * at(pr, j);
            at(r, pc) = 0.0;
        }
        basis_[pr] = pc;
    }

    /// Primal simplex on `cost` with Bland's rule. Artificial columns never
    /// enter when `allow_artificial` is false.
    void optimize(const std::vector<double>& cost, bool allow_artificial,
                  const SimplexTolerances& tol) {
        std::vector<bool> in_basis(cols_, false);
        const std::size_t max_pivots = 50 * (rows_ + cols_) + 1000;
        for (std::size_t iter = 0;; ++iter) {
            if (iter > max_pivots) throw std::runtime_error("simplex: pivot limit exceeded");
            std::fill(in_basis.begin(), in_basis.end(), false);
            for (auto j : basis_) in_basis[j] = true;

            std::size_t entering = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (in_basis[j] || (!allow_artificial && is_artificial(j))) continue;
                double d = cost[j];
                for (std::size_t r = 0; r < rows_; ++r) d -= cost[basis_[r]] * at(r, j);
                if (d < -tol.reduced_cost) {
                    entering = j;
                    break;
                }
            }
            if (entering == cols_) return;

            std::size_t leaving = rows_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows_; ++r) {
                const double a = at(r, entering);
                if (a <= tol.pivot) continue;
                const double ratio = rhs(r) / a;
                if (leaving == rows_ || ratio < best_ratio - 1e-12) {
                    leaving = r;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + 1e-12 && basis_[r] < basis_[leaving]) {
                    leaving = r;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
            if (leaving == rows_) throw std::logic_error("simplex: master LP is unbounded");
            pivot(leaving, entering);
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t num_lambda() const noexcept { return num_lambda_; }
    std::size_t basis(std::size_t r) const { return basis_[r]; }
    std::size_t unit_col(std::size_t r) const { return unit_col_[r]; }
    bool negated(std::size_t k) const { return negated_[k]; }

 private:
    std::size_t rows_;
    std::size_t cols_ = 0;
    std::size_t num_lambda_ = 0;
    std::size_t first_art_ = 0;
    std::vector<double> data_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> unit_col_;
    std::vector<bool> negated_;
};

}  // namespace

RmpSolution solve_rmp(const ColumnPool& pool, std::span<const double> b,
                      const SimplexTolerances& tol) {
    if (pool.empty()) throw std::invalid_argument("solve_rmp: empty column pool");
    const std::size_t m = b.size();
    for (const auto& col : pool.columns()) {
        if (col.activity.size() != m) {
            throw std::invalid_argument("solve_rmp: column activity length differs from m=" +
                                        std::to_string(m));
        }
    }

    Tableau tab(pool, b);
    const std::size_t rows = tab.rows();

    // Phase one: minimize the sum of artificials.
    std::vector<double> cost(tab.cols(), 0.0);
    for (std::size_t j = 0; j < tab.cols(); ++j) {
        if (tab.is_artificial(j)) cost[j] = 1.0;
    }
    tab.optimize(cost, true, tol);

    double infeasibility = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (tab.is_artificial(tab.basis(r))) infeasibility += tab.rhs(r);
    }
    if (infeasibility > tol.feasibility) {
        // Rows with a nonzero phase-one multiplier form the Farkas certificate.
        std::vector<std::size_t> names;
        for (std::size_t r = 0; r < rows; ++r) {
            double y = 0.0;
            for (std::size_t i = 0; i < rows; ++i) y += cost[tab.basis(i)] * tab.at(i, tab.unit_col(r));
            if (std::fabs(y) > tol.reduced_cost) names.push_back(r);
        }
        std::string what = "restricted master LP is infeasible; violated rows:";
        for (auto r : names) {
            what += r == m ? std::string(" convexity") : " constraint " + std::to_string(r + 1);
        }
        throw InfeasibleError(what, names);
    }

    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t r = 0; r < rows; ++r) {
        if (!tab.is_artificial(tab.basis(r))) continue;
        for (std::size_t j = 0; j < tab.cols(); ++j) {
            if (tab.is_artificial(j)) continue;
            if (std::fabs(tab.at(r, j)) > tol.pivot) {
                tab.pivot(r, j);
                break;
            }
        }
    }

    // Phase two.
    std::fill(cost.begin(), cost.end(), 0.0);
    for (std::size_t p = 0; p < pool.size(); ++p) cost[p] = pool[p].cost;
    tab.optimize(cost, false, tol);

    RmpSolution sol;
    sol.lambda.assign(pool.size(), 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t j = tab.basis(r);
        if (j < pool.size()) sol.lambda[j] = std::max(0.0, tab.rhs(r));
    }
    for (std::size_t p = 0; p < pool.size(); ++p) sol.primal_obj += pool[p].cost * sol.lambda[p];

    // y_r = c_B^T B^{-1} e_r; B^{-1} e_r is the current column that began as e_r.
    std::vector<double> y(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t unit = tab.unit_col(r);
        for (std::size_t i = 0; i < rows; ++i) y[r] += cost[tab.basis(i)] * tab.at(i, unit);
    }
    sol.mu.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        double mu = tab.negated(k) ? -y[k] : y[k];
        if (mu > 0.0 && mu <= tol.reduced_cost) mu = 0.0;
        sol.mu[k] = mu;
    }
    sol.sigma = y[m];
    return sol;
}

}  // namespace cgpp
