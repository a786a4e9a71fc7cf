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

#include "cgpp/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace cgpp {

namespace {

constexpr double kDenominatorGuard = 1e-12;

/// Indices sorted by descending score, ties to the lower index.
std::vector<std::size_t> descending_order(const std::vector<double>& score) {
    std::vector<std::size_t> order(score.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
    return order;
}

}  // namespace

void PpConfig::validate() const {
    if (!(alpha_f >= 0.0 && alpha_f <= 1.0)) throw std::invalid_argument("PpConfig: alpha_f must lie in [0, 1]");
    if (!(alpha_l >= 0.0 && alpha_l <= 1.0)) throw std::invalid_argument("PpConfig: alpha_l must lie in [0, 1]");
    if (max_flips == 0) throw std::invalid_argument("PpConfig: max_flips must be positive");
}

BinarySolution round_solution(std::span<const double> diagonal) {
    BinarySolution x(diagonal.size());
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
        x.set(i, std::sqrt(std::clamp(diagonal[i], 0.0, 1.0)) > 0.5);
    }
    return x;
}

BinarySolution round_solution(const SymmetricMatrix& X) {
    const auto diag = X.diagonal();
    return round_solution(diag);
}

FlipDeltas flip_deltas(const ProblemInstance& inst, const BinarySolution& x) {
    if (x.size() != inst.n()) {
        throw std::invalid_argument("flip_deltas: solution has " + std::to_string(x.size()) +
                                    " bits, instance has n=" + std::to_string(inst.n()));
    }
    const std::size_t n = inst.n();
    const std::size_t m = inst.m();
    FlipDeltas d;
    d.f.resize(n);
    d.p.resize(n);
    d.w.assign(n, std::vector<double>(m));
    for (std::size_t i = 0; i < n; ++i) {
        d.f[i] = x[i] ? -1 : 1;
        d.p[i] = d.f[i] * local_field(inst.Q(), x, i);
        for (std::size_t k = 0; k < m; ++k) d.w[i][k] = d.f[i] * local_field(inst.A(k), x, i);
    }
    return d;
}

std::vector<double> efficiency(const FlipDeltas& d, double alpha, std::span<const double> beta) {
    const std::size_t n = d.p.size();
    std::vector<double> e(n, 0.0);
    if (n == 0) return e;

    double p_den = -d.p[0];
    for (double p : d.p) p_den = std::max(p_den, -p);
    if (std::fabs(p_den) >= kDenominatorGuard) {
        for (std::size_t i = 0; i < n; ++i) e[i] = alpha * (-d.p[i] / p_den);
    }

    for (std::size_t k = 0; k < beta.size(); ++k) {
        double w_den = -d.w[0][k];
        for (std::size_t i = 0; i < n; ++i) w_den = std::max(w_den, -d.w[i][k]);
        if (std::fabs(w_den) < kDenominatorGuard) continue;
        const double weight = (1.0 - alpha) * beta[k];
        for (std::size_t i = 0; i < n; ++i) e[i] += weight * (-d.w[i][k] / w_den);
    }
    return e;
}

std::vector<double> beta_feasibility(std::span<const double> violations) {
    double total = 0.0;
    for (double v : violations) {
        if (v < 0.0) throw std::invalid_argument("beta_feasibility: violations must be non-negative");
        total += v;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("beta_feasibility: no constraint is violated");
    }
    std::vector<double> beta(violations.size());
    for (std::size_t k = 0; k < violations.size(); ++k) beta[k] = violations[k] / total;
    return beta;
}

std::vector<double> beta_local(std::span<const double> margins) {
    const std::size_t m = margins.size();
    double total = 0.0;
    for (double r : margins) {
        if (r < 0.0) throw std::invalid_argument("beta_local: margins must be non-negative");
        total += r;
    }
    std::vector<double> beta(m);
    if (total <= kDenominatorGuard) {
        std::fill(beta.begin(), beta.end(), -1.0 / static_cast<double>(m));
        return beta;
    }
    for (std::size_t k = 0; k < m; ++k) beta[k] = -margins[k] / total;
    return beta;
}

RestorationResult feasibility_restoration(const ProblemInstance& inst, BinarySolution x,
                                          double alpha_f, std::size_t max_flips) {
    RestorationResult out;
    SolutionSet visited;
    visited.insert(x);
    auto report = feasibility_report(inst, x);
    while (!report.feasible && out.flips < max_flips) {
        const auto deltas = flip_deltas(inst, x);
        const auto beta = beta_feasibility(report.violations);
        const auto order = descending_order(efficiency(deltas, alpha_f, beta));

        bool moved = false;
        for (std::size_t i : order) {
            x.flip(i);
            if (visited.insert(x).second) {
                moved = true;
                break;
            }
            x.flip(i);
        }
        if (!moved) break;
        ++out.flips;
        report = feasibility_report(inst, x);
    }
    out.feasible = report.feasible;
    out.x = std::move(x);
    return out;
}

LocalOptResult local_optimization(const ProblemInstance& inst, BinarySolution x, double alpha_l) {
    auto report = feasibility_report(inst, x);
    if (!report.feasible) {
        throw std::invalid_argument("local_optimization: starting point violates a constraint");
    }
    LocalOptResult out;
    const auto& b = inst.b();
    for (;;) {
        const auto deltas = flip_deltas(inst, x);
        const auto lhs = constraint_lhs(inst, x);
        std::vector<double> margins(report.margins);
        for (double& r : margins) r = std::max(r, 0.0);
        const auto beta = beta_local(margins);
        const auto order = descending_order(efficiency(deltas, alpha_l, beta));

        bool moved = false;
        for (std::size_t i : order) {
            if (!(deltas.p[i] < 0.0)) continue;
            bool keeps_feasible = true;
            for (std::size_t k = 0; k < inst.m(); ++k) {
                if (lhs[k] + deltas.w[i][k] > b[k]) {
                    keeps_feasible = false;
                    break;
                }
            }
            if (!keeps_feasible) continue;
            x.flip(i);
            moved = true;
            break;
        }
        if (!moved) break;
        ++out.flips;
        report = feasibility_report(inst, x);
    }
    out.x = std::move(x);
    return out;
}

PpResult postprocess(const ProblemInstance& inst, const BinarySolution& x_init,
                     const PpConfig& cfg) {
    cfg.validate();
    PpResult result;
    auto restored = feasibility_restoration(inst, x_init, cfg.alpha_f, cfg.max_flips);
    result.restoration_flips = restored.flips;
    if (!restored.feasible) return result;

    auto optimized = local_optimization(inst, std::move(restored.x), cfg.alpha_l);
    result.optimization_flips = optimized.flips;
    result.objective = objective(inst, optimized.x);
    result.x = std::move(optimized.x);
    return result;
}

}  // namespace cgpp
