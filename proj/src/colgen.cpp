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

#include "cgpp/colgen.hpp"

#include <stdexcept>
#include <string>

#include "cgpp/errors.hpp"
#include "cgpp/random.hpp"

namespace cgpp {

std::string_view to_string(PricingBackend backend) noexcept {
    switch (backend) {
        case PricingBackend::exact: return "exact";
        case PricingBackend::sa: return "sa";
    }
    return "unknown";
}

std::string_view to_string(Termination termination) noexcept {
    switch (termination) {
        case Termination::converged: return "converged";
        case Termination::max_iter: return "max_iter";
        case Termination::duplicate_stall: return "duplicate_stall";
    }
    return "unknown";
}

std::optional<PricingBackend> parse_pricing_backend(std::string_view name) noexcept {
    if (name == "exact") return PricingBackend::exact;
    if (name == "sa") return PricingBackend::sa;
    return std::nullopt;
}

void CgConfig::validate() const {
    if (!(rc_tolerance > 0.0)) throw std::invalid_argument("CgConfig: rc_tolerance must be positive");
    if (max_iterations == 0) throw std::invalid_argument("CgConfig: max_iterations must be positive");
    if (pricing_backend == PricingBackend::sa) sa_config.validate();
}

std::vector<double> SymmetricMatrix::diagonal() const {
    std::vector<double> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
}

Qubo pricing_qubo(const ProblemInstance& inst, std::span<const double> mu, double sigma) {
    if (mu.size() != inst.m()) {
        throw std::invalid_argument("pricing_qubo: " + std::to_string(mu.size()) +
                                    " duals for m=" + std::to_string(inst.m()));
    }
    const std::size_t n = inst.n();
    Qubo q{inst.Q(), -sigma};
    for (std::size_t k = 0; k < inst.m(); ++k) {
        if (mu[k] == 0.0) continue;
        const auto& Ak = inst.A(k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) q.coeffs(i, j) -= mu[k] * Ak(i, j);
        }
    }
    return q;
}

double reduced_cost(const Column& column, std::span<const double> mu, double sigma) {
    if (mu.size() != column.activity.size()) {
        throw std::invalid_argument("reduced_cost: dual length differs from column activity");
    }
    double rc = column.cost - sigma;
    for (std::size_t k = 0; k < mu.size(); ++k) rc -= mu[k] * column.activity[k];
    return rc;
}

SymmetricMatrix assemble_X(const ColumnPool& pool, std::span<const double> lambda) {
    if (lambda.size() != pool.size()) {
        throw std::invalid_argument("assemble_X: " + std::to_string(lambda.size()) +
                                    " weights for " + std::to_string(pool.size()) + " columns");
    }
    if (pool.empty()) return {};
    const std::size_t n = pool[0].x.size();
    SymmetricMatrix X(n);
    for (std::size_t p = 0; p < pool.size(); ++p) {
        const auto& x = pool[p].x;
        if (lambda[p] == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (x[j]) X(i, j) += lambda[p];
            }
        }
    }
    return X;
}

BinarySolution unit_start(std::size_t n) {
    BinarySolution x(n);
    if (n > 0) x.set(0, true);
    return x;
}

CgResult run_cg(const ProblemInstance& inst, std::span<const BinarySolution> initial,
                const CgConfig& cfg) {
    cfg.validate();
    if (initial.empty()) throw std::invalid_argument("run_cg: at least one initial column is required");

    CgResult result;
    for (const auto& x : initial) result.pool.add(build_column(inst, x));

    RmpSolution rmp;
    try {
        rmp = solve_rmp(result.pool, inst.b());
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(std::string("run_cg: initial columns admit no feasible master "
                                          "problem; supply feasible initial columns (") +
                                      e.what() + ")",
                              e.rows());
    }

    bool rmp_current = true;
    result.termination = Termination::max_iter;
    while (result.iterations < cfg.max_iterations) {
        ++result.iterations;
        CgIteration record;
        record.iteration = result.iterations;
        record.rmp_obj = rmp.primal_obj;

        const Qubo q = pricing_qubo(inst, rmp.mu, rmp.sigma);
        std::optional<QuboSolution> priced;
        bool duplicate = false;
        if (cfg.pricing_backend == PricingBackend::exact) {
            priced = solve_exact(q, result.pool.members(), cfg.exact_limit);
        } else {
            for (std::size_t attempt = 0; attempt <= cfg.duplicate_retries; ++attempt) {
                SaConfig sa = cfg.sa_config;
                sa.seed = derive_seed(cfg.sa_config.seed, {result.iterations, attempt});
                priced = solve_sa(q, sa);
                duplicate = result.pool.contains(priced->x);
                if (!duplicate || priced->energy >= -cfg.rc_tolerance) break;
            }
        }

        if (!priced) {
            record.exhausted = true;
            record.pricing_value = 0.0;
            record.pool_size = result.pool.size();
            result.history.push_back(record);
            result.termination = Termination::converged;
            break;
        }
        record.pricing_value = priced->energy;
        if (priced->energy >= -cfg.rc_tolerance) {
            record.pool_size = result.pool.size();
            result.history.push_back(record);
            result.termination = Termination::converged;
            break;
        }
        if (duplicate) {
            record.pool_size = result.pool.size();
            result.history.push_back(record);
            result.termination = Termination::duplicate_stall;
            break;
        }

        result.pool.add(build_column(inst, priced->x));
        record.column_added = true;
        record.pool_size = result.pool.size();
        result.history.push_back(record);
        rmp_current = false;
        if (result.iterations < cfg.max_iterations) {
            rmp = solve_rmp(result.pool, inst.b());
            rmp_current = true;
        }
    }
    if (!rmp_current) rmp = solve_rmp(result.pool, inst.b());

    result.lambda = rmp.lambda;
    result.mu = rmp.mu;
    result.sigma = rmp.sigma;
    result.relax_obj = rmp.primal_obj;
    result.X = assemble_X(result.pool, result.lambda);
    return result;
}

}  // namespace cgpp
