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
#include <string_view>
#include <vector>

#include "cgpp/instance.hpp"
#include "cgpp/qubo.hpp"
#include "cgpp/rmp.hpp"

namespace cgpp {

enum class PricingBackend { exact, sa };
enum class Termination { converged, max_iter, duplicate_stall };

std::string_view to_string(PricingBackend backend) noexcept;
std::string_view to_string(Termination termination) noexcept;
std::optional<PricingBackend> parse_pricing_backend(std::string_view name) noexcept;

struct CgConfig {
    PricingBackend pricing_backend = PricingBackend::exact;
    double rc_tolerance = 1e-9;
    std::size_t max_iterations = 200;
    SaConfig sa_config{};
    std::size_t duplicate_retries = 3;
    std::size_t exact_limit = kExactQuboLimit;

    void validate() const;
};

/// Dense symmetric n x n matrix, row-major.
class SymmetricMatrix {
 public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    std::vector<double> diagonal() const;

 private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// One pricing round.
struct CgIteration {
    std::size_t iteration = 0;
    double rmp_obj = 0.0;        ///< RMP optimum before pricing
    double pricing_value = 0.0;  ///< reduced cost of the pricing solution
    std::size_t pool_size = 0;   ///< pool size after this round
    bool column_added = false;
    bool exhausted = false;      ///< exact pricing found every state pooled
};

struct CgResult {
    ColumnPool pool;
    std::vector<double> lambda;
    std::vector<double> mu;
    double sigma = 0.0;
    double relax_obj = 0.0;
    SymmetricMatrix X;
    std::size_t iterations = 0;
    Termination termination = Termination::converged;
    std::vector<CgIteration> history;
};

/// Pricing objective c(x) - sum_k mu_k a_k(x) - sigma as a QUBO:
/// coeffs = Q - sum_k mu_k A_k, offset = -sigma.
Qubo pricing_qubo(const ProblemInstance& inst, std::span<const double> mu, double sigma);

double reduced_cost(const Column& column, std::span<const double> mu, double sigma);

/// X = sum_p lambda_p x^p (x^p)^T.
SymmetricMatrix assemble_X(const ColumnPool& pool, std::span<const double> lambda);

/// Dantzig-Wolfe column generation over the binary hypercube. Exact pricing
/// excludes pooled columns; SA pricing re-seeds on a duplicate up to
/// duplicate_retries times before stopping with duplicate_stall.
///
/// Throws InfeasibleError when the initial columns admit no feasible RMP.
CgResult run_cg(const ProblemInstance& inst, std::span<const BinarySolution> initial,
                const CgConfig& cfg);

/// The trivial starting point (1, 0, ..., 0).
BinarySolution unit_start(std::size_t n);

}  // namespace cgpp
