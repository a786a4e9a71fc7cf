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

// Hand-traced instances and brute-force oracles shared by the unit and
// acceptance suites. Nothing here calls the incremental code paths it checks.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "cgpp/instance.hpp"

namespace cgpp::testing {

/// Build an upper-triangular matrix from 1-based (i, j, value) triples.
inline UpperTriangular matrix(std::size_t n,
                              std::initializer_list<std::tuple<int, int, double>> triples) {
    UpperTriangular M(n);
    for (auto [i, j, v] : triples) M(i - 1, j - 1) = v;
    return M;
}

/// n=2, m=1, Q=[[1,-1],[.,1]], A1=[[1,1],[.,-1]], b=(1).
inline ProblemInstance E1() {
    return ProblemInstance(matrix(2, {{1, 1, 1}, {1, 2, -1}, {2, 2, 1}}),
                           {matrix(2, {{1, 1, 1}, {1, 2, 1}, {2, 2, -1}})}, {1.0});
}

/// n=2, m=1, Q=[[-1,-1],[.,-1]], A1=[[1,1],[.,1]], b=(1).
inline ProblemInstance E2() {
    return ProblemInstance(matrix(2, {{1, 1, -1}, {1, 2, -1}, {2, 2, -1}}),
                           {matrix(2, {{1, 1, 1}, {1, 2, 1}, {2, 2, 1}})}, {1.0});
}

/// No binary point satisfies 3 x1 + 3 x2 <= -1.
inline ProblemInstance infeasible_everywhere(std::size_t n = 2) {
    UpperTriangular Q(n);
    UpperTriangular A(n);
    for (std::size_t i = 0; i < n; ++i) {
        Q(i, i) = 1.0;
        A(i, i) = 3.0;
    }
    return ProblemInstance(std::move(Q), {std::move(A)}, {-1.0});
}

/// x^T M x over the full square matrix whose lower triangle is zero.
inline double naive_form(const UpperTriangular& M, const BinarySolution& x) {
    const std::size_t n = M.size();
    std::vector<std::vector<double>> full(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) full[i][j] = M(i, j);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) total += full[i][j] * x[i] * x[j];
    }
    return total;
}

/// Point number `code` with x_1 as the most significant bit.
inline BinarySolution point(std::size_t n, std::uint64_t code) {
    BinarySolution x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, (code >> (n - 1 - i)) & 1u);
    return x;
}

inline bool naive_feasible(const ProblemInstance& inst, const BinarySolution& x) {
    for (std::size_t k = 0; k < inst.m(); ++k) {
        if (naive_form(inst.A(k), x) > inst.b()[k]) return false;
    }
    return true;
}

struct NaiveOptimum {
    double value = std::numeric_limits<double>::infinity();
    std::optional<BinarySolution> x;  ///< lexicographically smallest argmin
    std::size_t count = 0;
};

/// Non-incremental enumeration in lexicographic order.
inline NaiveOptimum naive_constrained_min(const ProblemInstance& inst) {
    NaiveOptimum best;
    const std::size_t n = inst.n();
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        const auto x = point(n, code);
        if (!naive_feasible(inst, x)) continue;
        const double v = naive_form(inst.Q(), x);
        if (v < best.value) {
            best = {v, x, 1};
        } else if (v == best.value) {
            ++best.count;
        }
    }
    return best;
}

/// Random upper-triangular matrix with integer entries in [lo, hi].
inline UpperTriangular random_int_matrix(std::size_t n, std::mt19937_64& rng, int lo = -3,
                                         int hi = 3) {
    std::uniform_int_distribution<int> dist(lo, hi);
    UpperTriangular M(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) M(i, j) = dist(rng);
    }
    return M;
}

inline BinarySolution random_point(std::size_t n, std::mt19937_64& rng) {
    BinarySolution x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, rng() & 1u);
    return x;
}

inline ProblemInstance random_int_instance(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::vector<UpperTriangular> A;
    std::vector<double> b;
    std::uniform_int_distribution<int> bound(-2, 4);
    for (std::size_t k = 0; k < m; ++k) {
        A.push_back(random_int_matrix(n, rng));
        b.push_back(bound(rng));
    }
    return ProblemInstance(random_int_matrix(n, rng), std::move(A), std::move(b));
}

}  // namespace cgpp::testing
