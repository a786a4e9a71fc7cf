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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cgpp {

/// Upper-triangular n x n matrix in packed row-major storage. Only entries
/// with i <= j exist; indices are 0-based.
class UpperTriangular {
 public:
    UpperTriangular() = default;
    explicit UpperTriangular(std::size_t n) : n_(n), data_(n * (n + 1) / 2, 0.0) {}

    std::size_t size() const noexcept { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[offset(i, j)]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[offset(i, j)]; }

    /// Coefficient coupling x_i and x_j regardless of argument order.
    double coupling(std::size_t i, std::size_t j) const {
        return i <= j ? data_[offset(i, j)] : data_[offset(j, i)];
    }

    std::span<const double> packed() const noexcept { return data_; }

    bool operator==(const UpperTriangular&) const = default;

 private:
    std::size_t offset(std::size_t i, std::size_t j) const noexcept {
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// A point of {0,1}^n.
class BinarySolution {
 public:
    BinarySolution() = default;
    explicit BinarySolution(std::size_t n) : bits_(n, 0) {}

    /// Throws std::invalid_argument if any entry is not 0 or 1.
    BinarySolution(std::initializer_list<int> bits);
    explicit BinarySolution(std::vector<std::uint8_t> bits);

    std::size_t size() const noexcept { return bits_.size(); }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }

    void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }
    BinarySolution flipped(std::size_t i) const {
        BinarySolution out = *this;
        out.flip(i);
        return out;
    }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    /// Bit string with x_1 first, e.g. "0110".
    std::string to_string() const;

    bool operator==(const BinarySolution&) const = default;
    /// Lexicographic, x_1 most significant.
    std::strong_ordering operator<=>(const BinarySolution&) const = default;

 private:
    std::vector<std::uint8_t> bits_;
};

struct BinarySolutionHash {
    std::size_t operator()(const BinarySolution& x) const noexcept;
};

/// min sum_{i<=j} Q_ij x_i x_j  s.t.  sum_{i<=j} A_kij x_i x_j <= b_k,  x binary.
class ProblemInstance {
 public:
    ProblemInstance() = default;

    /// Throws std::invalid_argument when the dimensions disagree.
    ProblemInstance(UpperTriangular Q, std::vector<UpperTriangular> A, std::vector<double> b);

    std::size_t n() const noexcept { return Q_.size(); }
    std::size_t m() const noexcept { return A_.size(); }

    const UpperTriangular& Q() const noexcept { return Q_; }
    const UpperTriangular& A(std::size_t k) const { return A_[k]; }
    const std::vector<UpperTriangular>& A() const noexcept { return A_; }
    const std::vector<double>& b() const noexcept { return b_; }

    bool operator==(const ProblemInstance&) const = default;

 private:
    UpperTriangular Q_;
    std::vector<UpperTriangular> A_;
    std::vector<double> b_;
};

/// sum_{i<=j} M_ij x_i x_j. Exact for integer-valued M (all partial sums are
/// integers far below 2^53).
double eval_quadratic_form(const UpperTriangular& M, const BinarySolution& x);

/// M_ii + sum_{j != i} M_{min(i,j),max(i,j)} x_j: the change in x^T M x when
/// x_i goes from 0 to 1 with all other bits held.
double local_field(const UpperTriangular& M, const BinarySolution& x, std::size_t i);

double objective(const ProblemInstance& inst, const BinarySolution& x);
std::vector<double> constraint_lhs(const ProblemInstance& inst, const BinarySolution& x);

struct FeasibilityReport {
    bool feasible = true;
    std::vector<double> violations;  ///< v_k = max(0, lhs_k - b_k)
    std::vector<double> margins;     ///< r_k = b_k - lhs_k
};

FeasibilityReport feasibility_report(const ProblemInstance& inst, const BinarySolution& x);

/// Benchmark family: every Q_ij and A_kij (i <= j) is +1 or -1, b_k = 1.
///
/// Coefficients are drawn from Rng seeded with `seed`, one draw per
/// coefficient in the order Q, A_1, ..., A_m, each matrix row-major over
/// i <= j; a set top bit yields -1, a clear one +1.
ProblemInstance generate_random(std::size_t n, std::size_t m, std::uint64_t seed);

/// JSON instance codec. See README for the format.
std::string serialize_instance(const ProblemInstance& inst);
ProblemInstance parse_instance(std::string_view text);

ProblemInstance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const ProblemInstance& inst);

/// JSON array of 0/1 arrays, each of length n.
std::vector<BinarySolution> parse_solutions(std::string_view text, std::size_t n);

}  // namespace cgpp
