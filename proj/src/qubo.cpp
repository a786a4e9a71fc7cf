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

#include "cgpp/qubo.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgpp/errors.hpp"
#include "cgpp/random.hpp"

namespace cgpp {

namespace {

constexpr double kTieTolerance = 1e-9;

/// Dense symmetric copy of the off-diagonal couplings, row-major.
std::vector<double> dense_couplings(const UpperTriangular& M) {
    const std::size_t n = M.size();
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            dense[i * n + j] = M(i, j);
            dense[j * n + i] = M(i, j);
        }
    }
    return dense;
}

/// Local fields h_i = M_ii + sum_{j != i} M_ij x_j, kept current across flips.
class FieldState {
 public:
    FieldState(const UpperTriangular& M, const BinarySolution& x)
            : n_(M.size()), dense_(dense_couplings(M)), x_(x), field_(n_) {
        for (std::size_t i = 0; i < n_; ++i) field_[i] = local_field(M, x_, i);
    }

    double delta(std::size_t i) const { return x_[i] ? -field_[i] : field_[i]; }

    void flip(std::size_t i) {
        const double sign = x_[i] ? -1.0 : 1.0;
        x_.flip(i);
        const double* row = &dense_[i * n_];
        for (std::size_t j = 0; j < n_; ++j) field_[j] += sign * row[j];
    }

    const BinarySolution& x() const noexcept { return x_; }

 private:
    std::size_t n_;
    std::vector<double> dense_;
    BinarySolution x_;
    std::vector<double> field_;
};

bool better(double energy, const BinarySolution& x, double best_energy,
            const BinarySolution& best_x) {
    if (energy < best_energy - kTieTolerance) return true;
    if (energy > best_energy + kTieTolerance) return false;
    return x < best_x;
}

}  // namespace

void SaConfig::validate() const {
    if (num_reads == 0) throw std::invalid_argument("SaConfig: num_reads must be positive");
    if (sweeps_per_read == 0) throw std::invalid_argument("SaConfig: sweeps_per_read must be positive");
    if (!(beta_initial > 0.0)) throw std::invalid_argument("SaConfig: beta_initial must be positive");
    if (!(beta_final > beta_initial)) {
        throw std::invalid_argument("SaConfig: beta_final must exceed beta_initial");
    }
}

double delta_energy(const Qubo& q, const BinarySolution& x, std::size_t i) {
    if (i >= q.size()) {
        throw std::out_of_range("delta_energy: index " + std::to_string(i) + " out of range for n=" +
                                std::to_string(q.size()));
    }
    const double h = local_field(q.coeffs, x, i);
    return x[i] ? -h : h;
}

std::optional<QuboSolution> solve_exact(const Qubo& q, const SolutionSet& exclude,
                                        std::size_t limit, ExactStats* stats) {
    const std::size_t n = q.size();
    if (n > limit) {
        throw CapacityError("solve_exact: n=" + std::to_string(n) + " exceeds the limit of " +
                                    std::to_string(limit),
                            n, limit);
    }
    if (n == 0) throw std::invalid_argument("solve_exact: empty QUBO");

    // Gray-code bit b toggles variable n-1-b, so the integer code orders
    // states lexicographically with x_1 most significant.
    FieldState state(q.coeffs, BinarySolution(n));
    std::unordered_set<std::uint64_t> excluded_codes;
    for (const auto& x : exclude) {
        if (x.size() != n) continue;
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < n; ++i) code = (code << 1) | (x[i] ? 1u : 0u);
        excluded_codes.insert(code);
    }
    const bool filter = !excluded_codes.empty();
    double energy = q.offset;
    std::optional<QuboSolution> best;
    std::uint64_t scored = 0;

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t t = 0; t < total; ++t) {
        if (t > 0) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(t));
            const std::size_t var = n - 1 - bit;
            energy += state.delta(var);
            state.flip(var);
        }
        if (filter && excluded_codes.contains(t ^ (t >> 1))) continue;
        ++scored;
        if (!best || better(energy, state.x(), best->energy, best->x)) {
            best = QuboSolution{state.x(), energy};
        }
    }
    if (stats) stats->states_scored = scored;
    if (best) best->energy = q.energy(best->x);
    return best;
}

QuboSolution solve_sa(const Qubo& q, const SaConfig& cfg) {
    cfg.validate();
    const std::size_t n = q.size();
    if (n == 0) throw std::invalid_argument("solve_sa: empty QUBO");

    const double ratio = cfg.beta_final / cfg.beta_initial;
    std::vector<double> schedule(cfg.sweeps_per_read);
    for (std::size_t s = 0; s < cfg.sweeps_per_read; ++s) {
        const double frac = cfg.sweeps_per_read == 1
                                    ? 1.0
                                    : static_cast<double>(s) /
                                              static_cast<double>(cfg.sweeps_per_read - 1);
        schedule[s] = cfg.beta_initial * std::pow(ratio, frac);
    }

    std::optional<QuboSolution> best;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (std::size_t read = 0; read < cfg.num_reads; ++read) {
        Rng rng(derive_seed(cfg.seed, {read}));
        BinarySolution start(n);
        for (std::size_t i = 0; i < n; ++i) start.set(i, draw_bit(rng));

        FieldState state(q.coeffs, start);
        double energy = q.energy(start);
        BinarySolution read_best = start;
        double read_best_energy = energy;

        for (double beta : schedule) {
            for (std::size_t i = 0; i < n; ++i) {
                const double d = state.delta(i);
                if (d <= 0.0 || uniform(rng) < std::exp(-beta * d)) {
                    state.flip(i);
                    energy += d;
                    if (better(energy, state.x(), read_best_energy, read_best)) {
                        read_best = state.x();
                        read_best_energy = energy;
                    }
                }
            }
        }
        QuboSolution candidate{read_best, q.energy(read_best)};
        if (!best || better(candidate.energy, candidate.x, best->energy, best->x)) {
            best = std::move(candidate);
        }
    }
    return *best;
}

}  // namespace cgpp
