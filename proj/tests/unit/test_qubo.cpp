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

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cgpp/errors.hpp"
#include "cgpp/qubo.hpp"
#include "fixtures.hpp"

namespace cgpp {

using testing::matrix;
using testing::point;

namespace {

/// [[-1, 2], [., -1]]: energies 0, -1, -1, 0 over 00, 01, 10, 11.
Qubo two_well() { return Qubo{matrix(2, {{1, 1, -1}, {1, 2, 2}, {2, 2, -1}}), 0.0}; }

Qubo random_pm1_qubo(std::size_t n, std::mt19937_64& rng) {
    return Qubo{generate_random(n, 0, rng()).Q(), 0.0};
}

/// Plain lexicographic scan: first strict minimum wins, so ties go to the
/// smallest bit string.
std::optional<QuboSolution> brute_force(const Qubo& q, const SolutionSet& exclude) {
    std::optional<QuboSolution> best;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << q.size()); ++code) {
        const auto x = point(q.size(), code);
        if (exclude.contains(x)) continue;
        const double e = testing::naive_form(q.coeffs, x) + q.offset;
        if (!best || e < best->energy - 1e-9) best = QuboSolution{x, e};
    }
    return best;
}

}  // namespace

TEST_CASE("delta_energy") {
    const Qubo q = two_well();
    CHECK(delta_energy(q, BinarySolution{0, 0}, 0) == -1.0);
    CHECK(delta_energy(Qubo{UpperTriangular(3), 4.0}, BinarySolution{1, 0, 1}, 2) == 0.0);
    CHECK_THROWS_AS(delta_energy(q, BinarySolution{0, 0}, 2), std::out_of_range);

    SECTION("involution and exactness on random integer QUBOs") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 500; ++trial) {
            const std::size_t n = 1 + rng() % 12;
            const Qubo r{testing::random_int_matrix(n, rng, -5, 5), 2.0};
            const auto x = testing::random_point(n, rng);
            const std::size_t i = rng() % n;
            const double d = delta_energy(r, x, i);
            REQUIRE(d == r.energy(x.flipped(i)) - r.energy(x));
            REQUIRE(d + delta_energy(r, x.flipped(i), i) == 0.0);
        }
    }
}

TEST_CASE("solve_exact") {
    const Qubo q = two_well();

    SECTION("ties go to the lexicographically smallest state") {
        const auto s = solve_exact(q);
        REQUIRE(s);
        CHECK(s->x == BinarySolution{0, 1});
        CHECK(s->energy == -1.0);
    }

    SECTION("exclusion yields the next best state") {
        const auto s = solve_exact(q, SolutionSet{BinarySolution{0, 1}});
        REQUIRE(s);
        CHECK(s->x == BinarySolution{1, 0});
        CHECK(s->energy == -1.0);
    }

    SECTION("flat landscape") {
        const auto s = solve_exact(Qubo{UpperTriangular(4), 5.0});
        REQUIRE(s);
        CHECK(s->energy == 5.0);
        CHECK(s->x == BinarySolution(4));
    }

    SECTION("exhaustion when every state is excluded") {
        SolutionSet all;
        for (std::uint64_t c = 0; c < 4; ++c) all.insert(point(2, c));
        CHECK_FALSE(solve_exact(q, all).has_value());
    }

    SECTION("capacity limit") {
        CHECK_THROWS_AS(solve_exact(Qubo{UpperTriangular(27), 0.0}), CapacityError);
        CHECK_THROWS_AS(solve_exact(Qubo{UpperTriangular(5), 0.0}, {}, 4), CapacityError);
    }

    SECTION("matches brute force and scores 2^n - |excluded| states") {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> coef(-2.0, 2.0);
        for (int trial = 0; trial < 150; ++trial) {
            const std::size_t n = 1 + rng() % 10;
            Qubo r{UpperTriangular(n), coef(rng)};
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    r.coeffs(i, j) = trial % 2 ? coef(rng) : static_cast<double>(rng() % 3) - 1.0;
            SolutionSet exclude;
            const std::size_t k = rng() % 4;
            for (std::size_t e = 0; e < k; ++e) exclude.insert(testing::random_point(n, rng));
            exclude.insert(testing::random_point(n + 1, rng));  // wrong length, never matches

            ExactStats stats;
            const auto got = solve_exact(r, exclude, kExactQuboLimit, &stats);
            const auto want = brute_force(r, exclude);
            std::size_t excluded_in_cube = 0;
            for (const auto& x : exclude) excluded_in_cube += x.size() == n;
            REQUIRE(stats.states_scored == (std::uint64_t{1} << n) - excluded_in_cube);
            REQUIRE(got.has_value() == want.has_value());
            if (!got) continue;
            REQUIRE_FALSE(exclude.contains(got->x));
            REQUIRE(got->energy == Catch::Approx(want->energy).margin(1e-9));
            REQUIRE(got->energy == r.energy(got->x));
            if (trial % 2 == 0) REQUIRE(got->x == want->x);  // integer data: exact ties
        }
    }
}

TEST_CASE("solve_sa") {
    const SaConfig cfg{20, 1000, 0.1, 10.0, 1};

    SECTION("flat landscape") {
        CHECK(solve_sa(Qubo{UpperTriangular(6), 0.0}, cfg).energy == 0.0);
    }

    SECTION("finds the two-variable optimum") {
        const auto s = solve_sa(two_well(), cfg);
        CHECK(s.energy == -1.0);
    }

    SECTION("deterministic for a fixed seed") {
        std::mt19937_64 rng(3);
        const Qubo r = random_pm1_qubo(14, rng);
        const auto a = solve_sa(r, cfg);
        const auto b = solve_sa(r, cfg);
        CHECK(a.x == b.x);
        CHECK(a.energy == b.energy);
        CHECK(a.energy == r.energy(a.x));
    }

    SECTION("config validation") {
        CHECK_THROWS_AS(solve_sa(two_well(), SaConfig{0, 10, 0.1, 1.0, 0}), std::invalid_argument);
        CHECK_THROWS_AS(solve_sa(two_well(), SaConfig{1, 0, 0.1, 1.0, 0}), std::invalid_argument);
        CHECK_THROWS_AS(solve_sa(two_well(), SaConfig{1, 10, 0.0, 1.0, 0}), std::invalid_argument);
        CHECK_THROWS_AS(solve_sa(two_well(), SaConfig{1, 10, 2.0, 1.0, 0}), std::invalid_argument);
    }

    SECTION("never below the exact optimum; equal on at least 95 of 100 random instances") {
        std::mt19937_64 rng(2024);
        int equal = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 4 + rng() % 9;
            const Qubo r = random_pm1_qubo(n, rng);
            SaConfig c;
            c.seed = static_cast<std::uint64_t>(trial);
            const auto sa = solve_sa(r, c);
            const auto ex = solve_exact(r);
            REQUIRE(sa.energy >= ex->energy);
            REQUIRE(sa.energy == r.energy(sa.x));
            equal += sa.energy == ex->energy;
        }
        CHECK(equal >= 95);
    }
}

}  // namespace cgpp
