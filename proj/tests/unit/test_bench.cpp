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


#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "cgpp/bench.hpp"
#include "cgpp/errors.hpp"
#include "fixtures.hpp"

using Catch::Approx;

namespace cgpp {

namespace {

std::vector<std::pair<double, double>> sample_exp(double a, double b, std::vector<double> xs) {
    std::vector<std::pair<double, double>> pts;
    for (double x : xs) pts.emplace_back(x, std::exp(a * x + b));
    return pts;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out(1);
    for (char c : line) {
        if (c == sep) {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("solve_exact_original examples") {
    auto r = solve_exact_original(testing::E1());
    CHECK(r.feasible_exists);
    CHECK(r.E_star == 0.0);
    CHECK(r.x_star == BinarySolution{0, 0});
    CHECK(r.optimum_count == 1);

    r = solve_exact_original(testing::E2());
    CHECK(r.E_star == -1.0);
    CHECK(r.x_star == BinarySolution{0, 1});
    CHECK(r.optimum_count == 2);
    CHECK(r.multiple_optima());

    r = solve_exact_original(testing::infeasible_everywhere());
    CHECK_FALSE(r.feasible_exists);

    CHECK_THROWS_AS(solve_exact_original(generate_random(25, 1, 0)), CapacityError);
    CHECK_THROWS_AS(solve_exact_original(generate_random(9, 1, 0), 8), CapacityError);
}

TEST_CASE("solve_exact_original agrees with naive enumeration") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const std::size_t m = rng() % 4;
        const auto inst = trial % 2 ? testing::random_int_instance(n, m, rng)
                                    : generate_random(n, m, rng());
        const auto naive = testing::naive_constrained_min(inst);
        const auto r = solve_exact_original(inst);
        REQUIRE(r.feasible_exists == naive.x.has_value());
        if (!naive.x) continue;
        CHECK(r.E_star == naive.value);
        CHECK(r.x_star == *naive.x);
        CHECK(r.optimum_count == naive.count);
    }
}

TEST_CASE("metrics") {
    CHECK(*relative_error(-9.0, -10.0) == Approx(0.1).epsilon(1e-15));
    CHECK(*relative_error(-7.0, -7.0) == 0.0);
    CHECK_FALSE(relative_error(0.0, 0.0));
    CHECK_FALSE(relative_error(3.0, 0.0));

    CHECK(hamming_distance(BinarySolution{1, 0, 1}, BinarySolution{1, 0, 1}) == 0.0);
    CHECK(hamming_distance(BinarySolution{1, 0, 1}, BinarySolution{0, 1, 0}) == 1.0);
    CHECK(hamming_distance(BinarySolution{1, 0, 1, 0}, BinarySolution{1, 1, 1, 1}) == 0.5);
    CHECK_THROWS_AS(hamming_distance(BinarySolution{1}, BinarySolution{1, 0}),
                    std::invalid_argument);

    const auto s = mean_se(std::vector{1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.se == Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(s.count == 4);
    CHECK(mean_se(std::vector{5.0}).se == 0.0);
}

TEST_CASE("random_baseline") {
    const auto a = random_baseline(testing::E2(), 1);
    if (a.feasible()) CHECK(feasibility_report(testing::E2(), *a.x).feasible);
    const auto b = random_baseline(testing::E2(), 1);
    CHECK(a.x == b.x);
    CHECK(a.objective == b.objective);
    CHECK(a.restoration_flips == b.restoration_flips);
    CHECK(a.optimization_flips == b.optimization_flips);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CHECK_FALSE(random_baseline(testing::infeasible_everywhere(), seed).feasible());
    }
    CHECK(random_solution(30, 4) == random_solution(30, 4));
    CHECK_FALSE(random_solution(30, 4) == random_solution(30, 5));
}

TEST_CASE("constraint counts and seeds") {
    CHECK(constraint_count(10, 0.2) == 2);
    CHECK(constraint_count(16, 0.2) == 3);
    CHECK(constraint_count(40, 0.8) == 32);
    CHECK(constraint_count(2, 0.1) == 1);
    CHECK(instance_seed(1, 10, 0, 0) != instance_seed(1, 10, 0, 1));
    CHECK(instance_seed(1, 10, 0, 0) != instance_seed(1, 10, 1, 0));
    CHECK(instance_seed(1, 10, 0, 0) == instance_seed(1, 10, 0, 0));
    CHECK(parse_method("cg_sa_pp") == Method::cg_sa_pp);
    CHECK_FALSE(parse_method("cg_qa_pp"));
    CHECK(to_string(Method::random_pp) == "random_pp");
}

TEST_CASE("run_experiment") {
    ExperimentSpec spec;
    spec.n_values = {10};
    spec.ratio_values = {0.2};
    spec.instances_per_cell = 2;
    spec.base_seed = 7;
    spec.methods = {Method::cg_exact_pp};

    SECTION("two records with sound values") {
        const auto records = run_experiment(spec);
        REQUIRE(records.size() == 2);
        for (std::size_t i = 0; i < 2; ++i) {
            const auto& r = records[i];
            CHECK(r.error.empty());
            CHECK(r.instance_index == i);
            CHECK(r.m == 2);
            CHECK(r.seed == instance_seed(7, 10, 0, i));
            REQUIRE(r.E_star);
            CHECK(r.relax_obj);
            CHECK(r.cg_iterations);
            if (r.feasible) {
                REQUIRE(r.E);
                CHECK(*r.E >= *r.E_star);
                CHECK(*r.absolute_error == *r.E - *r.E_star);
            }
            CHECK(*r.relax_obj <= *r.E_star + 1e-9);
        }
    }

    SECTION("empty method set") {
        spec.methods.clear();
        CHECK(run_experiment(spec).empty());
    }

    SECTION("deterministic apart from timings and independent of jobs") {
        spec.methods = {Method::cg_exact_pp, Method::cg_sa_pp, Method::random_pp};
        spec.ratio_values = {0.2, 0.5};
        spec.cg.sa_config.num_reads = 5;
        spec.cg.sa_config.sweeps_per_read = 200;
        const auto a = run_experiment(spec);
        spec.jobs = 3;
        const auto b = run_experiment(spec);
        REQUIRE(a.size() == 12);
        REQUIRE(b.size() == a.size());
        std::ostringstream sa, sb;
        auto strip = [](std::vector<InstanceRecord> rs) {
            for (auto& r : rs) r.time_cg_ms = r.time_pp_ms = r.time_total_ms = 0.0;
            return rs;
        };
        write_csv(sa, strip(a));
        write_csv(sb, strip(b));
        CHECK(sa.str() == sb.str());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].method == spec.methods[i % 3]);
            CHECK(a[i].ratio_index == i / 6);
        }
    }

    SECTION("oracle skipped above the limit") {
        spec.oracle_limit = 8;
        const auto records = run_experiment(spec);
        for (const auto& r : records) {
            CHECK_FALSE(r.E_star);
            CHECK_FALSE(r.relative_error);
            CHECK_FALSE(r.hamming);
        }
    }

    SECTION("invalid spec") {
        spec.instances_per_cell = 0;
        CHECK_THROWS_AS(run_experiment(spec), std::invalid_argument);
    }
}

TEST_CASE("CSV output") {
    CHECK(csv_header() ==
          "n,m,ratio,seed,method,relax_obj,E,E_star,relative_error,hamming,feasible,"
          "cg_iterations,cg_termination,restoration_flips,optimization_flips,time_cg_ms,"
          "time_pp_ms,time_total_ms");
    InstanceRecord r;
    r.n = 10;
    r.m = 2;
    r.ratio = 0.2;
    r.seed = 42;
    r.method = Method::random_pp;
    r.E = -12.0;
    r.E_star = -13.0;
    r.relative_error = 1.0 / 13.0;
    r.hamming = 0.3;
    r.feasible = true;
    r.restoration_flips = 3;
    r.time_total_ms = 1.5;
    std::ostringstream out;
    write_csv(out, std::vector{r});
    std::istringstream in(out.str());
    std::string header, row, extra;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == csv_header());
    CHECK_FALSE(std::getline(in, extra));
    const auto f = split(row, ',');
    REQUIRE(f.size() == 18);
    CHECK(f[0] == "10");
    CHECK(f[2] == "0.2");
    CHECK(f[3] == "42");
    CHECK(f[4] == "random_pp");
    CHECK(f[5].empty());
    CHECK(f[6] == "-12");
    CHECK(f[8] == "0.0769230769231");
    CHECK(f[10] == "true");
    CHECK(f[11].empty());
    CHECK(f[12].empty());
    CHECK(f[13] == "3");
    CHECK(f[17] == "1.5");
}

TEST_CASE("fit_exponential") {
    auto fit = fit_exponential(sample_exp(0.1, 1.0, {10, 20, 30, 40}));
    CHECK(std::fabs(fit.a - 0.1) <= 1e-9);
    CHECK(std::fabs(fit.b - 1.0) <= 1e-9);
    fit = fit_exponential(sample_exp(0.04, -2.02, {10, 20, 30, 40}));
    CHECK(std::fabs(fit.a - 0.04) <= 1e-9);
    CHECK(std::fabs(fit.b + 2.02) <= 1e-9);
    fit = fit_exponential(std::vector<std::pair<double, double>>{{1.0, std::exp(2.0)},
                                                                 {3.0, std::exp(-4.0)}});
    CHECK(fit.a == Approx(-3.0));
    CHECK(fit.b == Approx(5.0));
    CHECK_THROWS_AS(fit_exponential(sample_exp(0.1, 1.0, {10})), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponential(std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_exponential(std::vector<std::pair<double, double>>{{1.0, 1.0}, {1.0, 2.0}}),
                    std::invalid_argument);
}

}  // namespace cgpp
