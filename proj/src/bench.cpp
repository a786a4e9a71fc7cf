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

#include "cgpp/bench.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "cgpp/errors.hpp"
#include "cgpp/random.hpp"

namespace cgpp {

namespace {

constexpr double kTieTolerance = 1e-9;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

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

}  // namespace

ExactResult solve_exact_original(const ProblemInstance& inst, std::size_t limit) {
    const std::size_t n = inst.n();
    const std::size_t m = inst.m();
    if (n > limit) {
        throw CapacityError("solve_exact_original: n=" + std::to_string(n) +
                                    " exceeds the limit of " + std::to_string(limit),
                            n, limit);
    }

    // Matrix 0 is Q, matrix k+1 is A_k. Fields start at the diagonals (x = 0).
    std::vector<std::vector<double>> dense;
    std::vector<std::vector<double>> field;
    dense.push_back(dense_couplings(inst.Q()));
    field.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) field[0][i] = inst.Q()(i, i);
    for (std::size_t k = 0; k < m; ++k) {
        dense.push_back(dense_couplings(inst.A(k)));
        field.emplace_back(n);
        for (std::size_t i = 0; i < n; ++i) field[k + 1][i] = inst.A(k)(i, i);
    }
    std::vector<double> value(m + 1, 0.0);  // objective, then constraint LHS
    const auto& b = inst.b();

    ExactResult result;
    std::uint64_t best_code = 0;
    std::vector<std::uint8_t> x(n, 0);
    const std::uint64_t total = std::uint64_t{1} << n;

    for (std::uint64_t t = 0; t < total; ++t) {
        if (t > 0) {
            // Gray bit b toggles variable n-1-b so codes order lexicographically.
            const std::size_t var = n - 1 - static_cast<std::size_t>(std::countr_zero(t));
            const double sign = x[var] ? -1.0 : 1.0;
            for (std::size_t c = 0; c <= m; ++c) {
                value[c] += sign * field[c][var];
                const double* row = &dense[c][var * n];
                auto& h = field[c];
                for (std::size_t j = 0; j < n; ++j) h[j] += sign * row[j];
            }
            x[var] ^= 1;
        }
        bool feasible = true;
        for (std::size_t k = 0; k < m; ++k) {
            if (value[k + 1] > b[k]) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        const std::uint64_t code = t ^ (t >> 1);
        const double obj = value[0];
        if (!result.feasible_exists || obj < result.E_star - kTieTolerance) {
            result.feasible_exists = true;
            result.E_star = obj;
            result.optimum_count = 1;
            best_code = code;
        } else if (obj <= result.E_star + kTieTolerance) {
            ++result.optimum_count;
            if (code < best_code) best_code = code;
        }
    }

    result.x_star = BinarySolution(n);
    if (result.feasible_exists) {
        for (std::size_t i = 0; i < n; ++i) result.x_star.set(i, (best_code >> (n - 1 - i)) & 1u);
        result.E_star = objective(inst, result.x_star);
    }
    return result;
}

std::optional<double> relative_error(double E, double E_star) {
    if (E_star == 0.0) return std::nullopt;
    return std::fabs((E - E_star) / E_star);
}

double hamming_distance(const BinarySolution& x, const BinarySolution& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("hamming_distance: lengths " + std::to_string(x.size()) +
                                    " and " + std::to_string(y.size()) + " differ");
    }
    if (x.size() == 0) return 0.0;
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mismatches += x[i] != y[i];
    return static_cast<double>(mismatches) / static_cast<double>(x.size());
}

BinarySolution random_solution(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    BinarySolution x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, draw_bit(rng));
    return x;
}

PpResult random_baseline(const ProblemInstance& inst, std::uint64_t seed, const PpConfig& pp) {
    return postprocess(inst, random_solution(inst.n(), seed), pp);
}

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::cg_exact_pp: return "cg_exact_pp";
        case Method::cg_sa_pp: return "cg_sa_pp";
        case Method::random_pp: return "random_pp";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    if (name == "cg_exact_pp") return Method::cg_exact_pp;
    if (name == "cg_sa_pp") return Method::cg_sa_pp;
    if (name == "random_pp") return Method::random_pp;
    return std::nullopt;
}

void ExperimentSpec::validate() const {
    if (instances_per_cell == 0) throw std::invalid_argument("ExperimentSpec: instances_per_cell must be at least 1");
    for (auto n : n_values) {
        if (n == 0) throw std::invalid_argument("ExperimentSpec: n must be positive");
    }
    for (double r : ratio_values) {
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("ExperimentSpec: ratios must be positive");
    }
    pp.validate();
}

std::size_t constraint_count(std::size_t n, double ratio) {
    const double m = std::round(ratio * static_cast<double>(n));
    return m < 1.0 ? 1 : static_cast<std::size_t>(m);
}

std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t n, std::size_t ratio_index,
                            std::size_t instance_index) {
    return derive_seed(base_seed, {n, ratio_index, instance_index});
}

namespace {

struct Unit {
    std::size_t n;
    std::size_t ratio_index;
    std::size_t instance_index;
};

std::vector<InstanceRecord> run_unit(const ExperimentSpec& spec, const Unit& unit) {
    const double ratio = spec.ratio_values[unit.ratio_index];
    const std::size_t m = constraint_count(unit.n, ratio);
    const std::uint64_t seed = instance_seed(spec.base_seed, unit.n, unit.ratio_index,
                                             unit.instance_index);
    const ProblemInstance inst = generate_random(unit.n, m, seed);

    std::optional<ExactResult> oracle;
    if (unit.n <= spec.oracle_limit) oracle = solve_exact_original(inst, spec.oracle_limit);

    std::vector<InstanceRecord> records;
    for (Method method : spec.methods) {
        InstanceRecord rec;
        rec.n = unit.n;
        rec.m = m;
        rec.ratio = ratio;
        rec.seed = seed;
        rec.method = method;
        rec.ratio_index = unit.ratio_index;
        rec.instance_index = unit.instance_index;
        if (oracle && oracle->feasible_exists) {
            rec.E_star = oracle->E_star;
            rec.multiple_optima = oracle->multiple_optima();
        }

        const auto start = Clock::now();
        try {
            BinarySolution x_init;
            if (method == Method::random_pp) {
                x_init = random_solution(unit.n, derive_seed(seed, {static_cast<std::uint64_t>(method)}));
            } else {
                CgConfig cg = spec.cg;
                cg.pricing_backend =
                        method == Method::cg_sa_pp ? PricingBackend::sa : PricingBackend::exact;
                cg.sa_config.seed = derive_seed(seed, {static_cast<std::uint64_t>(method)});
                const BinarySolution start_point = unit_start(unit.n);
                const auto cg_start = Clock::now();
                const CgResult cg_result = run_cg(inst, std::span(&start_point, 1), cg);
                rec.time_cg_ms = elapsed_ms(cg_start);
                rec.relax_obj = cg_result.relax_obj;
                rec.cg_iterations = cg_result.iterations;
                rec.cg_termination = cg_result.termination;
                x_init = round_solution(cg_result.X);
            }
            if (rec.E_star) rec.hamming = hamming_distance(x_init, oracle->x_star);

            const auto pp_start = Clock::now();
            const PpResult pp = postprocess(inst, x_init, spec.pp);
            rec.time_pp_ms = elapsed_ms(pp_start);
            rec.restoration_flips = pp.restoration_flips;
            rec.optimization_flips = pp.optimization_flips;
            rec.feasible = pp.feasible();
            if (pp.feasible()) {
                rec.E = pp.objective;
                if (rec.E_star) {
                    rec.absolute_error = std::fabs(pp.objective - *rec.E_star);
                    rec.relative_error = relative_error(pp.objective, *rec.E_star);
                    rec.relative_error_undefined = !rec.relative_error.has_value();
                }
            }
        } catch (const std::exception& e) {
            rec.error = e.what();
            rec.feasible = false;
        }
        rec.time_total_ms = elapsed_ms(start);
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace

std::vector<InstanceRecord> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.methods.empty()) return {};

    std::vector<Unit> units;
    for (auto n : spec.n_values) {
        for (std::size_t r = 0; r < spec.ratio_values.size(); ++r) {
            for (std::size_t t = 0; t < spec.instances_per_cell; ++t) units.push_back({n, r, t});
        }
    }

    std::vector<std::vector<InstanceRecord>> results(units.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t u = next++; u < units.size(); u = next++) results[u] = run_unit(spec, units[u]);
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(spec.jobs, units.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    std::vector<InstanceRecord> records;
    for (auto& chunk : results) {
        for (auto& rec : chunk) records.push_back(std::move(rec));
    }
    return records;
}

std::string_view csv_header() noexcept {
    return "n,m,ratio,seed,method,relax_obj,E,E_star,relative_error,hamming,feasible,"
           "cg_iterations,cg_termination,restoration_flips,optimization_flips,time_cg_ms,"
           "time_pp_ms,time_total_ms";
}

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_opt(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

}  // namespace

void write_csv(std::ostream& out, std::span<const InstanceRecord> records) {
    out << csv_header() << '\n';
    for (const auto& r : records) {
        out << r.n << ',' << r.m << ',' << format_real(r.ratio) << ',' << r.seed << ','
            << to_string(r.method) << ',' << format_opt(r.relax_obj) << ',' << format_opt(r.E)
            << ',' << format_opt(r.E_star) << ',' << format_opt(r.relative_error) << ','
            << format_opt(r.hamming) << ',' << (r.feasible ? "true" : "false") << ',';
        if (r.cg_iterations) out << *r.cg_iterations;
        out << ',';
        if (!r.error.empty()) {
            out << "error";
        } else if (r.cg_termination) {
            out << to_string(*r.cg_termination);
        }
        out << ',' << r.restoration_flips << ',' << r.optimization_flips << ','
            << format_real(r.time_cg_ms) << ',' << format_real(r.time_pp_ms) << ','
            << format_real(r.time_total_ms) << '\n';
    }
}

MeanSe mean_se(std::span<const double> values) {
    MeanSe out;
    out.count = values.size();
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    out.se = std::sqrt(var / static_cast<double>(values.size()));
    return out;
}

ExponentialFit fit_exponential(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw std::invalid_argument("fit_exponential: need at least two points");
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& [x, y] : points) {
        if (!(y > 0.0)) throw std::invalid_argument("fit_exponential: y values must be positive");
        sx += x;
        sy += std::log(y);
    }
    const double count = static_cast<double>(points.size());
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (std::log(y) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_exponential: x values are all equal");
    const double a = sxy / sxx;
    return {a, my - a * mx};
}

}  // namespace cgpp
