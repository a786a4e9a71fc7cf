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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgpp/colgen.hpp"
#include "cgpp/errors.hpp"
#include "cgpp/instance.hpp"
#include "cgpp/postprocess.hpp"

namespace cgpp::cli {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

/// Thrown for command-line problems detected after CLI11 has parsed.
class UsageError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

const std::map<std::string, std::string>& synopses() {
    static const std::map<std::string, std::string> table = {
            {"", "cgpp {generate|solve|exact|bench|fit} [OPTIONS]"},
            {"generate", "cgpp generate --n N --m M [--seed S] --out PATH"},
            {"solve",
             "cgpp solve --instance PATH [--pricing exact|sa] [--alpha-f A] [--alpha-l A] "
             "[--max-flips T] [--seed S] [--sa-reads R] [--sa-sweeps W] [--initial PATH]"},
            {"exact", "cgpp exact --instance PATH [--limit N]"},
            {"bench",
             "cgpp bench --n-list N,... --ratio-list R,... [--instances K] [--seed S] "
             "[--methods M,...] --csv PATH [--jobs J]"},
            {"fit", "cgpp fit --csv PATH [--x-col NAME] [--y-col NAME]"},
    };
    return table;
}

struct SolverFlags {
    std::string pricing = "exact";
    double alpha_f = 0.1;
    double alpha_l = 0.9;
    std::size_t max_flips = 1000;
    std::uint64_t seed = 0;
    std::size_t sa_reads = 20;
    std::size_t sa_sweeps = 1000;
    double sa_beta_initial = 0.1;
    double sa_beta_final = 10.0;
    std::size_t max_iterations = 200;
    double rc_tolerance = 1e-9;
    std::size_t duplicate_retries = 3;

    PpConfig pp() const { return PpConfig{alpha_f, alpha_l, max_flips}; }

    CgConfig cg() const {
        CgConfig cfg;
        auto backend = parse_pricing_backend(pricing);
        if (!backend) throw UsageError("--pricing must be 'exact' or 'sa'");
        cfg.pricing_backend = *backend;
        cfg.rc_tolerance = rc_tolerance;
        cfg.max_iterations = max_iterations;
        cfg.duplicate_retries = duplicate_retries;
        cfg.sa_config = SaConfig{sa_reads, sa_sweeps, sa_beta_initial, sa_beta_final, seed};
        return cfg;
    }
};

void add_pp_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--alpha-f", f.alpha_f, "Objective weight during feasibility restoration")
            ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--alpha-l", f.alpha_l, "Objective weight during local optimization")
            ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--max-flips", f.max_flips, "Flip cap T for feasibility restoration")
            ->check(CLI::PositiveNumber);
}

void add_cg_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--sa-reads", f.sa_reads, "Simulated annealing reads per pricing call")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--sa-sweeps", f.sa_sweeps, "Sweeps per annealing read")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--sa-beta-initial", f.sa_beta_initial, "Initial inverse temperature")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--sa-beta-final", f.sa_beta_final, "Final inverse temperature")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iterations", f.max_iterations, "Column generation iteration cap")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--rc-tolerance", f.rc_tolerance, "Reduced cost below -tol adds a column")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--duplicate-retries", f.duplicate_retries,
                    "Re-seeded pricing attempts after an annealing duplicate");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ordered_json bits_json(const BinarySolution& x) {
    ordered_json bits = ordered_json::array();
    for (auto bit : x.bits()) bits.push_back(static_cast<int>(bit));
    return bits;
}

// --- subcommands ------------------------------------------------------------

struct GenerateArgs {
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_generate(const GenerateArgs& a, std::ostream& out) {
    write_instance(a.out, generate_random(a.n, a.m, a.seed));
    out << "wrote " << a.out << " (n=" << a.n << ", m=" << a.m << ", seed=" << a.seed << ")\n";
    return kExitOk;
}

struct SolveArgs {
    std::string instance;
    std::string initial;
    SolverFlags flags;
};

int run_solve(const SolveArgs& a, std::ostream& out) {
    const auto total_start = Clock::now();
    const ProblemInstance inst = read_instance(a.instance);
    std::vector<BinarySolution> initial;
    if (a.initial.empty()) {
        initial.push_back(unit_start(inst.n()));
    } else {
        initial = parse_solutions(read_file(a.initial), inst.n());
        if (initial.empty()) throw UsageError("--initial file holds no solutions");
    }

    const CgConfig cg_cfg = a.flags.cg();
    const PpConfig pp_cfg = a.flags.pp();
    pp_cfg.validate();

    const auto cg_start = Clock::now();
    const CgResult cg = run_cg(inst, initial, cg_cfg);
    const double time_cg = elapsed_ms(cg_start);

    const auto pp_start = Clock::now();
    const PpResult pp = postprocess(inst, round_solution(cg.X), pp_cfg);
    const double time_pp = elapsed_ms(pp_start);

    ordered_json doc;
    doc["feasible"] = pp.feasible();
    doc["x"] = pp.feasible() ? bits_json(*pp.x) : ordered_json(nullptr);
    doc["E"] = pp.feasible() ? ordered_json(pp.objective) : ordered_json(nullptr);
    doc["relax_obj"] = cg.relax_obj;
    doc["cg_iterations"] = cg.iterations;
    doc["cg_termination"] = std::string(to_string(cg.termination));
    doc["restoration_flips"] = pp.restoration_flips;
    doc["optimization_flips"] = pp.optimization_flips;
    doc["time_cg_ms"] = time_cg;
    doc["time_pp_ms"] = time_pp;
    doc["time_total_ms"] = elapsed_ms(total_start);
    out << doc.dump(2) << '\n';
    return pp.feasible() ? kExitOk : kExitNoFeasible;
}

struct ExactArgs {
    std::string instance;
    std::size_t limit = kExactOracleLimit;
};

int run_exact(const ExactArgs& a, std::ostream& out) {
    const ProblemInstance inst = read_instance(a.instance);
    const ExactResult r = solve_exact_original(inst, a.limit);
    ordered_json doc;
    doc["feasible_exists"] = r.feasible_exists;
    doc["E_star"] = r.feasible_exists ? ordered_json(r.E_star) : ordered_json(nullptr);
    doc["x_star"] = r.feasible_exists ? bits_json(r.x_star) : ordered_json(nullptr);
    doc["optimum_count"] = r.optimum_count;
    out << doc.dump(2) << '\n';
    return kExitOk;
}

struct BenchArgs {
    std::vector<std::size_t> n_list;
    std::vector<double> ratio_list;
    std::size_t instances = 1;
    std::uint64_t seed = 0;
    std::vector<std::string> methods = {"cg_exact_pp", "cg_sa_pp", "random_pp"};
    std::string csv;
    std::size_t jobs = 1;
    std::size_t oracle_limit = kExactOracleLimit;
    SolverFlags flags;
};

std::string fmt(double v, const char* spec = "%.4g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void print_summary(std::span<const CellSummary> cells, std::ostream& out) {
    out << "n\tm\tratio\tmethod\trecords\tfeasible_rate\trel_err_mean\trel_err_se\t"
           "rel_err_undefined\thamming_mean\tcg_iter_mean\trestoration_flips_mean\t"
           "time_total_ms_mean\n";
    for (const auto& c : cells) {
        out << c.n << '\t' << c.m << '\t' << fmt(c.ratio) << '\t' << to_string(c.method) << '\t'
            << c.records << '\t' << fmt(c.feasibility_rate) << '\t'
            << (c.relative_error.count ? fmt(c.relative_error.mean) : "-") << '\t'
            << (c.relative_error.count ? fmt(c.relative_error.se) : "-") << '\t'
            << c.relative_error_undefined << '\t'
            << (c.hamming.count ? fmt(c.hamming.mean) : "-") << '\t'
            << (c.cg_iterations.count ? fmt(c.cg_iterations.mean) : "-") << '\t'
            << fmt(c.restoration_flips.mean) << '\t' << fmt(c.time_total_ms.mean) << '\n';
    }
}

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    ExperimentSpec spec;
    spec.n_values = a.n_list;
    spec.ratio_values = a.ratio_list;
    spec.instances_per_cell = a.instances;
    spec.base_seed = a.seed;
    for (const auto& name : a.methods) {
        auto method = parse_method(name);
        if (!method) throw UsageError("unknown method '" + name + "'");
        spec.methods.push_back(*method);
    }
    spec.pp = a.flags.pp();
    spec.cg = a.flags.cg();
    spec.oracle_limit = a.oracle_limit;
    spec.jobs = a.jobs;

    std::ofstream csv(a.csv, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + a.csv);
    const auto records = run_experiment(spec);
    write_csv(csv, records);
    if (!csv) throw std::runtime_error("failed writing " + a.csv);

    print_summary(summarize(records), out);
    const auto errors = std::count_if(records.begin(), records.end(),
                                      [](const InstanceRecord& r) { return !r.error.empty(); });
    if (errors > 0) err << errors << " record(s) failed with an error; see " << a.csv << '\n';
    return kExitOk;
}

struct FitArgs {
    std::string csv;
    std::string x_col = "n";
    std::string y_col = "time_total_ms";
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

int run_fit(const FitArgs& a, std::ostream& out) {
    std::ifstream in(a.csv);
    if (!in) throw std::runtime_error("cannot open " + a.csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(a.csv + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    auto column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw UsageError("column '" + name + "' not found in " + a.csv);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t xi = column(a.x_col);
    const std::size_t yi = column(a.y_col);

    // Each distinct x contributes the mean of its y values.
    std::map<double, std::pair<double, std::size_t>> groups;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() <= std::max(xi, yi)) {
            throw std::runtime_error(a.csv + ":" + std::to_string(line_no) + ": too few fields");
        }
        if (fields[xi].empty() || fields[yi].empty()) continue;
        try {
            auto& g = groups[std::stod(fields[xi])];
            g.first += std::stod(fields[yi]);
            ++g.second;
        } catch (const std::logic_error&) {
            throw std::runtime_error(a.csv + ":" + std::to_string(line_no) + ": non-numeric value");
        }
    }
    std::vector<std::pair<double, double>> points;
    for (const auto& [x, g] : groups) points.emplace_back(x, g.first / static_cast<double>(g.second));
    const auto fit = fit_exponential(points);

    ordered_json doc;
    doc["a"] = fit.a;
    doc["b"] = fit.b;
    doc["points"] = points.size();
    out << doc.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

std::vector<CellSummary> summarize(std::span<const InstanceRecord> records) {
    using Key = std::tuple<std::size_t, std::size_t, int>;
    std::map<Key, std::vector<const InstanceRecord*>> cells;
    for (const auto& r : records) {
        cells[{r.n, r.ratio_index, static_cast<int>(r.method)}].push_back(&r);
    }
    std::vector<CellSummary> out;
    for (const auto& [key, group] : cells) {
        CellSummary s;
        s.n = group.front()->n;
        s.m = group.front()->m;
        s.ratio = group.front()->ratio;
        s.method = group.front()->method;
        s.records = group.size();
        std::vector<double> rel, ham, iters, flips, times;
        std::size_t feasible = 0;
        for (const auto* r : group) {
            feasible += r->feasible;
            if (r->relative_error) rel.push_back(*r->relative_error);
            if (r->relative_error_undefined) ++s.relative_error_undefined;
            if (r->hamming) ham.push_back(*r->hamming);
            if (r->cg_iterations) iters.push_back(static_cast<double>(*r->cg_iterations));
            flips.push_back(static_cast<double>(r->restoration_flips));
            times.push_back(r->time_total_ms);
        }
        s.feasibility_rate = static_cast<double>(feasible) / static_cast<double>(group.size());
        s.relative_error = mean_se(rel);
        s.hamming = mean_se(ham);
        s.cg_iterations = mean_se(iters);
        s.restoration_flips = mean_se(flips);
        s.time_total_ms = mean_se(times);
        out.push_back(s);
    }
    return out;
}

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Column generation with QUBO pricing and binary postprocessing", "cgpp"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a random +/-1 benchmark instance");
    generate->add_option("--n", gen.n, "Number of variables")->required()->check(CLI::PositiveNumber);
    generate->add_option("--m", gen.m, "Number of constraints")->required();
    generate->add_option("--seed", gen.seed, "Generator seed");
    generate->add_option("--out", gen.out, "Output instance file")->required();

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Column generation followed by postprocessing");
    solve->add_option("--instance", solve_args.instance, "Instance file")->required();
    solve->add_option("--pricing", solve_args.flags.pricing, "Pricing backend")
            ->check(CLI::IsMember({"exact", "sa"}));
    add_pp_flags(solve, solve_args.flags);
    solve->add_option("--seed", solve_args.flags.seed, "Annealing seed");
    add_cg_flags(solve, solve_args.flags);
    solve->add_option("--initial", solve_args.initial,
                      "File with a JSON array of initial columns (default: the point (1, 0, ..., 0))");

    ExactArgs exact_args;
    auto* exact = app.add_subcommand("exact", "Exact optimum by enumeration");
    exact->add_option("--instance", exact_args.instance, "Instance file")->required();
    exact->add_option("--limit", exact_args.limit, "Largest n accepted");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Seeded sweep over n and m/n, written as CSV");
    bench->add_option("--n-list", bench_args.n_list, "Problem sizes")->required()->delimiter(',');
    bench->add_option("--ratio-list", bench_args.ratio_list, "m/n ratios")->required()->delimiter(',');
    bench->add_option("--instances", bench_args.instances, "Instances per (n, ratio) cell")
            ->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_args.seed, "Base seed");
    bench->add_option("--methods", bench_args.methods, "cg_exact_pp, cg_sa_pp, random_pp")
            ->delimiter(',')
            ->check(CLI::IsMember({"cg_exact_pp", "cg_sa_pp", "random_pp"}));
    bench->add_option("--csv", bench_args.csv, "Output CSV path")->required();
    bench->add_option("--jobs", bench_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
    bench->add_option("--oracle-limit", bench_args.oracle_limit, "Largest n given an exact optimum");
    add_pp_flags(bench, bench_args.flags);
    add_cg_flags(bench, bench_args.flags);

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "Fit y = exp(a x + b) to CSV columns");
    fit->add_option("--csv", fit_args.csv, "Input CSV")->required();
    fit->add_option("--x-col", fit_args.x_col, "x column");
    fit->add_option("--y-col", fit_args.y_col, "y column (averaged per distinct x)");

    auto selected_name = [&]() -> std::string {
        for (auto* sub : {generate, solve, exact, bench, fit}) {
            if (sub->parsed()) return sub->get_name();
        }
        return "";
    };
    auto usage = [&](const std::string& message) {
        err << "error: " << message << '\n'
            << "usage: " << synopses().at(selected_name()) << '\n';
        return kExitUsage;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return usage(e.what());
    }

    try {
        if (generate->parsed()) return run_generate(gen, out);
        if (solve->parsed()) return run_solve(solve_args, out);
        if (exact->parsed()) return run_exact(exact_args, out);
        if (bench->parsed()) return run_bench(bench_args, out, err);
        if (fit->parsed()) return run_fit(fit_args, out);
    } catch (const UsageError& e) {
        return usage(e.what());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return usage("no subcommand given");
}

}  // namespace cgpp::cli
