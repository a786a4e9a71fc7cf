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

#include "cgpp/instance.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "cgpp/errors.hpp"
#include "cgpp/random.hpp"

namespace cgpp {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

BinarySolution::BinarySolution(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int v : bits) {
        if (v != 0 && v != 1) throw std::invalid_argument("BinarySolution: entries must be 0 or 1");
        bits_.push_back(static_cast<std::uint8_t>(v));
    }
}

BinarySolution::BinarySolution(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto v : bits_) {
        if (v > 1) throw std::invalid_argument("BinarySolution: entries must be 0 or 1");
    }
}

std::string BinarySolution::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
    return s;
}

std::size_t BinarySolutionHash::operator()(const BinarySolution& x) const noexcept {
    std::uint64_t h = splitmix64(x.size());
    std::uint64_t word = 0;
    std::size_t filled = 0;
    for (auto bit : x.bits()) {
        word = (word << 1) | bit;
        if (++filled == 64) {
            h = splitmix64(h ^ word);
            word = 0;
            filled = 0;
        }
    }
    if (filled > 0) h = splitmix64(h ^ word);
    return static_cast<std::size_t>(h);
}

ProblemInstance::ProblemInstance(UpperTriangular Q, std::vector<UpperTriangular> A,
                                 std::vector<double> b)
        : Q_(std::move(Q)), A_(std::move(A)), b_(std::move(b)) {
    if (Q_.size() == 0) throw std::invalid_argument("ProblemInstance: n must be positive");
    if (A_.size() != b_.size()) {
        throw std::invalid_argument("ProblemInstance: " + std::to_string(A_.size()) +
                                    " constraint matrices but " + std::to_string(b_.size()) +
                                    " bounds");
    }
    for (std::size_t k = 0; k < A_.size(); ++k) {
        if (A_[k].size() != Q_.size()) {
            throw std::invalid_argument("ProblemInstance: A_" + std::to_string(k + 1) +
                                        " has the wrong dimension");
        }
    }
}

namespace {

void check_size(const UpperTriangular& M, const BinarySolution& x) {
    if (M.size() != x.size()) {
        throw std::invalid_argument("dimension mismatch: matrix is " + std::to_string(M.size()) +
                                    "x" + std::to_string(M.size()) + ", solution has " +
                                    std::to_string(x.size()) + " bits");
    }
}

}  // namespace

double eval_quadratic_form(const UpperTriangular& M, const BinarySolution& x) {
    check_size(M, x);
    const std::size_t n = x.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!x[i]) continue;
        for (std::size_t j = i; j < n; ++j) {
            if (x[j]) total += M(i, j);
        }
    }
    return total;
}

double local_field(const UpperTriangular& M, const BinarySolution& x, std::size_t i) {
    check_size(M, x);
    if (i >= x.size()) throw std::out_of_range("local_field: index out of range");
    double h = M(i, i);
    for (std::size_t j = 0; j < i; ++j) {
        if (x[j]) h += M(j, i);
    }
    for (std::size_t j = i + 1; j < x.size(); ++j) {
        if (x[j]) h += M(i, j);
    }
    return h;
}

double objective(const ProblemInstance& inst, const BinarySolution& x) {
    return eval_quadratic_form(inst.Q(), x);
}

std::vector<double> constraint_lhs(const ProblemInstance& inst, const BinarySolution& x) {
    std::vector<double> lhs(inst.m());
    for (std::size_t k = 0; k < inst.m(); ++k) lhs[k] = eval_quadratic_form(inst.A(k), x);
    return lhs;
}

FeasibilityReport feasibility_report(const ProblemInstance& inst, const BinarySolution& x) {
    if (x.size() != inst.n()) {
        throw std::invalid_argument("feasibility_report: solution has " +
                                    std::to_string(x.size()) + " bits, instance has n=" +
                                    std::to_string(inst.n()));
    }
    FeasibilityReport report;
    report.violations.resize(inst.m());
    report.margins.resize(inst.m());
    for (std::size_t k = 0; k < inst.m(); ++k) {
        const double lhs = eval_quadratic_form(inst.A(k), x);
        report.margins[k] = inst.b()[k] - lhs;
        report.violations[k] = std::max(0.0, lhs - inst.b()[k]);
        if (report.violations[k] > 0.0) report.feasible = false;
    }
    return report;
}

ProblemInstance generate_random(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("generate_random: n must be positive");
    Rng rng(seed);
    auto draw_matrix = [&] {
        UpperTriangular M(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) M(i, j) = draw_bit(rng) ? -1.0 : 1.0;
        }
        return M;
    };
    UpperTriangular Q = draw_matrix();
    std::vector<UpperTriangular> A;
    A.reserve(m);
    for (std::size_t k = 0; k < m; ++k) A.push_back(draw_matrix());
    return ProblemInstance(std::move(Q), std::move(A), std::vector<double>(m, 1.0));
}

// --- codec -----------------------------------------------------------------

namespace {

ordered_json number_to_json(double v) {
    if (std::nearbyint(v) == v && std::fabs(v) < 9.0e15) {
        return static_cast<std::int64_t>(v);
    }
    return v;
}

ordered_json matrix_to_json(const UpperTriangular& M) {
    ordered_json triples = ordered_json::array();
    for (std::size_t i = 0; i < M.size(); ++i) {
        for (std::size_t j = i; j < M.size(); ++j) {
            if (M(i, j) != 0.0) triples.push_back({i + 1, j + 1, number_to_json(M(i, j))});
        }
    }
    return triples;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

std::int64_t require_int(const json& v, const std::string& where) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::nearbyint(d) == d && std::fabs(d) < 9.0e15) return static_cast<std::int64_t>(d);
    }
    fail(where, "expected an integer");
}

double require_number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(where, "value is not finite");
    return d;
}

const json& require_field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) fail(name, "missing field");
    return *it;
}

UpperTriangular matrix_from_json(const json& triples, std::size_t n, const std::string& name) {
    if (!triples.is_array()) fail(name, "expected an array of [i, j, value] triples");
    UpperTriangular M(n);
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const std::string where = name + "[" + std::to_string(t) + "]";
        const json& triple = triples[t];
        if (!triple.is_array() || triple.size() != 3) fail(where, "expected [i, j, value]");
        const auto i = require_int(triple[0], where + ".i");
        const auto j = require_int(triple[1], where + ".j");
        const double value = require_number(triple[2], where + ".value");
        const auto nn = static_cast<std::int64_t>(n);
        if (i < 1 || i > nn || j < 1 || j > nn) {
            fail(where, "index (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside 1.." + std::to_string(n));
        }
        if (i > j) {
            fail(where, "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") lies below the diagonal");
        }
        if (!seen.emplace(i, j).second) {
            fail(where, "duplicate entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
        M(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = value;
    }
    return M;
}

}  // namespace

std::string serialize_instance(const ProblemInstance& inst) {
    ordered_json doc;
    doc["n"] = inst.n();
    doc["m"] = inst.m();
    ordered_json b = ordered_json::array();
    for (double v : inst.b()) b.push_back(number_to_json(v));
    doc["b"] = std::move(b);
    doc["Q"] = matrix_to_json(inst.Q());
    ordered_json A = ordered_json::array();
    for (const auto& Ak : inst.A()) A.push_back(matrix_to_json(Ak));
    doc["A"] = std::move(A);
    return doc.dump() + "\n";
}

ProblemInstance parse_instance(std::string_view text) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        throw ParseError("instance file is empty");
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance: expected a JSON object");

    const auto n = require_int(require_field(doc, "n"), "n");
    if (n < 1) fail("n", "must be at least 1");
    const auto m = require_int(require_field(doc, "m"), "m");
    if (m < 0) fail("m", "must be non-negative");

    const json& b_json = require_field(doc, "b");
    if (!b_json.is_array()) fail("b", "expected an array");
    if (b_json.size() != static_cast<std::size_t>(m)) {
        fail("b", "length " + std::to_string(b_json.size()) + " does not match m=" +
                          std::to_string(m));
    }
    std::vector<double> b;
    for (std::size_t k = 0; k < b_json.size(); ++k) {
        b.push_back(require_number(b_json[k], "b[" + std::to_string(k) + "]"));
    }

    const auto nn = static_cast<std::size_t>(n);
    UpperTriangular Q = matrix_from_json(require_field(doc, "Q"), nn, "Q");

    const json& A_json = require_field(doc, "A");
    if (!A_json.is_array()) fail("A", "expected an array of m triple lists");
    if (A_json.size() != static_cast<std::size_t>(m)) {
        fail("A", "holds " + std::to_string(A_json.size()) + " matrices but m=" +
                          std::to_string(m));
    }
    std::vector<UpperTriangular> A;
    for (std::size_t k = 0; k < A_json.size(); ++k) {
        A.push_back(matrix_from_json(A_json[k], nn, "A[" + std::to_string(k) + "]"));
    }
    return ProblemInstance(std::move(Q), std::move(A), std::move(b));
}

ProblemInstance read_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open instance file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void write_instance(const std::filesystem::path& path, const ProblemInstance& inst) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write instance file " + path.string());
    out << serialize_instance(inst);
    if (!out) throw std::runtime_error("failed writing instance file " + path.string());
}

std::vector<BinarySolution> parse_solutions(std::string_view text, std::size_t n) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_array()) throw ParseError("solutions: expected an array of bit arrays");
    std::vector<BinarySolution> out;
    for (std::size_t s = 0; s < doc.size(); ++s) {
        const std::string where = "solutions[" + std::to_string(s) + "]";
        const json& row = doc[s];
        if (!row.is_array() || row.size() != n) {
            fail(where, "expected an array of " + std::to_string(n) + " bits");
        }
        std::vector<std::uint8_t> bits;
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = require_int(row[i], where + "[" + std::to_string(i) + "]");
            if (v != 0 && v != 1) fail(where + "[" + std::to_string(i) + "]", "expected 0 or 1");
            bits.push_back(static_cast<std::uint8_t>(v));
        }
        out.emplace_back(std::move(bits));
    }
    return out;
}

}  // namespace cgpp
