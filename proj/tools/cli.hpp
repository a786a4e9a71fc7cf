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
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cgpp/bench.hpp"

namespace cgpp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoFeasible = 2;

/// Run one command line (without the program name). Returns the exit code.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Aggregate over the records sharing (n, ratio, method).
struct CellSummary {
    std::size_t n = 0;
    std::size_t m = 0;
    double ratio = 0.0;
    Method method = Method::cg_exact_pp;
    std::size_t records = 0;
    double feasibility_rate = 0.0;
    MeanSe relative_error;
    std::size_t relative_error_undefined = 0;
    MeanSe hamming;
    MeanSe cg_iterations;
    MeanSe restoration_flips;
    MeanSe time_total_ms;
};

std::vector<CellSummary> summarize(std::span<const InstanceRecord> records);

}  // namespace cgpp::cli
