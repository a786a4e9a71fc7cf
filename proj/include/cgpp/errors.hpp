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
#include <stdexcept>
#include <string>
#include <vector>

namespace cgpp {

/// Malformed instance or solution file.
class ParseError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Problem size exceeds what an enumeration-based solver accepts.
class CapacityError : public std::runtime_error {
 public:
    CapacityError(const std::string& what, std::size_t n, std::size_t limit)
            : std::runtime_error(what), n_(n), limit_(limit) {}

    std::size_t n() const noexcept { return n_; }
    std::size_t limit() const noexcept { return limit_; }

 private:
    std::size_t n_;
    std::size_t limit_;
};

/// The restricted master LP has no feasible point. `rows()` lists the rows
/// that take part in the infeasibility certificate; index m denotes the
/// convexity row.
class InfeasibleError : public std::runtime_error {
 public:
    InfeasibleError(const std::string& what, std::vector<std::size_t> rows)
            : std::runtime_error(what), rows_(std::move(rows)) {}

    const std::vector<std::size_t>& rows() const noexcept { return rows_; }

 private:
    std::vector<std::size_t> rows_;
};

}  // namespace cgpp
