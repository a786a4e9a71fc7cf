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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cgpp {

/// Every random stream in the library is a std::mt19937_64, whose output
/// sequence is fixed by the C++ standard (and by the reference MT19937-64
/// implementation), so seeded results reproduce across platforms.
using Rng = std::mt19937_64;

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent sub-seed by folding each tag into the base seed:
/// h = splitmix64(base); for each tag t: h = splitmix64(h ^ t).
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> tags) noexcept {
    std::uint64_t h = splitmix64(base);
    for (auto t : tags) h = splitmix64(h ^ t);
    return h;
}

/// One fair bit per draw: the most significant bit of the next output.
inline bool draw_bit(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace cgpp
