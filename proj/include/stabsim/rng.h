// Copyright 2026 The stabsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABSIM_RNG_H
#define STABSIM_RNG_H

#include <cstdint>
#include <random>
#include <string_view>

namespace stabsim {

using Rng = std::mt19937_64;

/// Independent stream for (master seed, worker id, purpose tag).
Rng derive_rng(uint64_t seed, uint64_t worker, std::string_view purpose);

/// Uniform double in [0, 1) from 53 random bits.
inline double uniform01(Rng &rng) {
    return (double)(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, n).
uint64_t uniform_below(Rng &rng, uint64_t n);

}  // namespace stabsim

#endif
