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

#include "stabsim/rng.h"

#include <stdexcept>

namespace stabsim {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t fnv1a(std::string_view text) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h = (h ^ c) * 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

Rng derive_rng(uint64_t seed, uint64_t worker, std::string_view purpose) {
    uint64_t a = splitmix64(seed);
    uint64_t b = splitmix64(a ^ splitmix64(worker + 0x632BE59BD9B4E019ULL));
    uint64_t c = splitmix64(b ^ fnv1a(purpose));
    std::seed_seq seq{(uint32_t)a, (uint32_t)(a >> 32), (uint32_t)b, (uint32_t)(b >> 32), (uint32_t)c,
                      (uint32_t)(c >> 32)};
    return Rng(seq);
}

uint64_t uniform_below(Rng &rng, uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_below: empty range");
    }
    uint64_t limit = -n % n;
    while (true) {
        uint64_t x = rng();
        __uint128_t m = (__uint128_t)x * n;
        if ((uint64_t)m >= limit) {
            return (uint64_t)(m >> 64);
        }
    }
}

}  // namespace stabsim
