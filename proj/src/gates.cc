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

#include "stabsim/gates.h"

#include <array>
#include <cctype>
#include <string>

namespace stabsim {

namespace {

struct GateInfo {
    std::string_view name;
    size_t arity;
    bool angle;
    bool native;
};

constexpr std::array<GateInfo, kNumGates> kGates{{
    {"I", 1, false, true},
    {"X", 1, false, true},
    {"Y", 1, false, true},
    {"Z", 1, false, true},
    {"H", 1, false, true},
    {"S", 1, false, true},
    {"SDG", 1, false, true},
    {"T", 1, false, false},
    {"TDG", 1, false, false},
    {"CX", 2, false, true},
    {"CZ", 2, false, true},
    {"CCZ", 3, false, false},
    {"CCX", 3, false, false},
    {"RZ", 1, true, false},
    {"PHASE", 1, true, false},
}};

}  // namespace

std::string_view gate_name(Gate g) {
    return kGates[(size_t)g].name;
}

std::optional<Gate> gate_from_name(std::string_view name) {
    std::string upper(name);
    for (auto &c : upper) {
        c = (char)std::toupper((unsigned char)c);
    }
    for (size_t k = 0; k < kNumGates; k++) {
        if (kGates[k].name == upper) {
            return (Gate)k;
        }
    }
    return std::nullopt;
}

size_t gate_arity(Gate g) {
    return kGates[(size_t)g].arity;
}

bool gate_takes_angle(Gate g) {
    return kGates[(size_t)g].angle;
}

bool gate_is_native_clifford(Gate g) {
    return kGates[(size_t)g].native;
}

}  // namespace stabsim
