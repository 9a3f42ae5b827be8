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

#ifndef STABSIM_GATES_H
#define STABSIM_GATES_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace stabsim {

enum class Gate : uint8_t { I, X, Y, Z, H, S, SDG, T, TDG, CX, CZ, CCZ, CCX, RZ, PHASE };

inline constexpr size_t kNumGates = 15;

std::string_view gate_name(Gate g);
std::optional<Gate> gate_from_name(std::string_view name);
size_t gate_arity(Gate g);
bool gate_takes_angle(Gate g);
/// Gates the CH-form engine applies natively.
bool gate_is_native_clifford(Gate g);

}  // namespace stabsim

#endif
