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

#ifndef STABSIM_GENERATORS_H
#define STABSIM_GENERATORS_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabsim/bits.h"
#include "stabsim/circuit.h"
#include "stabsim/dense.h"

namespace stabsim {

enum class HiddenShiftStyle {
    /// Cubic terms emitted as CCZ gates.
    CCZ,
    /// Cubic terms emitted as T/TDG gates through one clean ancilla (8 T per cubic term).
    T,
};

struct HiddenShiftInstance {
    Circuit circuit;
    /// Planted shift on the n data qubits.
    BitVec shift;
    /// Ideal output on all circuit qubits: the shift followed by zeros on any ancilla.
    BitVec expected_output() const;
};

/// Bent-function hidden shift circuit whose ideal output is the point mass on the shift.
/// Verified against the dense oracle when the circuit fits under max_dense_qubits().
HiddenShiftInstance gen_hidden_shift(size_t n, size_t ccz_count, uint64_t seed,
                                     HiddenShiftStyle style = HiddenShiftStyle::CCZ);

struct E3Lin2Term {
    size_t u, v, w;
    int d;
    bool operator==(const E3Lin2Term &) const = default;
};

struct E3Lin2Instance {
    size_t n = 0;
    size_t D = 0;
    std::vector<E3Lin2Term> terms;

    nlohmann::json to_json() const;
    static E3Lin2Instance from_json(const nlohmann::json &j);
    bool operator==(const E3Lin2Instance &) const = default;
};

/// Random instance where every variable occurs in exactly D terms, one possibly fewer.
E3Lin2Instance random_e3lin2(size_t n, size_t D, uint64_t seed);

/// H^n, then exp(-i gamma d Z_u Z_v Z_w / 2) per term, then exp(-i pi/4 sum_j X_j).
Circuit qaoa_circuit(const E3Lin2Instance &instance, double gamma);

struct QaoaInstance {
    E3Lin2Instance instance;
    Circuit circuit;
};

QaoaInstance gen_qaoa_e3lin2(size_t n, size_t D, double gamma, uint64_t seed);

/// C(z) = 1/2 sum d z_u z_v z_w with z in {+1, -1}^n.
double cost_e3lin2(const E3Lin2Instance &instance, const std::vector<int> &z);
/// Same cost with z_j = (-1)^{x_j}.
double cost_e3lin2_bits(const E3Lin2Instance &instance, const BitVec &x);

/// Exact expectation of C over the output distribution of the state.
double qaoa_energy_dense(const E3Lin2Instance &instance, const DenseState &state);

struct MonteCarloEstimate {
    double mean = 0;
    double std_error = 0;
    size_t samples = 0;
};

/// Uniform-sampling estimate of E(gamma) = <+|e^{i gamma C} F e^{-i gamma C}|+> with F = 1/2 sum d Y_u Y_v Y_w,
/// the cost conjugated by the beta = pi/4 mixer. Cost per sample is O(m^2), independent of n otherwise.
MonteCarloEstimate qaoa_energy_monte_carlo(const E3Lin2Instance &instance, double gamma, size_t samples,
                                           uint64_t seed);

}  // namespace stabsim

#endif
