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

#ifndef STABSIM_DECOMPOSE_H
#define STABSIM_DECOMPOSE_H

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stabsim/circuit.h"
#include "stabsim/dense.h"

namespace stabsim {

struct DecompositionTerm {
    std::complex<double> coeff;
    /// Clifford circuit over the gate's local qubits 0..arity-1.
    Circuit clifford;
};

/// V = sum_j c_j K_j with Clifford K_j.
struct GateDecomposition {
    std::string name;
    size_t arity = 1;
    std::vector<DecompositionTerm> terms;
    /// Stabilizer extent of the gate when the decomposition is known to be optimal.
    std::optional<double> extent;

    double l1_norm() const;
    bool is_clifford() const {
        return terms.size() == 1;
    }
};

/// diag(e^{-i theta/2}, e^{i theta/2}).
GateDecomposition decomp_rz(double theta);
/// diag(1, e^{i theta}).
GateDecomposition decomp_phase(double theta);
GateDecomposition decomp_ccz();

/// Terms (c_j, K_j|+^t>) with K_j diagonal Clifford, given as 2^t amplitudes.
using StateDecomposition = std::vector<std::pair<std::complex<double>, Amplitudes>>;
/// Turns sum_j c_j K_j|+^t> into sum_j c_j K_j. Throws if a state is not equatorial.
GateDecomposition lift(const StateDecomposition &states, std::string name = "lifted");

/// Columns of sum_j c_j K_j.
std::vector<Amplitudes> decomposition_matrix(const GateDecomposition &d);
/// Columns of the gate's unitary on its own qubits.
std::vector<Amplitudes> gate_matrix(Gate gate, double angle = 0);
/// Largest entrywise deviation between the decomposition and the gate.
double decomposition_error(const GateDecomposition &d, Gate gate, double angle = 0);

class DecompositionRegistry {
   public:
    DecompositionRegistry() = default;

    /// Decomposition for op, or nullopt when the gate is applied natively.
    std::optional<GateDecomposition> lookup(const Op &op) const;
    bool is_clifford(const Op &op) const;

    /// Overrides the built-in decomposition; validated against the gate matrix.
    void add(Gate gate, std::optional<double> angle, GateDecomposition d);
    void load_json(const nlohmann::json &j);
    void load_file(const std::string &path);

   private:
    struct Entry {
        Gate gate;
        std::optional<double> angle;
        GateDecomposition decomposition;
    };
    std::vector<Entry> overrides_;
};

/// prod_j ||c^{(j)}||_1^2 over the non-Clifford gates.
double extent_product_bound(const Circuit &circuit, const DecompositionRegistry &registry);

}  // namespace stabsim

#endif
