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

#ifndef STABSIM_GADGET_H
#define STABSIM_GADGET_H

#include <complex>
#include <cstddef>
#include <vector>

#include "stabsim/circuit.h"
#include "stabsim/decompose.h"
#include "stabsim/rng.h"
#include "stabsim/superposition.h"

namespace stabsim {

/// One diagonal non-Clifford gate replaced by CX(data -> ancilla) and a resource state on its ancillas.
struct Gadget {
    Op op;
    std::vector<size_t> ancillas;
    /// V = sum_j c_j K_j, so the resource state is sum_j c_j K_j |+^t>.
    GateDecomposition decomposition;
};

/// U|0^n> = 2^{tau/2} (1 x <0^tau|) C |0^n>|Psi>, with C Clifford on n + tau qubits.
struct GadgetizedCircuit {
    size_t num_data = 0;
    size_t tau = 0;
    /// Native Clifford gates only; ancillas are qubits num_data .. num_data + tau - 1.
    Circuit clifford;
    std::vector<Gadget> gadgets;
    /// Phase collected from single-term (Clifford) decompositions applied inline.
    std::complex<double> phase = 1.0;

    double renormalization() const;
    /// prod_j ||c^{(j)}||_1 over the gadgets.
    double l1_norm() const;
};

/// Throws for non-diagonal non-Clifford gates.
GadgetizedCircuit gadgetize(const Circuit &circuit, const DecompositionRegistry &registry);

/// Superposition on n + tau qubits equal to U|0^n> |0^tau> when k == 0 (exact sum), or its sparsified
/// estimate with k sampled resource-state terms. Postselection and 2^{tau/2} rescaling are applied.
StabilizerSuperposition gadget_superposition(const GadgetizedCircuit &g, size_t k, Rng &rng);

}  // namespace stabsim

#endif
