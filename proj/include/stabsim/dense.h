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

#ifndef STABSIM_DENSE_H
#define STABSIM_DENSE_H

#include <complex>
#include <cstddef>
#include <vector>

#include "stabsim/bits.h"
#include "stabsim/circuit.h"

namespace stabsim {

using Amplitudes = std::vector<std::complex<double>>;

/// Statevector over n qubits; qubit j is bit j of the basis index.
struct DenseState {
    size_t n = 0;
    Amplitudes amps;

    static DenseState zero(size_t n);
    static DenseState basis(const BitVec &x);
    std::complex<double> amplitude(const BitVec &x) const;
};

/// Qubit cap for the oracle, STABSIM_MAX_DENSE_QUBITS or 14.
size_t max_dense_qubits();

size_t basis_index(const BitVec &x);
BitVec index_bits(size_t index, size_t n);

void dense_apply(DenseState &state, const Op &op);
void dense_apply(DenseState &state, const Circuit &circuit);
void dense_apply_1q(DenseState &state, size_t q, const std::complex<double> m[4]);
DenseState dense_run(const Circuit &circuit);

std::vector<double> dense_distribution(const DenseState &state);
double dense_norm2(const DenseState &state);
/// <a|b>
std::complex<double> dense_inner(const DenseState &a, const DenseState &b);

/// Column k is circuit applied to basis state k.
std::vector<Amplitudes> dense_unitary(const Circuit &circuit);

}  // namespace stabsim

#endif
