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

#ifndef STABSIM_TESTS_TEST_UTIL_H
#define STABSIM_TESTS_TEST_UTIL_H

#include <complex>
#include <cstddef>
#include <vector>

#include "stabsim/bits.h"
#include "stabsim/chform.h"
#include "stabsim/circuit.h"
#include "stabsim/dense.h"
#include "stabsim/expsum.h"
#include "stabsim/rng.h"
#include "stabsim/superposition.h"

namespace stabsim::testing {

/// Uniformly chosen gates from {H, S, SDG, X, Y, Z, CX, CZ}.
Circuit random_clifford_circuit(size_t n, size_t gates, Rng &rng);

/// Clifford circuit with `t_count` T gates at random positions.
Circuit random_t_circuit(size_t n, size_t gates, size_t t_count, Rng &rng);

/// random_t_circuit followed by H S H on every qubit, which spreads the output over all of {0,1}^n.
Circuit spread_t_circuit(size_t n, size_t gates, size_t t_count, Rng &rng);

/// First spread_t_circuit drawn from (seed, attempt) streams whose output support is flip-connected and whose
/// distribution is far from uniform.
Circuit connected_t_circuit(size_t n, size_t gates, size_t t_count, uint64_t seed);

/// True when the positive-probability strings are connected under single-bit flips.
bool support_connected(const std::vector<double> &p, size_t n);

/// Runs a Clifford-only circuit from |0^n> in CH-form.
CHForm run_chform(const Circuit &circuit);

/// All 2^n amplitudes of a CH-form state.
Amplitudes chform_amplitudes(const CHForm &state);

/// Largest entrywise |a - b|.
double max_abs_diff(const Amplitudes &a, const Amplitudes &b);

/// Total variation distance between two distributions on the same support.
double tv_distance(const std::vector<double> &p, const std::vector<double> &q);

/// Brute-force sum over x of i^{x B x^T}.
std::complex<double> brute_expsum_z4(const QuadFormZ4 &b);

/// Brute-force sum over x of (-1)^{Q(x)}.
long long brute_expsum_z2(const QuadFormZ2 &q);

QuadFormZ4 random_quadform_z4(size_t n, Rng &rng);

/// Normalized Haar-like random vector of dimension 2^n.
Amplitudes random_state(size_t n, Rng &rng);

/// k random stabilizer terms with Gaussian complex coefficients.
StabilizerSuperposition random_superposition(size_t n, size_t k, Rng &rng);

/// Empirical distribution of bit strings over n qubits, indexed by basis_index.
std::vector<double> empirical_distribution(const std::vector<BitVec> &samples, size_t n);

/// Normalized output distribution of a superposition.
std::vector<double> superposition_distribution(const StabilizerSuperposition &psi);

}  // namespace stabsim::testing

#endif
