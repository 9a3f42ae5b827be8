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

#ifndef STABSIM_EXTENT_H
#define STABSIM_EXTENT_H

#include <Eigen/Dense>
#include <cstddef>

#include "stabsim/dense.h"

namespace stabsim {

/// All n-qubit stabilizer states (n <= 3) as normalized columns, global phase fixed so the first nonzero
/// amplitude is real positive.
struct StabilizerDictionary {
    size_t n = 0;
    Eigen::MatrixXcd states;
};

const StabilizerDictionary &enumerate_stabilizers(size_t n);

/// max over stabilizer states phi of |<phi|psi>|^2.
double stabilizer_fidelity(const Amplitudes &psi);

struct ExtentResult {
    /// ||c||_1^2 of the returned decomposition.
    double extent = 0;
    /// |<psi|w>|^2 / F(w) for the dual witness w.
    double lower_bound = 0;
    double gap = 0;
    Eigen::VectorXcd coefficients;
    size_t newton_steps = 0;
};

/// min ||c||_1^2 subject to sum_j c_j phi_j = psi, certified by a dual witness to within tol.
ExtentResult solve_extent(const Amplitudes &psi, double tol = 1e-7);

}  // namespace stabsim

#endif
