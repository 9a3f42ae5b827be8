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

#ifndef STABSIM_SAMPLER_H
#define STABSIM_SAMPLER_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stabsim/bits.h"
#include "stabsim/rng.h"
#include "stabsim/superposition.h"

namespace stabsim {

/// Metropolis chain over x in {0,1}^n with target |<x|psi>|^2 and single-bit-flip proposals.
/// Each term caches Q_x = U_C^-1 X(x) U_C as i^mu X(a) Z(b), so a proposal costs O(k n / 64).
class MetropolisChain {
   public:
    /// Draws the start from a term chosen with probability ~ |b|^2, retrying while P(x) = 0.
    MetropolisChain(const StabilizerSuperposition &psi, Rng &rng, size_t max_start_retries = 100);

    const BitVec &current() const {
        return x_;
    }
    std::complex<double> amplitude() const {
        return amp_;
    }
    /// One proposal; returns true when accepted.
    bool step(Rng &rng);
    /// Amplitude of the current x from the tableaux, bypassing the cache.
    std::complex<double> recompute_amplitude() const;
    /// Amplitude of x with bit q flipped, via the cache.
    std::complex<double> flipped_amplitude(size_t q) const;

    size_t accepted() const {
        return accepted_;
    }
    size_t proposed() const {
        return proposed_;
    }

   private:
    std::complex<double> evaluate(const uint64_t *a, const uint64_t *b, const uint8_t *mu) const;
    void reset_to(const BitVec &x);

    size_t n_ = 0;
    size_t k_ = 0;
    size_t w_ = 0;
    const StabilizerSuperposition *psi_ = nullptr;
    // Per-term flattened tableau data.
    std::vector<uint64_t> f_, m_, s_, v_;
    std::vector<uint8_t> gamma_;
    std::vector<std::complex<double>> weight_;
    // Per-term cached accumulators for x and scratch for the candidate.
    std::vector<uint64_t> a_, b_;
    std::vector<uint8_t> mu_;
    mutable std::vector<uint64_t> a_next_, b_next_;
    mutable std::vector<uint8_t> mu_next_;
    BitVec x_;
    std::complex<double> amp_;
    size_t accepted_ = 0;
    size_t proposed_ = 0;
};

struct MetropolisResult {
    std::vector<BitVec> samples;
    size_t accepted = 0;
    size_t proposed = 0;
};

/// Runs burn_in steps, then records the state after each of `steps` further steps.
MetropolisResult metropolis_sample(const StabilizerSuperposition &psi, size_t steps, size_t burn_in, Rng &rng);

/// Norm oracle used by the chain-rule sampler: (state, seed) -> estimate of ||state||^2.
using NormFunction = std::function<double(const StabilizerSuperposition &, uint64_t)>;

struct ChainRuleOptions {
    /// Number of leading bits to sample.
    size_t w = 0;
    /// Per-branch relative error; 0 selects min(0.1, 1/(4w)).
    double eps_norm = 0;
    double p_fail = 0.05;
    size_t workers = 1;
    size_t max_retries = 100;
    /// Merge identical terms after each projection.
    bool compact = true;
};

/// Samples bits one at a time from estimated branch norms. Estimates are memoized per prefix, so
/// repeated draws reuse them and all draws come from one fixed approximate distribution.
class ChainRuleSampler {
   public:
    ChainRuleSampler(const StabilizerSuperposition &psi, ChainRuleOptions options, uint64_t seed);
    /// Replaces estimate_norm, e.g. by an exact oracle in tests.
    ChainRuleSampler(const StabilizerSuperposition &psi, ChainRuleOptions options, uint64_t seed, NormFunction norm);

    BitVec sample(Rng &rng);
    /// Probability the sampler assigns to a w-bit prefix (product of the normalized branch estimates).
    double prefix_probability(const BitVec &prefix);
    size_t norm_evaluations() const {
        return evaluations_;
    }
    double eps_norm() const {
        return eps_;
    }

   private:
    struct Node {
        StabilizerSuperposition state;
        double norm = 0;
    };
    Node &node(const std::string &prefix);

    size_t n_;
    ChainRuleOptions options_;
    double eps_;
    uint64_t seed_;
    NormFunction norm_;
    std::map<std::string, Node> nodes_;
    size_t evaluations_ = 0;
};

std::vector<BitVec> chain_rule_sample(const StabilizerSuperposition &psi, size_t count, ChainRuleOptions options,
                                      uint64_t seed);

/// Partial assignment: pairs (qubit, bit).
using Assignment = std::vector<std::pair<size_t, bool>>;

struct ProbabilityEstimate {
    double probability = 0;
    double numerator = 0;
    double denominator = 0;
};

/// ||Pi psi||^2 / ||psi||^2 with each norm estimated to relative error eps/3 and failure p_fail/2.
ProbabilityEstimate estimate_output_probability(const StabilizerSuperposition &psi, const Assignment &assignment,
                                                double eps, double p_fail, uint64_t seed, size_t workers = 1);

/// P(x_j = 1) for the first `count` qubits, sharing one estimate of ||psi||^2.
std::vector<double> estimate_marginals(const StabilizerSuperposition &psi, size_t count, const NormOptions &options,
                                       uint64_t seed);

/// Batch-means standard error of a correlated series.
double batch_means_stderr(const std::vector<double> &series, size_t batches = 20);

}  // namespace stabsim

#endif
