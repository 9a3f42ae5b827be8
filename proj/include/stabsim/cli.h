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

#ifndef STABSIM_CLI_H
#define STABSIM_CLI_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabsim/circuit.h"
#include "stabsim/decompose.h"
#include "stabsim/sampler.h"

namespace stabsim {

enum class Method { SumOverCliffords, GadgetFixed };
enum class SamplerKind { Metropolis, ChainRule };
enum class OutputFormat { Bits, Jsonl };

struct RunConfig {
    Method method = Method::SumOverCliffords;
    double delta = 0.1;
    double eps = 0.1;
    /// False when eps was not given; the chain-rule sampler then uses its own per-bit default.
    bool eps_given = false;
    double p_fail = 0.05;
    SamplerKind sampler = SamplerKind::Metropolis;
    /// Metropolis steps between emitted samples.
    size_t steps = 1;
    size_t burn_in = 1000;
    size_t samples = 1000;
    /// Chain-rule bits per sample; 0 means all data qubits.
    size_t width = 0;
    uint64_t seed = 1;
    size_t workers = 1;
    std::string out;
    OutputFormat format = OutputFormat::Bits;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

/// Sparsified superposition for a circuit under the configured method.
struct PreparedRun {
    StabilizerSuperposition state;
    size_t num_data = 0;
    size_t k = 0;
    size_t tau = 0;
    double l1_norm = 1;
    double extent_bound = 1;
};

PreparedRun prepare_run(const RunConfig &config, const Circuit &circuit, const DecompositionRegistry &registry);

/// Writes the sample stream and returns the summary {k, extent_bound, delta, seed, wall_time, ...}.
nlohmann::json cmd_simulate(const RunConfig &config, const Circuit &circuit, const DecompositionRegistry &registry,
                            std::ostream &samples_out);

/// Pattern over {0, 1, *}; position j constrains qubit j. A shorter pattern leaves the remaining qubits free.
Assignment parse_assignment(const std::string &pattern, size_t n);

nlohmann::json cmd_probability(const RunConfig &config, const Circuit &circuit, const DecompositionRegistry &registry,
                               const std::string &pattern);

/// Target is a gate name (T, TDG, CCZ, RZ:<angle>, PHASE:<angle>) meaning its magic state V|+^t>,
/// or one of the states zero, plus, face.
nlohmann::json cmd_extent(const std::string &target, double tol = 1e-7);
nlohmann::json cmd_extent_amplitudes(const Amplitudes &psi, double tol = 1e-7);

struct BenchParams {
    size_t n = 40;
    size_t D = 4;
    std::vector<size_t> ccz_counts{2, 4, 6};
    std::vector<double> gammas;
    double delta = 0.3;
    double eps = 0.3;
    double p_fail = 0.05;
    size_t seeds = 1;
    size_t samples = 10000;
    size_t burn_in = 1000;
    uint64_t seed = 1;
    size_t workers = 1;
};

inline constexpr const char *kBenchHeader = "suite,instance,n,param,seed,k,extent_bound,runtime_s,error_metric";

/// CSV with kBenchHeader for suite "hidden-shift" or "qaoa".
void cmd_bench(const std::string &suite, const BenchParams &params, std::ostream &csv);

/// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace stabsim

#endif
