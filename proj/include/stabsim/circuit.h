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

#ifndef STABSIM_CIRCUIT_H
#define STABSIM_CIRCUIT_H

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stabsim/gates.h"

namespace stabsim {

struct Op {
    Gate gate;
    std::vector<size_t> qubits;
    double angle = 0;

    bool operator==(const Op &other) const = default;
};

class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(size_t num_qubits);

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<Op> &ops() const {
        return ops_;
    }
    size_t size() const {
        return ops_.size();
    }

    /// Validates and appends; CCX is rewritten as H(c) CCZ H(c).
    Circuit &append(Gate gate, std::vector<size_t> qubits, double angle = 0);
    Circuit &append(const Op &op) {
        return append(op.gate, op.qubits, op.angle);
    }
    Circuit &append(const Circuit &other);

    bool operator==(const Circuit &other) const = default;

   private:
    size_t n_ = 0;
    std::vector<Op> ops_;
};

class CircuitParseError : public std::invalid_argument {
   public:
    CircuitParseError(size_t line, size_t column, const std::string &message);
    size_t line;
    size_t column;
};

Circuit parse_circuit(std::string_view text);
Circuit read_circuit_file(const std::string &path);
std::string render_circuit(const Circuit &circuit);
std::string render_op(const Op &op);
/// Parses an angle literal: FLOAT or [INT]pi[/INT], with optional sign.
double parse_angle(std::string_view token);

class DecompositionRegistry;

struct NonCliffordEntry {
    size_t index;
    Gate gate;
    size_t arity;
};

struct Classification {
    size_t clifford_count = 0;
    std::vector<NonCliffordEntry> non_clifford;
};

/// Splits ops into Clifford and non-Clifford according to the registry.
Classification classify(const Circuit &circuit, const DecompositionRegistry &registry);

}  // namespace stabsim

#endif
