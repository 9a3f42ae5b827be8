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

#include "stabsim/circuit.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "stabsim/decompose.h"

namespace stabsim {

Circuit::Circuit(size_t num_qubits) : n_(num_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
}

Circuit &Circuit::append(Gate gate, std::vector<size_t> qubits, double angle) {
    if (qubits.size() != gate_arity(gate)) {
        throw std::invalid_argument(std::string(gate_name(gate)) + " expects " + std::to_string(gate_arity(gate)) +
                                    " qubits, got " + std::to_string(qubits.size()));
    }
    for (size_t k = 0; k < qubits.size(); k++) {
        if (qubits[k] >= n_) {
            throw std::out_of_range("qubit " + std::to_string(qubits[k]) + " out of range for " +
                                    std::to_string(n_) + " qubits");
        }
        for (size_t j = 0; j < k; j++) {
            if (qubits[j] == qubits[k]) {
                throw std::invalid_argument("repeated qubit in " + std::string(gate_name(gate)));
            }
        }
    }
    if (!gate_takes_angle(gate)) {
        angle = 0;
    } else if (!std::isfinite(angle)) {
        throw std::invalid_argument("angle must be finite");
    }
    if (gate == Gate::CCX) {
        ops_.push_back({Gate::H, {qubits[2]}, 0});
        ops_.push_back({Gate::CCZ, qubits, 0});
        ops_.push_back({Gate::H, {qubits[2]}, 0});
        return *this;
    }
    ops_.push_back({gate, std::move(qubits), angle});
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.n_ > n_) {
        throw std::invalid_argument("appended circuit has more qubits");
    }
    for (const auto &op : other.ops_) {
        append(op);
    }
    return *this;
}

CircuitParseError::CircuitParseError(size_t line, size_t column, const std::string &message)
    : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line(line),
      column(column) {
}

namespace {

struct Token {
    std::string_view text;
    size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && std::isspace((unsigned char)line[k])) {
            k++;
        }
        size_t start = k;
        while (k < line.size() && !std::isspace((unsigned char)line[k])) {
            k++;
        }
        if (k > start) {
            tokens.push_back({line.substr(start, k - start), start + 1});
        }
    }
    return tokens;
}

std::string lower(std::string_view s) {
    std::string r(s);
    for (auto &c : r) {
        c = (char)std::tolower((unsigned char)c);
    }
    return r;
}

bool parse_uint(std::string_view s, size_t &out) {
    if (s.empty()) {
        return false;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, long long &out) {
    if (s.empty()) {
        return false;
    }
    if (s[0] == '+') {
        s.remove_prefix(1);
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

double parse_angle(std::string_view token) {
    std::string t = lower(token);
    size_t pi = t.find("pi");
    if (pi == std::string::npos) {
        double value;
        std::string_view s = t;
        if (!s.empty() && s[0] == '+') {
            s.remove_prefix(1);
        }
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
            throw std::invalid_argument("malformed angle '" + std::string(token) + "'");
        }
        return value;
    }
    std::string_view prefix = std::string_view(t).substr(0, pi);
    std::string_view suffix = std::string_view(t).substr(pi + 2);
    long long numerator = 1;
    if (prefix == "-") {
        numerator = -1;
    } else if (!prefix.empty() && prefix != "+") {
        if (!parse_int(prefix, numerator)) {
            throw std::invalid_argument("malformed angle '" + std::string(token) + "'");
        }
    }
    long long denominator = 1;
    if (!suffix.empty()) {
        if (suffix[0] != '/' || !parse_int(suffix.substr(1), denominator) || denominator <= 0) {
            throw std::invalid_argument("malformed angle '" + std::string(token) + "'");
        }
    }
    return (double)numerator * std::numbers::pi / (double)denominator;
}

Circuit parse_circuit(std::string_view text) {
    Circuit circuit;
    bool have_header = false;
    size_t line_number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_number++;

        auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0].text[0] == '#') {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        if (!have_header) {
            if (lower(tokens[0].text) != "qubits") {
                throw CircuitParseError(line_number, tokens[0].column, "expected 'qubits N' header");
            }
            size_t n;
            if (tokens.size() != 2 || !parse_uint(tokens[1].text, n) || n == 0) {
                size_t col = tokens.size() > 1 ? tokens[1].column : tokens[0].column + tokens[0].text.size();
                throw CircuitParseError(line_number, col, "header needs a positive qubit count");
            }
            circuit = Circuit(n);
            have_header = true;
        } else {
            auto gate = gate_from_name(tokens[0].text);
            if (!gate.has_value()) {
                throw CircuitParseError(line_number, tokens[0].column,
                                        "unknown gate '" + std::string(tokens[0].text) + "'");
            }
            size_t k = 1;
            double angle = 0;
            if (gate_takes_angle(*gate)) {
                if (tokens.size() < 2) {
                    throw CircuitParseError(line_number, tokens[0].column + tokens[0].text.size(),
                                            std::string(gate_name(*gate)) + " requires an angle");
                }
                try {
                    angle = parse_angle(tokens[1].text);
                } catch (const std::invalid_argument &e) {
                    throw CircuitParseError(line_number, tokens[1].column, e.what());
                }
                k = 2;
            }
            std::vector<size_t> qubits;
            for (; k < tokens.size(); k++) {
                size_t q;
                if (!parse_uint(tokens[k].text, q)) {
                    throw CircuitParseError(line_number, tokens[k].column,
                                            "expected qubit index, got '" + std::string(tokens[k].text) + "'");
                }
                if (q >= circuit.num_qubits()) {
                    throw CircuitParseError(line_number, tokens[k].column,
                                            "qubit " + std::to_string(q) + " out of range for " +
                                                std::to_string(circuit.num_qubits()) + " qubits");
                }
                qubits.push_back(q);
            }
            size_t last = tokens.back().column;
            try {
                circuit.append(*gate, std::move(qubits), angle);
            } catch (const std::exception &e) {
                throw CircuitParseError(line_number, last, e.what());
            }
        }
        if (end == text.size()) {
            break;
        }
    }
    if (!have_header) {
        throw CircuitParseError(line_number == 0 ? 1 : line_number, 1, "missing 'qubits N' header");
    }
    return circuit;
}

Circuit read_circuit_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open circuit file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_circuit(buffer.str());
}

std::string render_op(const Op &op) {
    std::string line(gate_name(op.gate));
    if (gate_takes_angle(op.gate)) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), " %.17g", op.angle);
        line += buf;
    }
    for (size_t q : op.qubits) {
        line += ' ';
        line += std::to_string(q);
    }
    return line;
}

std::string render_circuit(const Circuit &circuit) {
    std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "\n";
    for (const auto &op : circuit.ops()) {
        out += render_op(op);
        out += '\n';
    }
    return out;
}

Classification classify(const Circuit &circuit, const DecompositionRegistry &registry) {
    Classification result;
    for (size_t k = 0; k < circuit.ops().size(); k++) {
        const Op &op = circuit.ops()[k];
        if (registry.is_clifford(op)) {
            result.clifford_count++;
        } else {
            result.non_clifford.push_back({k, op.gate, op.qubits.size()});
        }
    }
    return result;
}

}  // namespace stabsim
