// Copyright 2026 The qgcn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qgcn/gradient.hpp"

#include "qgcn/errors.hpp"

#include <string>

namespace qgcn {

namespace {

bool differentiable(const GateOp &gate, std::size_t k) {
    return gate.trainable && gate.slots[k] != kNoSlot;
}

} // namespace

std::size_t shift_evaluation_count(const Circuit &circuit) {
    std::size_t count = 0;
    for (const auto &gate : circuit) {
        for (std::size_t k = 0; k < arity(gate.kind); ++k) {
            if (differentiable(gate, k)) {
                count += 2 * shift_rule_of(gate.kind, k)->terms.size();
            }
        }
    }
    return count;
}

QuantumGradient quantum_grad(const Circuit &circuit, std::size_t num_qubits,
                             std::size_t num_slots) {
    for (const auto &gate : circuit) {
        validate(gate, num_qubits);
        if (gate.trainable && arity(gate.kind) == 0) {
            throw ConfigError(std::string(name_of(gate.kind)) +
                              " is marked trainable but has no shift rule");
        }
        for (std::size_t k = 0; k < arity(gate.kind); ++k) {
            if (differentiable(gate, k) &&
                static_cast<std::size_t>(gate.slots[k]) >= num_slots) {
                throw ConfigError("gate slot " +
                                  std::to_string(gate.slots[k]) +
                                  " outside angle table of size " +
                                  std::to_string(num_slots));
            }
        }
    }

    QuantumGradient out;
    out.jacobian = Matrix::Zero(static_cast<Eigen::Index>(num_slots),
                                static_cast<Eigen::Index>(num_qubits));

    // prefix holds the state before gate g.
    StateVector prefix = StateVector::ground(num_qubits);
    for (std::size_t g = 0; g < circuit.size(); ++g) {
        const GateOp &gate = circuit[g];
        for (std::size_t k = 0; k < arity(gate.kind); ++k) {
            if (!differentiable(gate, k)) {
                continue;
            }
            const ShiftRule rule = *shift_rule_of(gate.kind, k);
            auto row = out.jacobian.row(gate.slots[k]);
            for (const auto &term : rule.terms) {
                for (const double sign : {1.0, -1.0}) {
                    GateOp shifted = gate;
                    shifted.params[k] += sign * term.shift;
                    StateVector s = prefix;
                    apply_gate(s, shifted);
                    for (std::size_t h = g + 1; h < circuit.size(); ++h) {
                        apply_gate(s, circuit[h]);
                    }
                    const auto z = s.expect_z_all();
                    for (std::size_t w = 0; w < num_qubits; ++w) {
                        row(static_cast<Eigen::Index>(w)) +=
                            sign * term.coeff * z[w];
                    }
                    ++out.evaluations;
                }
            }
        }
        apply_gate(prefix, gate);
    }
    return out;
}

Vector finite_diff_oracle(const std::function<double(const Vector &)> &f,
                          const Vector &x, double h) {
    if (!(h > 0.0)) {
        throw ConfigError("finite_diff_oracle: step must be positive");
    }
    Vector grad(x.size());
    Vector probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe(i) = x(i) + h;
        const double up = f(probe);
        probe(i) = x(i) - h;
        const double down = f(probe);
        probe(i) = x(i);
        grad(i) = (up - down) / (2.0 * h);
    }
    return grad;
}

} // namespace qgcn
