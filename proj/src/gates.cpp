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

#include "qgcn/gates.hpp"

#include "qgcn/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qgcn {

namespace {

const cplx kI{0.0, 1.0};

Mat2 u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {c, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s,
            std::exp(kI * (phi + lambda)) * c};
}

} // namespace

std::string_view name_of(GateKind kind) {
    switch (kind) {
    case GateKind::kRY:
        return "RY";
    case GateKind::kU1:
        return "U1";
    case GateKind::kCU1:
        return "CU1";
    case GateKind::kU3:
        return "U3";
    case GateKind::kCU3:
        return "CU3";
    case GateKind::kPauliX:
        return "PAULI_X";
    case GateKind::kPauliY:
        return "PAULI_Y";
    case GateKind::kPauliZ:
        return "PAULI_Z";
    }
    return "?";
}

std::size_t arity(GateKind kind) {
    switch (kind) {
    case GateKind::kRY:
    case GateKind::kU1:
    case GateKind::kCU1:
        return 1;
    case GateKind::kU3:
    case GateKind::kCU3:
        return 3;
    default:
        return 0;
    }
}

bool is_controlled(GateKind kind) {
    return kind == GateKind::kCU1 || kind == GateKind::kCU3;
}

std::size_t wire_count(GateKind kind) { return is_controlled(kind) ? 2 : 1; }

bool is_diagonal(GateKind kind) {
    return kind == GateKind::kU1 || kind == GateKind::kCU1 ||
           kind == GateKind::kPauliZ;
}

namespace gates {

GateOp ry(double theta, std::size_t wire) {
    return {GateKind::kRY, {wire, 0}, {theta, 0, 0}};
}
GateOp u1(double lambda, std::size_t wire) {
    return {GateKind::kU1, {wire, 0}, {lambda, 0, 0}};
}
GateOp cu1(double lambda, std::size_t control, std::size_t target) {
    return {GateKind::kCU1, {control, target}, {lambda, 0, 0}};
}
GateOp u3(double theta, double phi, double lambda, std::size_t wire) {
    return {GateKind::kU3, {wire, 0}, {theta, phi, lambda}};
}
GateOp cu3(double theta, double phi, double lambda, std::size_t control,
           std::size_t target) {
    return {GateKind::kCU3, {control, target}, {theta, phi, lambda}};
}
GateOp pauli_x(std::size_t wire) { return {GateKind::kPauliX, {wire, 0}, {}}; }
GateOp pauli_y(std::size_t wire) { return {GateKind::kPauliY, {wire, 0}, {}}; }
GateOp pauli_z(std::size_t wire) { return {GateKind::kPauliZ, {wire, 0}, {}}; }

} // namespace gates

void validate(const GateOp &gate, std::size_t num_qubits) {
    const std::size_t nw = wire_count(gate.kind);
    for (std::size_t i = 0; i < nw; ++i) {
        if (gate.wires[i] >= num_qubits) {
            throw ConfigError(std::string(name_of(gate.kind)) + ": wire " +
                              std::to_string(gate.wires[i]) +
                              " out of range for " +
                              std::to_string(num_qubits) + " qubits");
        }
    }
    if (nw == 2 && gate.wires[0] == gate.wires[1]) {
        throw ConfigError(std::string(name_of(gate.kind)) +
                          ": control and target must differ");
    }
}

Mat2 target_unitary(GateKind kind, const std::array<double, 3> &p) {
    switch (kind) {
    case GateKind::kRY: {
        const double c = std::cos(p[0] / 2);
        const double s = std::sin(p[0] / 2);
        return {c, -s, s, c};
    }
    case GateKind::kU1:
    case GateKind::kCU1:
        return {1.0, 0.0, 0.0, std::exp(kI * p[0])};
    case GateKind::kU3:
    case GateKind::kCU3:
        return u3_matrix(p[0], p[1], p[2]);
    case GateKind::kPauliX:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::kPauliY:
        return {0.0, -kI, kI, 0.0};
    case GateKind::kPauliZ:
        return {1.0, 0.0, 0.0, -1.0};
    }
    return {1.0, 0.0, 0.0, 1.0};
}

GateMatrix matrix_of(const GateOp &gate) {
    const Mat2 u = target_unitary(gate.kind, gate.params);
    GateMatrix out;
    if (!is_controlled(gate.kind)) {
        out.dim = 2;
        for (std::size_t i = 0; i < 4; ++i) {
            out.m[i] = u[i];
        }
        return out;
    }
    out.dim = 4;
    out.m[0 * 4 + 0] = 1.0;
    out.m[1 * 4 + 1] = 1.0;
    out.m[2 * 4 + 2] = u[0];
    out.m[2 * 4 + 3] = u[1];
    out.m[3 * 4 + 2] = u[2];
    out.m[3 * 4 + 3] = u[3];
    return out;
}

void apply_gate(StateVector &state, const GateOp &gate) {
    switch (gate.kind) {
    case GateKind::kU1:
        state.apply_phase(std::exp(kI * gate.params[0]), gate.wires[0]);
        return;
    case GateKind::kCU1:
        state.apply_controlled_phase(std::exp(kI * gate.params[0]),
                                     gate.wires[0], gate.wires[1]);
        return;
    case GateKind::kCU3:
        state.apply_controlled(target_unitary(gate.kind, gate.params),
                               gate.wires[0], gate.wires[1]);
        return;
    default:
        state.apply_single(target_unitary(gate.kind, gate.params),
                           gate.wires[0]);
        return;
    }
}

StateVector run_circuit(const Circuit &circuit, std::size_t num_qubits) {
    return run_circuit(circuit, StateVector::ground(num_qubits));
}

StateVector run_circuit(const Circuit &circuit, StateVector initial) {
    for (const auto &gate : circuit) {
        apply_gate(initial, gate);
    }
    return initial;
}

std::optional<ShiftRule> shift_rule_of(GateKind kind,
                                       std::size_t param_index) {
    const std::size_t n = arity(kind);
    if (n == 0) {
        return std::nullopt;
    }
    if (param_index >= n) {
        throw ConfigError(std::string(name_of(kind)) + " has no parameter " +
                          std::to_string(param_index));
    }
    constexpr double kHalfPi = std::numbers::pi / 2;
    if (kind == GateKind::kCU3 && param_index == 0) {
        const double r2 = std::numbers::sqrt2;
        const double c_plus = (r2 + 1.0) / (4.0 * r2);
        const double c_minus = (r2 - 1.0) / (4.0 * r2);
        return ShiftRule{{{kHalfPi, c_plus}, {3.0 * kHalfPi, -c_minus}}};
    }
    return ShiftRule{{{kHalfPi, 0.5}}};
}

} // namespace qgcn
