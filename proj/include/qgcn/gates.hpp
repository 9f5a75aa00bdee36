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

#pragma once

#include "qgcn/statevector.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace qgcn {

/**
 * Gate kinds and their matrices (qubit 0 = least significant bit):
 *
 *   RY(t)        = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
 *   U1(l)        = diag(1, e^{il})
 *   CU1(l)       = diag(1, 1, 1, e^{il})
 *   U3(t, p, l)  = [[cos t/2, -e^{il} sin t/2],
 *                   [e^{ip} sin t/2, e^{i(p+l)} cos t/2]]
 *   CU3(t, p, l) = |0><0| (x) I + |1><1| (x) U3(t, p, l)
 *   PAULI_X/Y/Z  = the Pauli matrices
 *
 * Controlled kinds list the control wire first.
 */
enum class GateKind { kRY, kU1, kCU1, kU3, kCU3, kPauliX, kPauliY, kPauliZ };

[[nodiscard]] std::string_view name_of(GateKind kind);
[[nodiscard]] std::size_t arity(GateKind kind);
[[nodiscard]] std::size_t wire_count(GateKind kind);
[[nodiscard]] bool is_controlled(GateKind kind);
[[nodiscard]] bool is_diagonal(GateKind kind);

inline constexpr std::ptrdiff_t kNoSlot = -1;

struct GateOp {
    GateKind kind = GateKind::kRY;
    /// Control first for controlled kinds; wires[1] unused otherwise.
    std::array<std::size_t, 2> wires{};
    /// Angles in radians; entries past arity(kind) are ignored.
    std::array<double, 3> params{};
    /// Angle-table index per parameter, or kNoSlot. Only consulted when
    /// `trainable` is set.
    std::array<std::ptrdiff_t, 3> slots{kNoSlot, kNoSlot, kNoSlot};
    bool trainable = false;

    [[nodiscard]] std::size_t target() const {
        return is_controlled(kind) ? wires[1] : wires[0];
    }
};

using Circuit = std::vector<GateOp>;

namespace gates {
GateOp ry(double theta, std::size_t wire);
GateOp u1(double lambda, std::size_t wire);
GateOp cu1(double lambda, std::size_t control, std::size_t target);
GateOp u3(double theta, double phi, double lambda, std::size_t wire);
GateOp cu3(double theta, double phi, double lambda, std::size_t control,
           std::size_t target);
GateOp pauli_x(std::size_t wire);
GateOp pauli_y(std::size_t wire);
GateOp pauli_z(std::size_t wire);
} // namespace gates

/// Throws ConfigError for wires >= num_qubits or repeated wires.
void validate(const GateOp &gate, std::size_t num_qubits);

/// Dense matrix of a gate: 2x2 for single-qubit kinds, 4x4 for controlled
/// kinds, row-major. The 4x4 basis is |control, target> with control as the
/// high bit.
struct GateMatrix {
    std::size_t dim = 2;
    std::array<cplx, 16> m{};

    [[nodiscard]] cplx operator()(std::size_t r, std::size_t c) const {
        return m[r * dim + c];
    }
};

[[nodiscard]] GateMatrix matrix_of(const GateOp &gate);

/// The 2x2 unitary a gate applies to its target (for controlled kinds, the
/// block applied when the control is |1>).
[[nodiscard]] Mat2 target_unitary(GateKind kind,
                                  const std::array<double, 3> &params);

void apply_gate(StateVector &state, const GateOp &gate);

/// Runs `circuit` from |0...0>.
[[nodiscard]] StateVector run_circuit(const Circuit &circuit,
                                      std::size_t num_qubits);

/// Runs `circuit` on a copy of `initial`.
[[nodiscard]] StateVector run_circuit(const Circuit &circuit,
                                      StateVector initial);

/// One term of a shift rule: coeff * [f(t + shift) - f(t - shift)].
struct ShiftTerm {
    double shift;
    double coeff;
};

/// d<O>/dt = sum over terms of coeff * [f(t + shift) - f(t - shift)].
struct ShiftRule {
    std::vector<ShiftTerm> terms;
};

/**
 * Parameter-shift metadata for parameter `param_index` of `kind`.
 *
 * Every parameter with a two-level generator spectrum uses the two-point
 * rule (pi/2, 1/2). The polar angle of CU3 has generator |1><1| (x) Y/2 with
 * eigenvalues {-1/2, 0, 1/2}, which needs the four-point rule
 * (pi/2, c+), (3pi/2, -c-), c+- = (sqrt2 +- 1) / (4 sqrt2).
 *
 * Returns nullopt for the Pauli kinds; throws ConfigError when
 * `param_index` is past the arity of a parameterized kind.
 */
[[nodiscard]] std::optional<ShiftRule> shift_rule_of(GateKind kind,
                                                     std::size_t param_index);

} // namespace qgcn
