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

#include "qgcn/gates.hpp"
#include "qgcn/graph_data.hpp"

#include <cstddef>
#include <functional>

namespace qgcn {

/// d<Z_w>/d(angle slot) for every slot and wire.
struct QuantumGradient {
    Matrix jacobian;             ///< num_slots x num_qubits
    std::size_t evaluations = 0; ///< shifted circuit runs (forward excluded)
};

/**
 * Parameter-shift Jacobian of all Pauli-Z expectations.
 *
 * Every parameter of a gate with `trainable` set and a slot >= 0 is
 * differentiated with its shift rule: each term costs two full circuit
 * evaluations, and the partial is added to row `slot` (slots shared by
 * several gates accumulate). Runs are noiseless.
 *
 * Throws ConfigError if a trainable gate has no shift metadata (Pauli kinds)
 * or a slot is >= num_slots.
 */
[[nodiscard]] QuantumGradient quantum_grad(const Circuit &circuit,
                                           std::size_t num_qubits,
                                           std::size_t num_slots);

/// Number of circuit evaluations quantum_grad will spend on `circuit`.
[[nodiscard]] std::size_t shift_evaluation_count(const Circuit &circuit);

/// Central differences of `f` at `x`, one coordinate at a time.
/// Verification only. Throws ConfigError when h <= 0.
[[nodiscard]] Vector
finite_diff_oracle(const std::function<double(const Vector &)> &f,
                   const Vector &x, double h);

/// Gradient of a model's total loss, aligned with its ModelParams.
struct GradientReport {
    Vector gradient;
    double loss = 0.0;
    double classical_norm = 0.0;
    double quantum_norm = 0.0;
    /// Circuit executions: one forward plus every shifted evaluation.
    std::size_t evaluations = 0;
};

} // namespace qgcn
