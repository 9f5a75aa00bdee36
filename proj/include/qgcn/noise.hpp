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
#include "qgcn/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace qgcn {

/// Software emulation of device error: per-gate depolarizing noise sampled
/// as Pauli trajectories, plus analytic readout bit-flips.
struct NoiseModel {
    double gate_error_1q = 0.0;
    double gate_error_2q = 0.0;
    double readout_flip = 0.0;
    std::size_t trajectories = 1;
    std::uint64_t seed = 0;

    void validate() const;

    [[nodiscard]] bool gates_are_noisy() const {
        return gate_error_1q > 0.0 || gate_error_2q > 0.0;
    }

    /// Named presets: "none" and "default" (p1=0.005, p2=0.02, pr=0.02,
    /// T=256). Anything else is parsed as "p1,p2,pr,T".
    static NoiseModel parse(const std::string &text, std::uint64_t seed = 0);

    /// Round-trips through parse().
    [[nodiscard]] std::string to_string() const;
};

/// Random gate insertion used as a robustness-training baseline.
struct InjectionPolicy {
    double insert_prob = 0.1;
    double angle_spread = std::numbers::pi / 8;

    void validate() const;
};

/**
 * Per-wire Pauli-Z expectations of `circuit` under `model`.
 *
 * Each trajectory runs the circuit and, after every gate, hits each touched
 * wire with probability p1 (1-qubit gate) or p2 (2-qubit gate) with a
 * uniformly chosen X, Y or Z. Trajectory t draws from its own stream
 * Rng::stream(seed, t); the average is accumulated in trajectory order.
 * Readout flips scale every expectation by (1 - 2 pr) exactly.
 *
 * With p1 = p2 = 0 the circuit is run once and T is ignored.
 */
[[nodiscard]] std::vector<double> noisy_forward(const Circuit &circuit,
                                                std::size_t num_qubits,
                                                const NoiseModel &model);

/// After each gate, with probability insert_prob, appends a non-trainable
/// RY(angle ~ U[-spread, spread]) on a uniformly chosen wire of that gate.
[[nodiscard]] Circuit inject_random_gates(const Circuit &circuit,
                                          const InjectionPolicy &policy,
                                          Rng &rng);

} // namespace qgcn
