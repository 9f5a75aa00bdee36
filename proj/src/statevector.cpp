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

#include "qgcn/statevector.hpp"

#include "qgcn/errors.hpp"

#include <cmath>
#include <string>

namespace qgcn {

StateVector StateVector::ground(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("qubit count " + std::to_string(num_qubits) +
                          " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    std::vector<cplx> amps(std::size_t{1} << num_qubits);
    amps[0] = 1.0;
    return {num_qubits, std::move(amps)};
}

StateVector::StateVector(std::size_t num_qubits, std::vector<cplx> amplitudes)
    : qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("qubit count " + std::to_string(num_qubits) +
                          " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (amps_.size() != (std::size_t{1} << num_qubits)) {
        throw ConfigError("amplitude vector has length " +
                          std::to_string(amps_.size()) + ", expected 2^" +
                          std::to_string(num_qubits));
    }
}

void StateVector::check_wire(std::size_t wire) const {
    if (wire >= qubits_) {
        throw ConfigError("wire " + std::to_string(wire) +
                          " out of range for " + std::to_string(qubits_) +
                          " qubits");
    }
}

double unitarity_error(const Mat2 &u) {
    double err = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            cplx acc = std::conj(u[r]) * u[c] + std::conj(u[2 + r]) * u[2 + c];
            err = std::max(err, std::abs(acc - (r == c ? 1.0 : 0.0)));
        }
    }
    return err;
}

void StateVector::apply_single(const Mat2 &u, std::size_t wire) {
    check_wire(wire);
    if (verify_ && unitarity_error(u) > 1e-9) {
        throw ConfigError("apply_single: matrix is not unitary");
    }
    const std::size_t stride = std::size_t{1} << wire;
    const std::size_t n = amps_.size();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const cplx a0 = amps_[k];
            const cplx a1 = amps_[k + stride];
            amps_[k] = u[0] * a0 + u[1] * a1;
            amps_[k + stride] = u[2] * a0 + u[3] * a1;
        }
    }
}

void StateVector::apply_controlled(const Mat2 &u, std::size_t control,
                                   std::size_t target) {
    check_wire(control);
    check_wire(target);
    if (control == target) {
        throw ConfigError("apply_controlled: control and target are both " +
                          std::to_string(control));
    }
    if (verify_ && unitarity_error(u) > 1e-9) {
        throw ConfigError("apply_controlled: matrix is not unitary");
    }
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        // Visit each (t=0, t=1) pair once, from its t=0 member.
        if ((k & cmask) == 0 || (k & tmask) != 0) {
            continue;
        }
        const cplx a0 = amps_[k];
        const cplx a1 = amps_[k | tmask];
        amps_[k] = u[0] * a0 + u[1] * a1;
        amps_[k | tmask] = u[2] * a0 + u[3] * a1;
    }
}

void StateVector::apply_phase(cplx phase, std::size_t wire) {
    check_wire(wire);
    const std::size_t mask = std::size_t{1} << wire;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (k & mask) {
            amps_[k] *= phase;
        }
    }
}

void StateVector::apply_controlled_phase(cplx phase, std::size_t control,
                                         std::size_t target) {
    check_wire(control);
    check_wire(target);
    if (control == target) {
        throw ConfigError("apply_controlled_phase: control and target are "
                          "both " +
                          std::to_string(control));
    }
    const std::size_t mask =
        (std::size_t{1} << control) | (std::size_t{1} << target);
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if ((k & mask) == mask) {
            amps_[k] *= phase;
        }
    }
}

double StateVector::expect_z(std::size_t wire) const {
    check_wire(wire);
    const std::size_t mask = std::size_t{1} << wire;
    double acc = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        const double p = std::norm(amps_[k]);
        acc += (k & mask) ? -p : p;
    }
    return acc;
}

std::vector<double> StateVector::expect_z_all() const {
    std::vector<double> out(qubits_, 0.0);
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        const double p = std::norm(amps_[k]);
        for (std::size_t w = 0; w < qubits_; ++w) {
            out[w] += ((k >> w) & 1U) ? -p : p;
        }
    }
    return out;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

} // namespace qgcn
