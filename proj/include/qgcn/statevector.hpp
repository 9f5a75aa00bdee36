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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qgcn {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;

inline constexpr std::size_t kMaxQubits = 12;

/**
 * Dense statevector of a q-qubit register.
 *
 * Basis convention: bit i of the basis index is the state of qubit i, so
 * qubit 0 is the least significant bit. Every module uses this ordering.
 */
class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits; throws ConfigError outside [1, 12].
    static StateVector ground(std::size_t num_qubits);

    /// Takes ownership of `amplitudes`; the length must be 2^num_qubits.
    StateVector(std::size_t num_qubits, std::vector<cplx> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] const cplx &operator[](std::size_t i) const {
        return amps_[i];
    }

    /// When enabled, every applied matrix is checked for unitarity (1e-9).
    void set_verify_unitarity(bool on) noexcept { verify_ = on; }

    void apply_single(const Mat2 &u, std::size_t wire);

    /// Applies `u` to `target` on the subspace where `control` is |1>.
    void apply_controlled(const Mat2 &u, std::size_t control,
                          std::size_t target);

    /// Multiplies amplitudes whose `wire` bit is 1 by `phase`.
    void apply_phase(cplx phase, std::size_t wire);

    /// Multiplies amplitudes whose `control` and `target` bits are both 1.
    void apply_controlled_phase(cplx phase, std::size_t control,
                                std::size_t target);

    /// Pauli-Z expectation on `wire`, in [-1, 1].
    [[nodiscard]] double expect_z(std::size_t wire) const;

    /// Pauli-Z expectations for all wires, one pass over the amplitudes.
    [[nodiscard]] std::vector<double> expect_z_all() const;

    [[nodiscard]] double norm() const;

  private:
    void check_wire(std::size_t wire) const;

    std::size_t qubits_;
    std::vector<cplx> amps_;
    bool verify_ = false;
};

inline StateVector ground_state(std::size_t num_qubits) {
    return StateVector::ground(num_qubits);
}

/// Max elementwise deviation of U^dagger U from the identity.
[[nodiscard]] double unitarity_error(const Mat2 &u);

} // namespace qgcn
