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

#include <Eigen/Dense>

#include <cstddef>

namespace qgcn {

inline constexpr std::size_t kMaxOracleQubits = 6;

/// Full 2^q x 2^q unitary of a circuit. Verification only.
struct DenseUnitary {
    Eigen::MatrixXcd entries;

    [[nodiscard]] Eigen::Index dim() const { return entries.rows(); }

    /// Max elementwise deviation of U^dagger U from the identity.
    [[nodiscard]] double unitarity_error() const;

    /// First column, i.e. U applied to |0...0>.
    [[nodiscard]] Eigen::VectorXcd apply_to_ground() const;
};

/**
 * Product of per-gate embedded unitaries in circuit order.
 *
 * Each gate is lifted to the full register by Kronecker products, with the
 * highest wire as the leftmost factor (qubit 0 least significant). A
 * controlled gate is written as sum_{a,b} |a><b|_control (x) M_ab, where
 * M_ab are the 2x2 blocks of its 4x4 matrix. Independent of the
 * bit-twiddling kernels in StateVector.
 *
 * Throws ConfigError for q > 6.
 */
[[nodiscard]] DenseUnitary dense_oracle(const Circuit &circuit,
                                        std::size_t num_qubits);

/// Kronecker product a (x) b.
[[nodiscard]] Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a,
                                    const Eigen::MatrixXcd &b);

} // namespace qgcn
