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

#include "qgcn/oracle.hpp"

#include "qgcn/errors.hpp"

#include <string>
#include <vector>

namespace qgcn {

namespace {

using Eigen::MatrixXcd;

MatrixXcd to_eigen2(const GateMatrix &g, std::size_t r0, std::size_t c0) {
    MatrixXcd out(2, 2);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            out(r, c) = g(r0 + r, c0 + c);
        }
    }
    return out;
}

/// factors[w] is the 2x2 operator on wire w; result = f[q-1] (x) ... (x) f[0].
MatrixXcd embed(const std::vector<MatrixXcd> &factors) {
    MatrixXcd out = factors.back();
    for (std::size_t w = factors.size() - 1; w-- > 0;) {
        out = kron(out, factors[w]);
    }
    return out;
}

MatrixXcd lift(const GateOp &gate, std::size_t q) {
    const GateMatrix g = matrix_of(gate);
    const MatrixXcd id = MatrixXcd::Identity(2, 2);
    if (g.dim == 2) {
        std::vector<MatrixXcd> f(q, id);
        f[gate.wires[0]] = to_eigen2(g, 0, 0);
        return embed(f);
    }
    const std::size_t dim = std::size_t{1} << q;
    MatrixXcd out = MatrixXcd::Zero(dim, dim);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            MatrixXcd proj = MatrixXcd::Zero(2, 2);
            proj(a, b) = 1.0;
            std::vector<MatrixXcd> f(q, id);
            f[gate.wires[0]] = proj;
            f[gate.wires[1]] = to_eigen2(g, 2 * a, 2 * b);
            out += embed(f);
        }
    }
    return out;
}

} // namespace

MatrixXcd kron(const MatrixXcd &a, const MatrixXcd &b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

double DenseUnitary::unitarity_error() const {
    const MatrixXcd prod = entries.adjoint() * entries;
    return (prod - MatrixXcd::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd DenseUnitary::apply_to_ground() const {
    return entries.col(0);
}

DenseUnitary dense_oracle(const Circuit &circuit, std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxOracleQubits) {
        throw ConfigError("dense oracle refuses " + std::to_string(num_qubits) +
                          " qubits (limit " +
                          std::to_string(kMaxOracleQubits) + ")");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    MatrixXcd u = MatrixXcd::Identity(dim, dim);
    for (const auto &gate : circuit) {
        validate(gate, num_qubits);
        u = lift(gate, num_qubits) * u;
    }
    return DenseUnitary{std::move(u)};
}

} // namespace qgcn
