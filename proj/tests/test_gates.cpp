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

#include "support.hpp"

#include "qgcn/errors.hpp"
#include "qgcn/gradient.hpp"
#include "qgcn/oracle.hpp"

#include <doctest.h>

using namespace qgcn;
using namespace qgcn::testing;

namespace {

using Eigen::MatrixXcd;
const cplx I(0.0, 1.0);

MatrixXcd u3_formula(double t, double p, double l) {
    MatrixXcd m(2, 2);
    m << std::cos(t / 2), -std::exp(I * l) * std::sin(t / 2),
        std::exp(I * p) * std::sin(t / 2), std::exp(I * (p + l)) * std::cos(t / 2);
    return m;
}

/// Control is the high bit of the 4x4 basis |control, target>.
MatrixXcd controlled(const MatrixXcd &u) {
    MatrixXcd m = MatrixXcd::Identity(4, 4);
    m.block(2, 2, 2, 2) = u;
    return m;
}

MatrixXcd formula(const GateOp &g) {
    const auto &p = g.params;
    switch (g.kind) {
    case GateKind::kRY:
        return u3_formula(p[0], 0, 0);
    case GateKind::kU1: {
        MatrixXcd m = MatrixXcd::Identity(2, 2);
        m(1, 1) = std::exp(I * p[0]);
        return m;
    }
    case GateKind::kCU1: {
        MatrixXcd m = MatrixXcd::Identity(4, 4);
        m(3, 3) = std::exp(I * p[0]);
        return m;
    }
    case GateKind::kU3:
        return u3_formula(p[0], p[1], p[2]);
    case GateKind::kCU3:
        return controlled(u3_formula(p[0], p[1], p[2]));
    case GateKind::kPauliX: {
        MatrixXcd m(2, 2);
        m << 0, 1, 1, 0;
        return m;
    }
    case GateKind::kPauliY: {
        MatrixXcd m(2, 2);
        m << 0, -I, I, 0;
        return m;
    }
    case GateKind::kPauliZ: {
        MatrixXcd m(2, 2);
        m << 1, 0, 0, -1;
        return m;
    }
    }
    return {};
}

MatrixXcd to_eigen(const GateMatrix &g) {
    MatrixXcd m(static_cast<Eigen::Index>(g.dim), static_cast<Eigen::Index>(g.dim));
    for (std::size_t r = 0; r < g.dim; ++r) {
        for (std::size_t c = 0; c < g.dim; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = g(r, c);
        }
    }
    return m;
}

GateOp with_kind(GateKind kind, Rng &rng) {
    const auto a = [&] { return rng.uniform(-2 * kPi, 2 * kPi); };
    switch (kind) {
    case GateKind::kRY:
        return gates::ry(a(), 0);
    case GateKind::kU1:
        return gates::u1(a(), 0);
    case GateKind::kCU1:
        return gates::cu1(a(), 0, 1);
    case GateKind::kU3:
        return gates::u3(a(), a(), a(), 0);
    case GateKind::kCU3:
        return gates::cu3(a(), a(), a(), 0, 1);
    case GateKind::kPauliX:
        return gates::pauli_x(0);
    case GateKind::kPauliY:
        return gates::pauli_y(0);
    case GateKind::kPauliZ:
        return gates::pauli_z(0);
    }
    return {};
}

constexpr GateKind kAllKinds[] = {GateKind::kRY,     GateKind::kU1,
                                  GateKind::kCU1,    GateKind::kU3,
                                  GateKind::kCU3,    GateKind::kPauliX,
                                  GateKind::kPauliY, GateKind::kPauliZ};

} // namespace

TEST_CASE("matrices equal the textbook formulas") {
    Rng rng(1);
    for (auto kind : kAllKinds) {
        for (int k = 0; k < 50; ++k) {
            const GateOp g = with_kind(kind, rng);
            CHECK((to_eigen(matrix_of(g)) - formula(g)).norm() < 1e-14);
        }
    }
}

TEST_CASE("matrices are unitary for 1000 random draws per kind") {
    Rng rng(2);
    for (auto kind : kAllKinds) {
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const MatrixXcd m = to_eigen(matrix_of(with_kind(kind, rng)));
            worst = std::max(worst,
                             (m.adjoint() * m - MatrixXcd::Identity(m.rows(), m.cols()))
                                 .cwiseAbs()
                                 .maxCoeff());
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("matrix examples") {
    const MatrixXcd u3 = to_eigen(matrix_of(gates::u3(0.77, 0.0, 0.0, 0)));
    const MatrixXcd ry = to_eigen(matrix_of(gates::ry(0.77, 0)));
    CHECK((u3 - ry).norm() == 0.0);
    CHECK((to_eigen(matrix_of(gates::u1(0.0, 0))) - MatrixXcd::Identity(2, 2)).norm() ==
          0.0);
    const cplx corner = matrix_of(gates::cu1(kPi / 3, 0, 1))(3, 3);
    CHECK(corner.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(corner.imag() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
    for (std::size_t d = 0; d < 3; ++d) {
        CHECK(matrix_of(gates::cu1(kPi / 3, 0, 1))(d, d) == cplx(1.0));
    }
}

TEST_CASE("U1 and CU1 are exactly diagonal") {
    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        for (auto kind : {GateKind::kU1, GateKind::kCU1}) {
            const auto m = matrix_of(with_kind(kind, rng));
            for (std::size_t r = 0; r < m.dim; ++r) {
                for (std::size_t c = 0; c < m.dim; ++c) {
                    if (r != c) {
                        CHECK(std::abs(m(r, c)) == 0.0);
                    }
                }
            }
        }
    }
    CHECK(is_diagonal(GateKind::kU1));
    CHECK(is_diagonal(GateKind::kCU1));
    CHECK_FALSE(is_diagonal(GateKind::kCU3));
}

TEST_CASE("gate validation") {
    CHECK_THROWS_AS(validate(gates::cu1(0.1, 1, 1), 2), ConfigError);
    CHECK_THROWS_AS(validate(gates::ry(0.1, 3), 2), ConfigError);
    CHECK_NOTHROW(validate(gates::cu3(0.1, 0.2, 0.3, 1, 0), 2));
    CHECK(arity(GateKind::kU3) == 3);
    CHECK(arity(GateKind::kPauliY) == 0);
    CHECK(wire_count(GateKind::kCU1) == 2);
}

TEST_CASE("shift rule metadata") {
    for (auto kind : {GateKind::kRY, GateKind::kU1, GateKind::kCU1}) {
        const auto rule = shift_rule_of(kind, 0);
        REQUIRE(rule.has_value());
        REQUIRE(rule->terms.size() == 1);
        CHECK(rule->terms[0].shift == doctest::Approx(kPi / 2));
        CHECK(rule->terms[0].coeff == 0.5);
    }
    for (std::size_t k = 0; k < 3; ++k) {
        const auto rule = shift_rule_of(GateKind::kU3, k);
        REQUIRE(rule.has_value());
        CHECK(rule->terms.size() == 1);
    }
    CHECK(shift_rule_of(GateKind::kCU3, 1)->terms.size() == 1);
    CHECK(shift_rule_of(GateKind::kCU3, 2)->terms.size() == 1);
    // The controlled rotation angle has generator eigenvalues {0, +-1/2}:
    // two frequencies, so it needs a four-term rule.
    CHECK(shift_rule_of(GateKind::kCU3, 0)->terms.size() == 2);
    CHECK_FALSE(shift_rule_of(GateKind::kPauliX, 0).has_value());
    CHECK_FALSE(shift_rule_of(GateKind::kPauliZ, 0).has_value());
    CHECK_THROWS_AS((void)shift_rule_of(GateKind::kRY, 1), ConfigError);
    CHECK_THROWS_AS((void)shift_rule_of(GateKind::kU3, 3), ConfigError);
}

namespace {

/// Sum of Z over all wires with `gate` placed in the middle of a fixed
/// random 3-qubit circuit.
struct Sandwich {
    Circuit before, after;
    double value(const GateOp &g) const {
        Circuit c = before;
        c.push_back(g);
        c.insert(c.end(), after.begin(), after.end());
        const auto z = run_circuit(c, 3).expect_z_all();
        return z[0] + 0.5 * z[1] - 0.3 * z[2];
    }
};

double shift_derivative(const Sandwich &s, const GateOp &g, std::size_t k,
                        const ShiftRule &rule) {
    double d = 0.0;
    for (const auto &t : rule.terms) {
        GateOp up = g, down = g;
        up.params[k] += t.shift;
        down.params[k] -= t.shift;
        d += t.coeff * (s.value(up) - s.value(down));
    }
    return d;
}

double fd_derivative(const Sandwich &s, const GateOp &g, std::size_t k) {
    const double h = 1e-5;
    GateOp up = g, down = g;
    up.params[k] += h;
    down.params[k] -= h;
    return (s.value(up) - s.value(down)) / (2 * h);
}

} // namespace

TEST_CASE("property: every shift rule matches finite differences") {
    Rng rng(99);
    for (auto kind : {GateKind::kRY, GateKind::kU1, GateKind::kCU1, GateKind::kU3,
                      GateKind::kCU3}) {
        for (int trial = 0; trial < 40; ++trial) {
            Sandwich s{random_circuit(rng, 3, 6), random_circuit(rng, 3, 6)};
            // Make the phase gates observable by rotating into the X basis.
            for (std::size_t w = 0; w < 3; ++w) {
                s.before.insert(s.before.begin(), gates::ry(1.1 + w, w));
            }
            GateOp g = with_kind(kind, rng);
            if (is_controlled(kind)) {
                g.wires = {rng.below(3), 0};
                g.wires[1] = (g.wires[0] + 1 + rng.below(2)) % 3;
            } else {
                g.wires[0] = rng.below(3);
            }
            for (std::size_t k = 0; k < arity(kind); ++k) {
                const double shift = shift_derivative(s, g, k, *shift_rule_of(kind, k));
                const double fd = fd_derivative(s, g, k);
                CHECK_MESSAGE(close_rel(shift, fd, 1e-5),
                              name_of(kind), " param ", k, ": ", shift, " vs ", fd);
            }
        }
    }
}

TEST_CASE("two-term rule is wrong for the controlled rotation angle") {
    // The oracle that justifies the four-term rule for CU3 theta: the plain
    // (pi/2, 0.5) rule disagrees with finite differences.
    Rng rng(5);
    const ShiftRule plain{{{kPi / 2, 0.5}}};
    int disagreements = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Sandwich s{random_circuit(rng, 3, 6), random_circuit(rng, 3, 6)};
        s.before.insert(s.before.begin(), gates::ry(1.3, 0));
        const GateOp g = gates::cu3(rng.uniform(-3, 3), rng.uniform(-3, 3),
                                    rng.uniform(-3, 3), 0, 1);
        const double shifted = shift_derivative(s, g, 0, plain);
        const double fd = fd_derivative(s, g, 0);
        if (!close_rel(shifted, fd, 1e-3)) {
            ++disagreements;
        }
        worst = std::max(worst, std::abs(shifted - fd));
    }
    CHECK(disagreements > 0);
    CHECK(worst > 1e-2);
}
