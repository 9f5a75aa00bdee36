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
#include "qgcn/noise.hpp"

#include <doctest.h>

using namespace qgcn;
using namespace qgcn::testing;

TEST_CASE("zero noise reproduces the clean expectations") {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_circuit(rng, 3, 15);
        NoiseModel m;
        m.trajectories = 50;
        const auto noisy = noisy_forward(c, 3, m);
        const auto clean = run_circuit(c, 3).expect_z_all();
        for (std::size_t w = 0; w < 3; ++w) {
            CHECK(noisy[w] == clean[w]);
        }
    }
}

TEST_CASE("depolarizing channel on |0> converges to 1 - 4p/3") {
    // Each trajectory yields +-1, so the estimator's sigma is
    // sqrt(1 - mu^2) / sqrt(T).
    for (double p : {0.01, 0.05, 0.1}) {
        NoiseModel m;
        m.gate_error_1q = p;
        m.trajectories = 100000;
        m.seed = 17;
        const double got = noisy_forward({gates::ry(0.0, 0)}, 1, m)[0];
        const double mu = 1.0 - 4.0 * p / 3.0;
        const double sigma = std::sqrt(1.0 - mu * mu) / std::sqrt(100000.0);
        CHECK_MESSAGE(std::abs(got - mu) < 3 * sigma, "p=", p, " got ", got);
    }
}

TEST_CASE("readout flips scale expectations exactly") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_circuit(rng, 3, 12);
        NoiseModel m;
        m.readout_flip = 0.1;
        const auto noisy = noisy_forward(c, 3, m);
        const auto clean = run_circuit(c, 3).expect_z_all();
        for (std::size_t w = 0; w < 3; ++w) {
            CHECK(noisy[w] == (1.0 - 2.0 * 0.1) * clean[w]);
        }
    }
    NoiseModel half;
    half.readout_flip = 0.5;
    for (double z : noisy_forward({gates::ry(0.3, 0), gates::ry(2.0, 1)}, 2, half)) {
        CHECK(z == 0.0);
    }
}

TEST_CASE("noise is deterministic under a seed") {
    Rng rng(12);
    const auto c = random_circuit(rng, 4, 20);
    NoiseModel m = NoiseModel::parse("default", 3);
    const auto a = noisy_forward(c, 4, m);
    const auto b = noisy_forward(c, 4, m);
    CHECK(a == b);
    m.seed = 4;
    CHECK(noisy_forward(c, 4, m) != a);
}

TEST_CASE("noise model validation and presets") {
    NoiseModel zero_t;
    zero_t.gate_error_1q = 0.1;
    zero_t.trajectories = 0;
    CHECK_THROWS_AS((void)noisy_forward({gates::ry(0.1, 0)}, 1, zero_t), ConfigError);
    NoiseModel bad;
    bad.readout_flip = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    const auto d = NoiseModel::parse("default");
    CHECK(d.gate_error_1q == 0.005);
    CHECK(d.gate_error_2q == 0.02);
    CHECK(d.readout_flip == 0.02);
    CHECK(d.trajectories == 256);
    const auto none = NoiseModel::parse("none");
    CHECK_FALSE(none.gates_are_noisy());
    CHECK(none.readout_flip == 0.0);
    const auto custom = NoiseModel::parse("0.01,0.03,0.05,64", 9);
    CHECK(custom.gate_error_2q == 0.03);
    CHECK(custom.trajectories == 64);
    CHECK(custom.seed == 9);
    const auto again = NoiseModel::parse(custom.to_string(), 9);
    CHECK(again.gate_error_1q == custom.gate_error_1q);
    CHECK(again.readout_flip == custom.readout_flip);
    CHECK_THROWS_AS((void)NoiseModel::parse("loud"), ConfigError);
    CHECK_THROWS_AS((void)NoiseModel::parse("0.1,0.1,0.1,0"), ConfigError);
    CHECK_THROWS_AS((void)NoiseModel::parse("0.1,2,0.1,5"), ConfigError);
}

TEST_CASE("property: error grows with the gate error rate") {
    // Mean |noisy - clean| over 60 circuits for increasing p1; at most one
    // inversion is tolerated.
    const double grid[] = {0.0, 0.005, 0.01, 0.02, 0.05};
    Rng rng(31);
    std::vector<Circuit> circuits;
    for (int i = 0; i < 60; ++i) {
        circuits.push_back(random_circuit(rng, 4, 30));
    }
    std::vector<double> err;
    for (double p : grid) {
        NoiseModel m;
        m.gate_error_1q = p;
        m.trajectories = 128;
        m.seed = 5;
        double total = 0.0;
        for (const auto &c : circuits) {
            const auto clean = run_circuit(c, 4).expect_z_all();
            const auto noisy = noisy_forward(c, 4, m);
            for (std::size_t w = 0; w < 4; ++w) {
                total += std::abs(noisy[w] - clean[w]);
            }
        }
        err.push_back(total / (4.0 * circuits.size()));
    }
    int inversions = 0;
    for (std::size_t i = 1; i < err.size(); ++i) {
        inversions += err[i] < err[i - 1] ? 1 : 0;
    }
    CHECK(err.front() == 0.0);
    CHECK(inversions <= 1);
    CHECK(err.back() > err[1]);
}

TEST_CASE("random gate injection") {
    Rng rng(6);
    const auto c = random_circuit(rng, 3, 5);
    SUBCASE("probability 0 keeps the circuit") {
        InjectionPolicy p{0.0, 0.5};
        Rng r(1);
        const auto out = inject_random_gates(c, p, r);
        REQUIRE(out.size() == c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(out[i].kind == c[i].kind);
            CHECK(out[i].params == c[i].params);
        }
    }
    SUBCASE("probability 1 doubles the circuit") {
        InjectionPolicy p{1.0, 0.5};
        Rng r(1);
        const auto out = inject_random_gates(c, p, r);
        REQUIRE(out.size() == 10);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(out[2 * i].kind == c[i].kind);
            const GateOp &ins = out[2 * i + 1];
            CHECK(ins.kind == GateKind::kRY);
            CHECK_FALSE(ins.trainable);
            CHECK(std::abs(ins.params[0]) <= 0.5);
            const bool touched = ins.wires[0] == c[i].wires[0] ||
                                 (is_controlled(c[i].kind) && ins.wires[0] == c[i].wires[1]);
            CHECK(touched);
        }
    }
    SUBCASE("zero spread leaves the state unchanged") {
        InjectionPolicy p{1.0, 0.0};
        Rng r(2);
        const auto a = run_circuit(c, 3);
        const auto b = run_circuit(inject_random_gates(c, p, r), 3);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(a[i] - b[i]) < 1e-15);
        }
    }
    SUBCASE("bad policy") {
        CHECK_THROWS_AS((InjectionPolicy{1.5, 0.1}.validate()), ConfigError);
        CHECK_THROWS_AS((InjectionPolicy{0.5, -0.1}.validate()), ConfigError);
    }
}
