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

#include "qgcn/noise.hpp"

#include "qgcn/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qgcn {

namespace {

void check_probability(double p, const char *field) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(std::string(field) + " must lie in [0, 1], got " +
                          std::to_string(p));
    }
}

void apply_random_pauli(StateVector &state, std::size_t wire, Rng &rng) {
    switch (rng.below(3)) {
    case 0:
        apply_gate(state, gates::pauli_x(wire));
        break;
    case 1:
        apply_gate(state, gates::pauli_y(wire));
        break;
    default:
        apply_gate(state, gates::pauli_z(wire));
        break;
    }
}

double parse_double(const std::string &token, const char *field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) {
            throw std::invalid_argument(token);
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(std::string("noise: cannot parse ") + field +
                          " from '" + token + "'");
    }
}

} // namespace

void NoiseModel::validate() const {
    check_probability(gate_error_1q, "noise p1");
    check_probability(gate_error_2q, "noise p2");
    check_probability(readout_flip, "noise pr");
    if (trajectories < 1) {
        throw ConfigError("noise trajectories must be >= 1");
    }
}

NoiseModel NoiseModel::parse(const std::string &text, std::uint64_t seed) {
    NoiseModel m;
    m.seed = seed;
    if (text == "none") {
        return m;
    }
    if (text == "default") {
        m.gate_error_1q = 0.005;
        m.gate_error_2q = 0.02;
        m.readout_flip = 0.02;
        m.trajectories = 256;
        return m;
    }
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        parts.push_back(tok);
    }
    if (parts.size() != 4) {
        throw ConfigError("noise: expected a preset name (none, default) or "
                          "p1,p2,pr,T; got '" +
                          text + "'");
    }
    m.gate_error_1q = parse_double(parts[0], "p1");
    m.gate_error_2q = parse_double(parts[1], "p2");
    m.readout_flip = parse_double(parts[2], "pr");
    long long t = 0;
    const auto &ts = parts[3];
    auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), t);
    if (ec != std::errc{} || ptr != ts.data() + ts.size() || t < 1) {
        throw ConfigError("noise: trajectories must be a positive integer, "
                          "got '" +
                          ts + "'");
    }
    m.trajectories = static_cast<std::size_t>(t);
    m.validate();
    return m;
}

std::string NoiseModel::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << gate_error_1q << ',' << gate_error_2q << ',' << readout_flip << ','
       << trajectories;
    return os.str();
}

void InjectionPolicy::validate() const {
    check_probability(insert_prob, "inject_prob");
    if (!(angle_spread >= 0.0) || !std::isfinite(angle_spread)) {
        throw ConfigError("inject_spread must be finite and >= 0");
    }
}

std::vector<double> noisy_forward(const Circuit &circuit,
                                  std::size_t num_qubits,
                                  const NoiseModel &model) {
    model.validate();
    for (const auto &gate : circuit) {
        validate(gate, num_qubits);
    }
    const double readout_scale = 1.0 - 2.0 * model.readout_flip;

    std::vector<double> mean(num_qubits, 0.0);
    if (!model.gates_are_noisy()) {
        mean = run_circuit(circuit, num_qubits).expect_z_all();
    } else {
        for (std::size_t t = 0; t < model.trajectories; ++t) {
            Rng rng = Rng::stream(model.seed, t);
            StateVector state = StateVector::ground(num_qubits);
            for (const auto &gate : circuit) {
                apply_gate(state, gate);
                const bool two = is_controlled(gate.kind);
                const double p = two ? model.gate_error_2q : model.gate_error_1q;
                for (std::size_t w = 0; w < wire_count(gate.kind); ++w) {
                    if (rng.bernoulli(p)) {
                        apply_random_pauli(state, gate.wires[w], rng);
                    }
                }
            }
            const auto z = state.expect_z_all();
            for (std::size_t w = 0; w < num_qubits; ++w) {
                mean[w] += z[w];
            }
        }
        for (auto &v : mean) {
            v /= static_cast<double>(model.trajectories);
        }
    }
    for (auto &v : mean) {
        v *= readout_scale;
    }
    return mean;
}

Circuit inject_random_gates(const Circuit &circuit,
                            const InjectionPolicy &policy, Rng &rng) {
    policy.validate();
    Circuit out;
    out.reserve(circuit.size() * 2);
    for (const auto &gate : circuit) {
        out.push_back(gate);
        if (!rng.bernoulli(policy.insert_prob)) {
            continue;
        }
        const std::size_t wire = gate.wires[rng.below(wire_count(gate.kind))];
        const double angle =
            rng.uniform(-policy.angle_spread, policy.angle_spread);
        out.push_back(gates::ry(angle, wire));
    }
    return out;
}

} // namespace qgcn
