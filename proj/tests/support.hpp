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
#include "qgcn/rng.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

namespace qgcn::testing {

inline constexpr double kPi = std::numbers::pi;

inline std::filesystem::path source_dir() { return QGCN_SOURCE_DIR; }
inline std::filesystem::path tiny_dir() { return source_dir() / "tests/data/TINY"; }
inline std::filesystem::path mutag_dir() { return source_dir() / "data/MUTAG"; }

inline std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::path(QGCN_BINARY_DIR) / "scratch" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

/// |a-b| / max(|a|,|b|), or the absolute gap when both are below `floor`.
inline bool close_rel(double a, double b, double rel, double floor = 1e-4,
                      double abs_tol = 1e-7) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale < floor) {
        return std::abs(a - b) < abs_tol;
    }
    return std::abs(a - b) / scale < rel;
}

inline GateOp random_gate(Rng &rng, std::size_t q, bool parameterized_only = false) {
    const int kinds = parameterized_only ? 5 : 8;
    auto kind = static_cast<GateKind>(rng.below(static_cast<std::size_t>(kinds)));
    if (q == 1 && is_controlled(kind)) {
        kind = kind == GateKind::kCU1 ? GateKind::kU1 : GateKind::kU3;
    }
    const std::size_t a = rng.below(q);
    std::size_t b = q > 1 ? rng.below(q - 1) : 0;
    if (q > 1 && b >= a) {
        ++b;
    }
    auto angle = [&] { return rng.uniform(-2 * kPi, 2 * kPi); };
    switch (kind) {
    case GateKind::kRY:
        return gates::ry(angle(), a);
    case GateKind::kU1:
        return gates::u1(angle(), a);
    case GateKind::kCU1:
        return gates::cu1(angle(), a, b);
    case GateKind::kU3:
        return gates::u3(angle(), angle(), angle(), a);
    case GateKind::kCU3:
        return gates::cu3(angle(), angle(), angle(), a, b);
    case GateKind::kPauliX:
        return gates::pauli_x(a);
    case GateKind::kPauliY:
        return gates::pauli_y(a);
    case GateKind::kPauliZ:
        return gates::pauli_z(a);
    }
    return gates::pauli_x(a);
}

inline Circuit random_circuit(Rng &rng, std::size_t q, std::size_t length) {
    Circuit c;
    for (std::size_t i = 0; i < length; ++i) {
        c.push_back(random_gate(rng, q));
    }
    return c;
}

/// Random state built from a random circuit (so it is normalized).
inline StateVector random_state(Rng &rng, std::size_t q) {
    Circuit c;
    for (std::size_t w = 0; w < q; ++w) {
        c.push_back(gates::u3(rng.uniform(0, kPi), rng.uniform(-kPi, kPi),
                              rng.uniform(-kPi, kPi), w));
    }
    for (std::size_t i = 0; i < 3 * q; ++i) {
        c.push_back(random_gate(rng, q));
    }
    return run_circuit(c, q);
}

/// Random connected-ish undirected graph with n nodes and d features.
inline Graph random_graph(Rng &rng, std::size_t n, std::size_t d,
                          std::size_t label = 0) {
    Graph g;
    const auto ni = static_cast<Eigen::Index>(n);
    g.adjacency = Matrix::Zero(ni, ni);
    for (Eigen::Index i = 1; i < ni; ++i) {
        const auto j = static_cast<Eigen::Index>(rng.below(static_cast<std::size_t>(i)));
        g.adjacency(i, j) = g.adjacency(j, i) = 1.0;
    }
    for (Eigen::Index i = 0; i < ni; ++i) {
        for (Eigen::Index j = i + 1; j < ni; ++j) {
            if (rng.bernoulli(0.2)) {
                g.adjacency(i, j) = g.adjacency(j, i) = 1.0;
            }
        }
    }
    g.features = Matrix(ni, static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < g.features.size(); ++i) {
        g.features.data()[i] = rng.uniform(-1.0, 1.0);
    }
    g.label = label;
    return g;
}

inline Graph triangle_graph() {
    Graph g;
    g.adjacency = Matrix::Ones(3, 3) - Matrix::Identity(3, 3);
    g.features.resize(3, 2);
    g.features << 1.0, 0.0, 0.0, 1.0, 0.5, -0.5;
    g.label = 1;
    return g;
}

/// Small two-class dataset: class 1 graphs are cycles, class 0 are paths.
inline GraphDataset synthetic_dataset(std::size_t per_class, std::uint64_t seed) {
    Rng rng(seed);
    GraphDataset ds;
    ds.name = "SYN";
    ds.num_classes = 2;
    ds.class_values = {0, 1};
    ds.node_label_values = {0, 1};
    ds.feature_source = FeatureSource::kNodeLabels;
    for (std::size_t k = 0; k < 2 * per_class; ++k) {
        const std::size_t label = k % 2;
        const auto n = static_cast<Eigen::Index>(4 + rng.below(4));
        Graph g;
        g.adjacency = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            g.adjacency(i, i + 1) = g.adjacency(i + 1, i) = 1.0;
        }
        if (label == 1) {
            g.adjacency(0, n - 1) = g.adjacency(n - 1, 0) = 1.0;
        }
        g.features = Matrix::Zero(n, 2);
        for (Eigen::Index i = 0; i < n; ++i) {
            const long long nl = label == 1 ? (i % 3 == 0 ? 1 : 0) : (i % 4 == 0 ? 1 : 0);
            g.node_labels.push_back(nl);
            g.features(i, nl) = 1.0;
        }
        g.node_attributes = Matrix(n, 0);
        g.label = label;
        ds.graphs.push_back(std::move(g));
    }
    return ds;
}

} // namespace qgcn::testing
