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

#include "qgcn/model.hpp"

#include "qgcn/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace qgcn {

namespace {

constexpr double kPi = std::numbers::pi;

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Matrix row_softmax(const Matrix &z) {
    Matrix out(z.rows(), z.cols());
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        const double mx = z.row(i).maxCoeff();
        out.row(i) = (z.row(i).array() - mx).exp();
        out.row(i) /= out.row(i).sum();
    }
    return out;
}

Matrix as_row(const Vector &v) { return v.transpose(); }

} // namespace

const char *to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::kMlp:
        return "MLP";
    case ModelKind::kSgc:
        return "SGC";
    case ModelKind::kGcn:
        return "GCN";
    case ModelKind::kQuanMlp:
        return "QUANMLP";
    case ModelKind::kQuanSgc:
        return "QUANSGC";
    case ModelKind::kQuanGcn:
        return "QUANGCN";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string &name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    for (auto kind : {ModelKind::kMlp, ModelKind::kSgc, ModelKind::kGcn,
                      ModelKind::kQuanMlp, ModelKind::kQuanSgc,
                      ModelKind::kQuanGcn}) {
        if (up == to_string(kind)) {
            return kind;
        }
    }
    throw ConfigError("unknown model '" + name +
                      "' (expected MLP, SGC, GCN, QUANMLP, QUANSGC, QUANGCN)");
}

bool is_quantum(ModelKind kind) {
    return kind == ModelKind::kQuanMlp || kind == ModelKind::kQuanSgc ||
           kind == ModelKind::kQuanGcn;
}

void ModelConfig::validate() const {
    if (is_quantum(kind)) {
        if (qubits < 2 || qubits > kMaxQubits) {
            throw ConfigError("qubits must lie in [2, " +
                              std::to_string(kMaxQubits) + "]");
        }
        if (layers < 1) {
            throw ConfigError("layers must be >= 1");
        }
    }
    if (!(sparse_lambda >= 0.0) || !std::isfinite(sparse_lambda)) {
        throw ConfigError("sparse_lambda must be finite and >= 0");
    }
    if (!(mask_threshold >= 0.0) || mask_threshold > kPi) {
        throw ConfigError("mask_threshold must lie in [0, pi]");
    }
    if (hidden < 1) {
        throw ConfigError("hidden must be >= 1");
    }
    if (sgc_hops < 1) {
        throw ConfigError("sgc_hops must be >= 1");
    }
}

std::unique_ptr<GraphModel> make_model(const ModelConfig &config,
                                       std::size_t feature_dim,
                                       std::size_t num_classes,
                                       std::uint64_t seed) {
    config.validate();
    if (is_quantum(config.kind)) {
        return std::make_unique<QuantumModel>(config, feature_dim, num_classes,
                                              seed);
    }
    return std::make_unique<ClassicalModel>(config, feature_dim, num_classes,
                                            seed);
}

// ---------------------------------------------------------------------------
// ClassicalModel
// ---------------------------------------------------------------------------

struct ClassicalModel::Cache {
    Matrix a_hat;
    GcnCache g1;
    GcnCache g2;
    Eigen::Index nodes = 0;
    DenseCache d1;
    DenseCache d2;
    DenseCache cls;
};

ClassicalModel::ClassicalModel(const ModelConfig &config,
                               std::size_t feature_dim, std::size_t num_classes,
                               std::uint64_t seed)
    : GraphModel(config, feature_dim, num_classes) {
    config.validate();
    Rng rng(seed);
    const auto d = static_cast<Eigen::Index>(feature_dim);
    const auto h = static_cast<Eigen::Index>(config.hidden);
    const auto c = static_cast<Eigen::Index>(num_classes);
    if (config.kind == ModelKind::kGcn) {
        first_ = DenseLayer::create(params_, "gcn1", d, h, Activation::kRelu, rng);
        second_ = DenseLayer::create(params_, "gcn2", h, h, Activation::kRelu, rng);
        classifier_ = DenseLayer::create(params_, "classifier", h, c,
                                         Activation::kNone, rng);
    } else {
        first_ = DenseLayer::create(params_, "mlp1", d, h, Activation::kRelu, rng);
        second_ = DenseLayer::create(params_, "mlp2", h, c, Activation::kNone, rng);
    }
}

Vector ClassicalModel::forward(const Graph &graph, Cache *cache) const {
    Cache local;
    Cache &cc = cache != nullptr ? *cache : local;
    const Matrix &x = graph.features;
    cc.nodes = x.rows();
    if (config_.kind == ModelKind::kGcn) {
        cc.a_hat = normalized_adjacency(graph.adjacency);
        const Matrix h1 =
            gcn_layer(cc.a_hat, x, first_, params_, Aggregate::kSum, &cc.g1);
        const Matrix h2 =
            gcn_layer(cc.a_hat, h1, second_, params_, Aggregate::kSum, &cc.g2);
        const Matrix readout = h2.colwise().mean();
        return dense_forward(classifier_, params_, readout, &cc.cls)
            .row(0)
            .transpose();
    }
    Matrix readout;
    if (config_.kind == ModelKind::kSgc) {
        readout = sgc_precompute(graph.adjacency, x, config_.sgc_hops)
                      .colwise()
                      .mean();
    } else {
        readout = x.colwise().mean();
    }
    const Matrix z = dense_forward(first_, params_, readout, &cc.d1);
    return dense_forward(second_, params_, z, &cc.d2).row(0).transpose();
}

Vector ClassicalModel::logits(const Graph &graph,
                              const ForwardOptions & /*opts*/) const {
    return forward(graph, nullptr);
}

double ClassicalModel::loss(const Graph &graph,
                            const ForwardOptions & /*opts*/) const {
    return softmax_xent(forward(graph, nullptr), graph.label).loss;
}

GradientReport
ClassicalModel::loss_and_gradient(const Graph &graph,
                                  const ForwardOptions & /*opts*/) const {
    Cache cc;
    const Vector out = forward(graph, &cc);
    const LossAndGrad lg = softmax_xent(out, graph.label);
    GradientReport report;
    report.loss = lg.loss;
    report.gradient = Vector::Zero(static_cast<Eigen::Index>(params_.size()));
    Vector &grad = report.gradient;
    const Matrix dlogits = as_row(lg.grad);
    if (config_.kind == ModelKind::kGcn) {
        const Matrix dreadout =
            dense_backward(classifier_, params_, cc.cls, dlogits, grad);
        const Matrix dh2 =
            Matrix::Ones(cc.nodes, 1) * dreadout / static_cast<double>(cc.nodes);
        const Matrix dh1 = gcn_layer_backward(cc.a_hat, second_, params_,
                                              Aggregate::kSum, cc.g2, dh2, grad);
        (void)gcn_layer_backward(cc.a_hat, first_, params_, Aggregate::kSum,
                                 cc.g1, dh1, grad);
    } else {
        const Matrix dz = dense_backward(second_, params_, cc.d2, dlogits, grad);
        (void)dense_backward(first_, params_, cc.d1, dz, grad);
    }
    report.classical_norm = report.gradient.norm();
    return report;
}

// ---------------------------------------------------------------------------
// Circuit pieces
// ---------------------------------------------------------------------------

PooledGraph pool_with_assignment(const Graph &graph, const Matrix &assignment) {
    if (assignment.rows() != graph.adjacency.rows()) {
        throw ConfigError("assignment has " + std::to_string(assignment.rows()) +
                          " rows for a graph of " +
                          std::to_string(graph.adjacency.rows()) + " nodes");
    }
    PooledGraph p;
    p.assignment = assignment;
    p.adjacency = assignment.transpose() * graph.adjacency * assignment;
    p.features = assignment.transpose() * graph.features;
    return p;
}

Matrix angle_normalize(const Matrix &weights, double gain, double bias) {
    return weights.unaryExpr(
        [&](double w) { return kPi * logistic(gain * w + bias); });
}

Matrix edge_mask(const Matrix &angles, double threshold) {
    return (angles.array() >= threshold).cast<double>().matrix();
}

double sparse_loss(const Matrix &weights) {
    if ((weights.array() < 0.0).any()) {
        throw ConfigError("sparse_loss: negative edge weight");
    }
    const double total = weights.sum();
    if (!(total > 0.0)) {
        throw ConfigError("sparse_loss: all edge weights are zero");
    }
    double h = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        const double p = weights.data()[i] / total;
        if (p > 0.0) {
            h -= p * std::log(p);
        }
    }
    return h;
}

Matrix sparse_loss_grad(const Matrix &weights) {
    // dH/dw_k = (-log p_k - H) / sum(w)
    const double total = weights.sum();
    const double h = sparse_loss(weights);
    return weights.unaryExpr([&](double w) {
        const double p = w / total;
        return p > 0.0 ? (-std::log(p) - h) / total : 0.0;
    });
}

Circuit encoding_circuit(const Vector &angles) {
    Circuit c;
    for (Eigen::Index i = 0; i < angles.size(); ++i) {
        c.push_back(gates::ry(angles(i), static_cast<std::size_t>(i)));
    }
    return c;
}

Circuit graph_conv_circuit(const Matrix &angles, const Matrix &kept,
                           std::ptrdiff_t slot_base) {
    const Eigen::Index q = angles.rows();
    Circuit c;
    auto add = [&](GateOp gate, Eigen::Index i, Eigen::Index j) {
        if (kept(i, j) == 0.0) {
            return;
        }
        if (slot_base != kNoSlot) {
            gate.trainable = true;
            gate.slots[0] = slot_base + i * q + j;
        }
        c.push_back(gate);
    };
    for (Eigen::Index i = 0; i < q; ++i) {
        const auto ti = static_cast<std::size_t>(i);
        add(gates::u1(angles(i, i), ti), i, i);
        for (Eigen::Index j = 0; j < q; ++j) {
            if (j != i) {
                add(gates::cu1(angles(i, j), static_cast<std::size_t>(j), ti), i,
                    j);
            }
        }
    }
    return c;
}

Circuit trainable_layer_circuit(const Matrix &angles, std::ptrdiff_t slot_base) {
    const Eigen::Index q = angles.rows();
    Circuit c;
    auto mark = [&](GateOp &gate, Eigen::Index w, Eigen::Index col0) {
        if (slot_base == kNoSlot) {
            return;
        }
        gate.trainable = true;
        for (std::size_t k = 0; k < 3; ++k) {
            gate.slots[k] =
                slot_base + w * 6 + col0 + static_cast<std::ptrdiff_t>(k);
        }
    };
    for (Eigen::Index w = 0; w < q; ++w) {
        GateOp g = gates::u3(angles(w, 0), angles(w, 1), angles(w, 2),
                             static_cast<std::size_t>(w));
        mark(g, w, 0);
        c.push_back(g);
    }
    for (Eigen::Index w = 0; w < q; ++w) {
        GateOp g = gates::cu3(angles(w, 3), angles(w, 4), angles(w, 5),
                              static_cast<std::size_t>(w),
                              static_cast<std::size_t>((w + 1) % q));
        mark(g, w, 3);
        c.push_back(g);
    }
    return c;
}

// ---------------------------------------------------------------------------
// QuantumModel
// ---------------------------------------------------------------------------

QuantumModel::QuantumModel(const ModelConfig &config, std::size_t feature_dim,
                           std::size_t num_classes, std::uint64_t seed)
    : GraphModel(config, feature_dim, num_classes) {
    config.validate();
    if (!is_quantum(config.kind)) {
        throw ConfigError("QuantumModel needs a quantum model kind");
    }
    Rng rng(seed);
    const auto d = static_cast<Eigen::Index>(feature_dim);
    const auto q = static_cast<Eigen::Index>(config.qubits);
    const auto h = static_cast<Eigen::Index>(config.hidden);
    const auto c = static_cast<Eigen::Index>(num_classes);
    const bool gcn = config.kind == ModelKind::kQuanGcn;

    if (gcn) {
        pool_hidden_ = DenseLayer::create(params_, "pool.hidden", 2 * d, h,
                                          Activation::kTanh, rng);
        pool_out_ = DenseLayer::create(params_, "pool.out", h, q,
                                       Activation::kNone, rng);
        edge_gain_ = params_.add_block("edge.gain", 1, 1);
        edge_bias_ = params_.add_block("edge.bias", 1, 1);
        params_.block(edge_gain_)(0, 0) = 1.0;
        // An empty pooled edge starts at half the mask threshold, so a zero
        // weight means an elided (identity) gate.
        if (config.mask_threshold > 0.0) {
            const double p = config.mask_threshold / (2.0 * kPi);
            params_.block(edge_bias_)(0, 0) = std::log(p / (1.0 - p));
        }
        encoder_ = DenseLayer::create(params_, "encoder", d, 1,
                                      Activation::kNone, rng);
    } else {
        encoder_ = DenseLayer::create(params_, "encoder", d, q,
                                      Activation::kNone, rng);
    }
    if (config.skip_connection) {
        skip_ = params_.add_block("skip.w", d, gcn ? 1 : q);
        params_.xavier_uniform(skip_, rng);
    }
    const Eigen::Index readout = config.skip_connection ? 2 * q : q;
    classifier_ = DenseLayer::create(params_, "classifier", readout, c,
                                     Activation::kNone, rng);
    for (std::size_t l = 0; l < config.layers; ++l) {
        const auto id = params_.add_block("qlayer" + std::to_string(l), q, 6,
                                          Segment::kQuantum);
        auto block = params_.block(id);
        for (Eigen::Index k = 0; k < 6; ++k) {
            for (Eigen::Index w = 0; w < q; ++w) {
                block(w, k) = rng.uniform(-kPi, kPi);
            }
        }
        quantum_blocks_.push_back(id);
    }
}

std::size_t QuantumModel::angle_table_size() const {
    const std::size_t q = config_.qubits;
    return q + q * q + 6 * q * config_.layers;
}

std::ptrdiff_t QuantumModel::edge_slot_base() const {
    return static_cast<std::ptrdiff_t>(config_.qubits);
}

std::ptrdiff_t QuantumModel::trainable_slot_base() const {
    const auto q = static_cast<std::ptrdiff_t>(config_.qubits);
    return q + q * q;
}

Matrix QuantumModel::node_features(const Graph &graph) const {
    if (config_.kind == ModelKind::kQuanSgc) {
        return sgc_precompute(graph.adjacency, graph.features, config_.sgc_hops);
    }
    return graph.features;
}

QuantumModel::Forward QuantumModel::forward(const Graph &graph,
                                            const ForwardOptions &opts) const {
    const std::size_t q = config_.qubits;
    const auto qi = static_cast<Eigen::Index>(q);
    const bool gcn = config_.kind == ModelKind::kQuanGcn;
    Forward f;

    if (gcn) {
        const Matrix &x = graph.features;
        Matrix s;
        if (frozen_assignment_) {
            s = *frozen_assignment_;
        } else {
            f.pool_input.resize(x.rows(), 2 * x.cols());
            f.pool_input << x, graph.adjacency * x;
            const Matrix hidden =
                dense_forward(pool_hidden_, params_, f.pool_input, &f.pool_hidden);
            s = row_softmax(dense_forward(pool_out_, params_, hidden, &f.pool_out));
        }
        f.pooled = pool_with_assignment(graph, s);
        const double gain = params_.block(edge_gain_)(0, 0);
        const double bias = params_.block(edge_bias_)(0, 0);
        const Matrix weights = f.pooled.adjacency + Matrix::Identity(qi, qi);
        f.edge_logits = (gain * weights.array() + bias).matrix();
        f.pooled.edge_angles = angle_normalize(weights, gain, bias);
        f.pooled.edge_kept = edge_mask(f.pooled.edge_angles, config_.mask_threshold);
        f.sparse = sparse_loss(f.pooled.edge_angles);
        f.encoder_input = f.pooled.features;
        f.feature_logits =
            dense_forward(encoder_, params_, f.encoder_input, &f.encoder).col(0);
    } else {
        f.encoder_input = node_features(graph).colwise().mean();
        f.feature_logits =
            dense_forward(encoder_, params_, f.encoder_input, &f.encoder)
                .row(0)
                .transpose();
    }
    f.theta = f.feature_logits.unaryExpr(
        [](double v) { return kPi * logistic(v); });

    // Angle table: [theta (q) | edge angles (q*q, row-major) | trainable].
    f.angle_table.assign(angle_table_size(), 0.0);
    for (std::size_t i = 0; i < q; ++i) {
        f.angle_table[i] = f.theta(static_cast<Eigen::Index>(i));
    }
    if (gcn) {
        for (Eigen::Index i = 0; i < qi; ++i) {
            for (Eigen::Index j = 0; j < qi; ++j) {
                f.angle_table[static_cast<std::size_t>(edge_slot_base() +
                                                       i * qi + j)] =
                    f.pooled.edge_angles(i, j);
            }
        }
    }

    f.circuit = encoding_circuit(f.theta);
    for (std::size_t i = 0; i < q; ++i) {
        f.circuit[i].trainable = true;
        f.circuit[i].slots[0] = static_cast<std::ptrdiff_t>(i);
    }
    for (std::size_t l = 0; l < config_.layers; ++l) {
        if (gcn) {
            const Circuit conv = graph_conv_circuit(
                f.pooled.edge_angles, f.pooled.edge_kept, edge_slot_base());
            f.circuit.insert(f.circuit.end(), conv.begin(), conv.end());
        }
        const auto base = trainable_slot_base() +
                          static_cast<std::ptrdiff_t>(6 * q * l);
        const Matrix block = params_.block(quantum_blocks_[l]);
        for (Eigen::Index w = 0; w < qi; ++w) {
            for (Eigen::Index k = 0; k < 6; ++k) {
                f.angle_table[static_cast<std::size_t>(base + w * 6 + k)] =
                    block(w, k);
            }
        }
        const Circuit layer = trainable_layer_circuit(
            block, config_.train_circuit ? base : kNoSlot);
        f.circuit.insert(f.circuit.end(), layer.begin(), layer.end());
    }
    if (opts.injection != nullptr) {
        Rng rng = Rng::stream(opts.stream, 0x1d1ec7);
        f.circuit = inject_random_gates(f.circuit, *opts.injection, rng);
    }

    std::vector<double> z;
    if (opts.noise != nullptr) {
        NoiseModel model = *opts.noise;
        model.seed = Rng::mix(model.seed ^ Rng::mix(opts.stream));
        z = noisy_forward(f.circuit, q, model);
    } else {
        z = run_circuit(f.circuit, q).expect_z_all();
    }
    f.measurements = Eigen::Map<const Vector>(z.data(), qi);

    Vector readout = f.measurements;
    if (config_.skip_connection) {
        const auto w = params_.block(skip_);
        if (gcn) {
            f.skip = (f.encoder_input * w).col(0);
        } else {
            f.skip = (f.encoder_input * w).row(0).transpose();
        }
        readout.conservativeResize(2 * qi);
        readout.tail(qi) = f.skip;
    }
    f.logits = dense_forward(classifier_, params_, as_row(readout), &f.classifier)
                   .row(0)
                   .transpose();
    return f;
}

GradientReport QuantumModel::hybrid_backward(const Graph &graph,
                                             const Forward &f) const {
    const std::size_t q = config_.qubits;
    const auto qi = static_cast<Eigen::Index>(q);
    const bool gcn = config_.kind == ModelKind::kQuanGcn;

    GradientReport report;
    report.gradient = Vector::Zero(static_cast<Eigen::Index>(params_.size()));
    Vector &grad = report.gradient;

    const LossAndGrad lg = softmax_xent(f.logits, graph.label);
    report.loss = lg.loss + (gcn ? config_.sparse_lambda * f.sparse : 0.0);

    const Matrix dreadout =
        dense_backward(classifier_, params_, f.classifier, as_row(lg.grad), grad);
    const Vector dm = dreadout.row(0).head(qi).transpose();

    Matrix dinput = Matrix::Zero(f.encoder_input.rows(), f.encoder_input.cols());
    if (config_.skip_connection) {
        const Vector ds = dreadout.row(0).tail(qi).transpose();
        const auto w = params_.block(skip_);
        if (gcn) {
            params_.view(grad, skip_) += f.encoder_input.transpose() * ds;
            dinput += ds * w.transpose();
        } else {
            params_.view(grad, skip_) += f.encoder_input.transpose() * as_row(ds);
        }
    }

    const QuantumGradient qg = quantum_grad(f.circuit, q, angle_table_size());
    report.evaluations = 1 + qg.evaluations;
    const Vector dangle = qg.jacobian * dm;

    // Encoded angles: theta = pi * logistic(v), dtheta/dv = theta (1 - theta/pi).
    const Vector dtheta = dangle.head(qi);
    const Vector dv =
        dtheta.cwiseProduct(f.theta.unaryExpr(
            [](double t) { return t * (1.0 - t / kPi); }));
    if (gcn) {
        dinput += dense_backward(encoder_, params_, f.encoder, dv, grad);
    } else {
        (void)dense_backward(encoder_, params_, f.encoder, as_row(dv), grad);
    }

    for (std::size_t l = 0; l < config_.layers; ++l) {
        auto dblock = params_.view(grad, quantum_blocks_[l]);
        const auto base = trainable_slot_base() +
                          static_cast<std::ptrdiff_t>(6 * q * l);
        for (Eigen::Index w = 0; w < qi; ++w) {
            for (Eigen::Index k = 0; k < 6; ++k) {
                dblock(w, k) += dangle(base + w * 6 + k);
            }
        }
    }

    if (gcn) {
        const Matrix &angles = f.pooled.edge_angles;
        Matrix dangles(qi, qi);
        for (Eigen::Index i = 0; i < qi; ++i) {
            for (Eigen::Index j = 0; j < qi; ++j) {
                dangles(i, j) = dangle(edge_slot_base() + i * qi + j);
            }
        }
        if (config_.sparse_lambda > 0.0) {
            dangles += config_.sparse_lambda * sparse_loss_grad(angles);
        }
        const Matrix dlogit = dangles.cwiseProduct(angles.unaryExpr(
            [](double a) { return a * (1.0 - a / kPi); }));
        const double gain = params_.block(edge_gain_)(0, 0);
        const Matrix weights = f.pooled.adjacency + Matrix::Identity(qi, qi);
        params_.view(grad, edge_gain_)(0, 0) += dlogit.cwiseProduct(weights).sum();
        params_.view(grad, edge_bias_)(0, 0) += dlogit.sum();
        const Matrix dap = gain * dlogit;

        if (!frozen_assignment_) {
            const Matrix &s = f.pooled.assignment;
            const Matrix &a = graph.adjacency;
            Matrix ds = a * s * dap.transpose() + a.transpose() * s * dap +
                        graph.features * dinput.transpose();
            const Vector inner = (ds.cwiseProduct(s)).rowwise().sum();
            const Matrix dz =
                s.cwiseProduct(ds - inner * Eigen::RowVectorXd::Ones(qi));
            const Matrix dhidden =
                dense_backward(pool_out_, params_, f.pool_out, dz, grad);
            (void)dense_backward(pool_hidden_, params_, f.pool_hidden, dhidden,
                                 grad);
        }
    }

    for (Eigen::Index i = 0; i < grad.size(); ++i) {
        if (!std::isfinite(grad(i))) {
            throw NumericError("non-finite gradient for " +
                               params_.locate(static_cast<std::size_t>(i))
                                   .to_string());
        }
    }
    report.classical_norm = params_.segment_norm(grad, Segment::kClassical);
    report.quantum_norm = params_.segment_norm(grad, Segment::kQuantum);
    return report;
}

Vector QuantumModel::logits(const Graph &graph,
                            const ForwardOptions &opts) const {
    return forward(graph, opts).logits;
}

double QuantumModel::loss(const Graph &graph, const ForwardOptions &opts) const {
    const Forward f = forward(graph, opts);
    double total = softmax_xent(f.logits, graph.label).loss;
    if (config_.kind == ModelKind::kQuanGcn) {
        total += config_.sparse_lambda * f.sparse;
    }
    return total;
}

GradientReport QuantumModel::loss_and_gradient(const Graph &graph,
                                               const ForwardOptions &opts) const {
    ForwardOptions clean = opts;
    clean.noise = nullptr;
    return hybrid_backward(graph, forward(graph, clean));
}

std::size_t QuantumModel::kept_edge_gates(const Graph &graph) const {
    if (config_.kind != ModelKind::kQuanGcn) {
        return 0;
    }
    const Forward f = forward(graph, {});
    return static_cast<std::size_t>(f.pooled.edge_kept.sum());
}

} // namespace qgcn
