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

#include "qgcn/nn.hpp"

#include "qgcn/errors.hpp"

#include <cmath>

namespace qgcn {

std::string ParamLocation::to_string() const {
    return block + "[" + std::to_string(row) + "," + std::to_string(col) + "]";
}

ModelParams::BlockId ModelParams::add_block(std::string name, Eigen::Index rows,
                                            Eigen::Index cols,
                                            Segment segment) {
    for (const auto &b : blocks_) {
        if (b.name == name) {
            throw ConfigError("duplicate parameter block '" + name + "'");
        }
    }
    ParamBlock b{std::move(name), rows, cols, size(), segment};
    const auto old = values_.size();
    values_.conservativeResize(old + static_cast<Eigen::Index>(b.size()));
    values_.tail(static_cast<Eigen::Index>(b.size())).setZero();
    blocks_.push_back(std::move(b));
    return blocks_.size() - 1;
}

Eigen::Map<Matrix> ModelParams::block(BlockId id) { return view(values_, id); }

Eigen::Map<const Matrix> ModelParams::block(BlockId id) const {
    return view(values_, id);
}

Eigen::Map<Matrix> ModelParams::view(Vector &flat, BlockId id) const {
    const auto &b = blocks_.at(id);
    return {flat.data() + b.offset, b.rows, b.cols};
}

Eigen::Map<const Matrix> ModelParams::view(const Vector &flat,
                                           BlockId id) const {
    const auto &b = blocks_.at(id);
    return {flat.data() + b.offset, b.rows, b.cols};
}

ModelParams::BlockId ModelParams::find(const std::string &name) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].name == name) {
            return i;
        }
    }
    throw ConfigError("no parameter block named '" + name + "'");
}

ParamLocation ModelParams::locate(std::size_t flat_index) const {
    for (const auto &b : blocks_) {
        if (flat_index >= b.offset && flat_index < b.offset + b.size()) {
            const auto slot = static_cast<Eigen::Index>(flat_index - b.offset);
            return {b.name, slot % b.rows, slot / b.rows};
        }
    }
    throw ConfigError("flat index " + std::to_string(flat_index) +
                      " outside parameter vector");
}

double ModelParams::segment_norm(const Vector &flat, Segment segment) const {
    double acc = 0.0;
    for (const auto &b : blocks_) {
        if (b.segment == segment) {
            acc += flat.segment(static_cast<Eigen::Index>(b.offset),
                                static_cast<Eigen::Index>(b.size()))
                       .squaredNorm();
        }
    }
    return std::sqrt(acc);
}

void ModelParams::xavier_uniform(BlockId id, Rng &rng) {
    auto w = block(id);
    const double a = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            w(r, c) = rng.uniform(-a, a);
        }
    }
}

Matrix activate(const Matrix &pre, Activation act) {
    switch (act) {
    case Activation::kRelu:
        return pre.cwiseMax(0.0);
    case Activation::kTanh:
        return pre.array().tanh().matrix();
    case Activation::kNone:
        break;
    }
    return pre;
}

Matrix activation_grad(const Matrix &pre, const Matrix &out, Activation act) {
    switch (act) {
    case Activation::kRelu:
        return (pre.array() > 0.0).cast<double>().matrix();
    case Activation::kTanh:
        return (1.0 - out.array().square()).matrix();
    case Activation::kNone:
        break;
    }
    return Matrix::Ones(pre.rows(), pre.cols());
}

DenseLayer DenseLayer::create(ModelParams &params, const std::string &name,
                              Eigen::Index in, Eigen::Index out,
                              Activation activation, Rng &rng) {
    DenseLayer layer;
    layer.weight = params.add_block(name + ".w", in, out);
    layer.bias = params.add_block(name + ".b", 1, out);
    layer.activation = activation;
    params.xavier_uniform(layer.weight, rng);
    return layer;
}

Matrix dense_forward(const DenseLayer &layer, const ModelParams &params,
                     const Matrix &x, DenseCache *cache) {
    const auto w = params.block(layer.weight);
    const auto b = params.block(layer.bias);
    if (x.cols() != w.rows()) {
        throw ConfigError("dense layer expects " + std::to_string(w.rows()) +
                          " inputs, got " + std::to_string(x.cols()));
    }
    Matrix pre = x * w;
    pre.rowwise() += b.row(0);
    Matrix out = activate(pre, layer.activation);
    if (cache != nullptr) {
        cache->input = x;
        cache->pre = std::move(pre);
        cache->output = out;
    }
    return out;
}

Matrix dense_backward(const DenseLayer &layer, const ModelParams &params,
                      const DenseCache &cache, const Matrix &grad_out,
                      Vector &grad) {
    const Matrix dpre =
        grad_out.cwiseProduct(
            activation_grad(cache.pre, cache.output, layer.activation));
    params.view(grad, layer.weight) += cache.input.transpose() * dpre;
    params.view(grad, layer.bias) += dpre.colwise().sum();
    return dpre * params.block(layer.weight).transpose();
}

namespace {

Vector neighbourhood_sizes(const Matrix &a_hat) {
    Vector sizes(a_hat.rows());
    for (Eigen::Index i = 0; i < a_hat.rows(); ++i) {
        sizes(i) = static_cast<double>((a_hat.row(i).array() != 0.0).count());
    }
    return sizes;
}

} // namespace

Matrix gcn_layer(const Matrix &a_hat, const Matrix &x, const DenseLayer &layer,
                 const ModelParams &params, Aggregate aggregate,
                 GcnCache *cache) {
    if (a_hat.rows() != a_hat.cols() || a_hat.cols() != x.rows()) {
        throw ConfigError("gcn_layer: A_hat is " + std::to_string(a_hat.rows()) +
                          "x" + std::to_string(a_hat.cols()) + " but X has " +
                          std::to_string(x.rows()) + " rows");
    }
    Matrix agg = a_hat * x;
    if (aggregate == Aggregate::kMean) {
        agg = neighbourhood_sizes(a_hat).asDiagonal().inverse() * agg;
    }
    Matrix out = dense_forward(layer, params, agg,
                               cache != nullptr ? &cache->dense : nullptr);
    if (cache != nullptr) {
        cache->aggregated = std::move(agg);
    }
    return out;
}

Matrix gcn_layer_backward(const Matrix &a_hat, const DenseLayer &layer,
                          const ModelParams &params, Aggregate aggregate,
                          const GcnCache &cache, const Matrix &grad_out,
                          Vector &grad) {
    Matrix dagg = dense_backward(layer, params, cache.dense, grad_out, grad);
    if (aggregate == Aggregate::kMean) {
        dagg = neighbourhood_sizes(a_hat).asDiagonal().inverse() * dagg;
    }
    return a_hat.transpose() * dagg;
}

Matrix normalized_adjacency(const Matrix &adjacency) {
    Matrix a = adjacency + Matrix::Identity(adjacency.rows(), adjacency.cols());
    const Vector inv_sqrt = a.rowwise().sum().array().rsqrt();
    return inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
}

Matrix sgc_precompute(const Matrix &adjacency, const Matrix &x, int hops) {
    if (hops < 1) {
        throw ConfigError("sgc_precompute: hops must be >= 1");
    }
    const Matrix a_hat = normalized_adjacency(adjacency);
    Matrix out = x;
    for (int k = 0; k < hops; ++k) {
        out = a_hat * out;
    }
    return out;
}

Vector softmax(const Vector &logits) {
    const double mx = logits.maxCoeff();
    Vector e = (logits.array() - mx).exp();
    return e / e.sum();
}

LossAndGrad softmax_xent(const Vector &logits, std::size_t label) {
    if (label >= static_cast<std::size_t>(logits.size())) {
        throw ConfigError("label " + std::to_string(label) + " out of range for " +
                          std::to_string(logits.size()) + " classes");
    }
    const auto y = static_cast<Eigen::Index>(label);
    const double mx = logits.maxCoeff();
    const Vector shifted = logits.array() - mx;
    const double log_z = std::log(shifted.array().exp().sum());
    LossAndGrad out;
    out.loss = log_z - shifted(y);
    out.grad = (shifted.array() - log_z).exp();
    out.grad(y) -= 1.0;
    return out;
}

void adam_step(ModelParams &params, const Vector &grad, AdamState &state,
               const AdamHyper &hyper) {
    if (grad.size() != params.values().size()) {
        throw ConfigError("adam_step: gradient length mismatch");
    }
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
        if (!std::isfinite(grad(i))) {
            throw NumericError(
                "non-finite gradient at flat index " + std::to_string(i) +
                " (" + params.locate(static_cast<std::size_t>(i)).to_string() +
                ")");
        }
    }
    if (state.m.size() != grad.size()) {
        state.m = Vector::Zero(grad.size());
        state.v = Vector::Zero(grad.size());
        state.step = 0;
    }
    ++state.step;
    state.m = hyper.beta1 * state.m + (1.0 - hyper.beta1) * grad;
    state.v = hyper.beta2 * state.v +
              (1.0 - hyper.beta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(state.step));
    const double c2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(state.step));
    auto &x = params.values();
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double mhat = state.m(i) / c1;
        const double vhat = state.v(i) / c2;
        x(i) -= hyper.lr * mhat / (std::sqrt(vhat) + hyper.eps);
    }
}

} // namespace qgcn
