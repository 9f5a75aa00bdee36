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

#include "qgcn/graph_data.hpp"
#include "qgcn/rng.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace qgcn {

using RowVector = Eigen::RowVectorXd;

enum class Segment { kClassical, kQuantum };

/// A named rows x cols block inside the flat parameter vector.
struct ParamBlock {
    std::string name;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::size_t offset = 0;
    Segment segment = Segment::kClassical;

    [[nodiscard]] std::size_t size() const {
        return static_cast<std::size_t>(rows * cols);
    }
};

/// Where a flat index lives: block name plus (row, col) inside it.
struct ParamLocation {
    std::string block;
    Eigen::Index row = 0;
    Eigen::Index col = 0;

    [[nodiscard]] std::string to_string() const;
};

/**
 * Every trainable scalar of a model in one flat vector, with a registry of
 * named blocks. Blocks are column-major views into the vector, so (block,
 * slot) -> offset + slot is a bijection onto 0..size()-1.
 */
class ModelParams {
  public:
    using BlockId = std::size_t;

    BlockId add_block(std::string name, Eigen::Index rows, Eigen::Index cols,
                      Segment segment = Segment::kClassical);

    [[nodiscard]] Eigen::Map<Matrix> block(BlockId id);
    [[nodiscard]] Eigen::Map<const Matrix> block(BlockId id) const;

    /// Same block layout over an external vector (e.g. a gradient).
    [[nodiscard]] Eigen::Map<Matrix> view(Vector &flat, BlockId id) const;
    [[nodiscard]] Eigen::Map<const Matrix> view(const Vector &flat,
                                                BlockId id) const;

    [[nodiscard]] BlockId find(const std::string &name) const;
    [[nodiscard]] const std::vector<ParamBlock> &registry() const {
        return blocks_;
    }
    [[nodiscard]] ParamLocation locate(std::size_t flat_index) const;

    [[nodiscard]] std::size_t size() const {
        return static_cast<std::size_t>(values_.size());
    }
    [[nodiscard]] Vector &values() { return values_; }
    [[nodiscard]] const Vector &values() const { return values_; }

    /// Sum of squares of entries in `segment`, square-rooted.
    [[nodiscard]] double segment_norm(const Vector &flat,
                                      Segment segment) const;

    /// Xavier-uniform fill of a weight block: U(-a, a), a = sqrt(6/(in+out)).
    void xavier_uniform(BlockId id, Rng &rng);

  private:
    std::vector<ParamBlock> blocks_;
    Vector values_;
};

enum class Activation { kRelu, kTanh, kNone };

[[nodiscard]] Matrix activate(const Matrix &pre, Activation act);
/// d act / d pre, given pre-activation and activation output.
[[nodiscard]] Matrix activation_grad(const Matrix &pre, const Matrix &out,
                                     Activation act);

/// Fully connected layer y = act(x W + b) on row-major samples. W and b are
/// blocks in a ModelParams (W: in x out, b: 1 x out).
struct DenseLayer {
    ModelParams::BlockId weight = 0;
    ModelParams::BlockId bias = 0;
    Activation activation = Activation::kNone;

    /// Registers W and b under `name`.w / `name`.b with Xavier init.
    static DenseLayer create(ModelParams &params, const std::string &name,
                             Eigen::Index in, Eigen::Index out,
                             Activation activation, Rng &rng);
};

struct DenseCache {
    Matrix input;
    Matrix pre;
    Matrix output;
};

[[nodiscard]] Matrix dense_forward(const DenseLayer &layer,
                                   const ModelParams &params, const Matrix &x,
                                   DenseCache *cache = nullptr);

/// Accumulates dW, db into `grad` (flat, same layout) and returns dL/dx.
Matrix dense_backward(const DenseLayer &layer, const ModelParams &params,
                      const DenseCache &cache, const Matrix &grad_out,
                      Vector &grad);

enum class Aggregate { kSum, kMean };

struct GcnCache {
    Matrix aggregated; ///< Agg(A_hat, X) before projection
    DenseCache dense;
};

/**
 * One message-passing layer: row i = act(Agg_{j in N(i) u {i}} a_ij x_j W + b).
 * SUM gives A_hat X W; MEAN divides row i by |N(i) u {i}|, counted from the
 * non-zero entries of A_hat. A_hat must carry self-loops.
 */
[[nodiscard]] Matrix gcn_layer(const Matrix &a_hat, const Matrix &x,
                               const DenseLayer &layer,
                               const ModelParams &params, Aggregate aggregate,
                               GcnCache *cache = nullptr);

/// Accumulates parameter gradients and returns dL/dX.
Matrix gcn_layer_backward(const Matrix &a_hat, const DenseLayer &layer,
                          const ModelParams &params, Aggregate aggregate,
                          const GcnCache &cache, const Matrix &grad_out,
                          Vector &grad);

/// D^{-1/2} (A + I) D^{-1/2} with D the degree of A + I.
[[nodiscard]] Matrix normalized_adjacency(const Matrix &adjacency);

/// A_hat^K X with A_hat = normalized_adjacency(A). K >= 1.
[[nodiscard]] Matrix sgc_precompute(const Matrix &adjacency, const Matrix &x,
                                    int hops);

struct LossAndGrad {
    double loss = 0.0;
    Vector grad;
};

/// -log softmax(logits)[label] with max subtraction; grad = softmax - onehot.
[[nodiscard]] LossAndGrad softmax_xent(const Vector &logits,
                                       std::size_t label);

[[nodiscard]] Vector softmax(const Vector &logits);

struct AdamHyper {
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    Vector m;
    Vector v;
    long step = 0;
};

/// Bias-corrected Adam. Throws NumericError naming the parameter when a
/// gradient entry is not finite; parameters are untouched in that case.
void adam_step(ModelParams &params, const Vector &grad, AdamState &state,
               const AdamHyper &hyper);

} // namespace qgcn
