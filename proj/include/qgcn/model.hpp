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
#include "qgcn/gradient.hpp"
#include "qgcn/graph_data.hpp"
#include "qgcn/noise.hpp"
#include "qgcn/nn.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace qgcn {

enum class ModelKind { kMlp, kSgc, kGcn, kQuanMlp, kQuanSgc, kQuanGcn };

[[nodiscard]] const char *to_string(ModelKind kind);
/// Accepts the names printed by to_string (case-insensitive).
[[nodiscard]] ModelKind parse_model_kind(const std::string &name);
[[nodiscard]] bool is_quantum(ModelKind kind);

/// Architecture switches shared by every model family.
struct ModelConfig {
    ModelKind kind = ModelKind::kQuanGcn;
    std::size_t qubits = 4;
    std::size_t layers = 2;
    bool skip_connection = false;
    double sparse_lambda = 0.0;
    /// Edge gates with angle below this (radians) are left out of the circuit.
    double mask_threshold = 0.05;
    /// Width of hidden layers (pooling encoder, classical baselines).
    std::size_t hidden = 64;
    int sgc_hops = 2;
    /// When false the U3CU3 angles are constants: no shift evaluations and a
    /// zero quantum gradient segment.
    bool train_circuit = true;

    void validate() const;
};

/// Per-call switches for a forward pass.
struct ForwardOptions {
    /// When set (and noisy), expectations come from noisy_forward.
    const NoiseModel *noise = nullptr;
    /// When set, random gates are injected into the circuit with `rng`.
    const InjectionPolicy *injection = nullptr;
    std::uint64_t stream = 0; ///< seeds noise and injection for this call
};

/// Common surface of all graph classifiers.
class GraphModel {
  public:
    virtual ~GraphModel() = default;

    [[nodiscard]] virtual Vector logits(const Graph &graph,
                                        const ForwardOptions &opts) const = 0;

    /// Total loss and its gradient w.r.t. params(). Noiseless by contract.
    [[nodiscard]] virtual GradientReport
    loss_and_gradient(const Graph &graph, const ForwardOptions &opts) const = 0;

    /// Total loss only (used by finite-difference checks).
    [[nodiscard]] virtual double loss(const Graph &graph,
                                      const ForwardOptions &opts) const = 0;

    [[nodiscard]] ModelParams &params() { return params_; }
    [[nodiscard]] const ModelParams &params() const { return params_; }
    [[nodiscard]] const ModelConfig &config() const { return config_; }
    [[nodiscard]] std::size_t num_classes() const { return num_classes_; }
    [[nodiscard]] std::size_t feature_dim() const { return feature_dim_; }

  protected:
    GraphModel(ModelConfig config, std::size_t feature_dim,
               std::size_t num_classes)
        : config_(config), feature_dim_(feature_dim),
          num_classes_(num_classes) {}

    ModelParams params_;
    ModelConfig config_;
    std::size_t feature_dim_;
    std::size_t num_classes_;
};

/// Builds a model with seed-controlled Xavier initialization.
[[nodiscard]] std::unique_ptr<GraphModel>
make_model(const ModelConfig &config, std::size_t feature_dim,
           std::size_t num_classes, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Classical baselines
// ---------------------------------------------------------------------------

/// MLP: two dense layers on mean-pooled features. SGC: the same on
/// mean-pooled A_hat^K X. GCN: two SUM-aggregated layers over the
/// normalized adjacency, mean readout, linear classifier.
class ClassicalModel final : public GraphModel {
  public:
    ClassicalModel(const ModelConfig &config, std::size_t feature_dim,
                   std::size_t num_classes, std::uint64_t seed);

    [[nodiscard]] Vector logits(const Graph &graph,
                                const ForwardOptions &opts) const override;
    [[nodiscard]] GradientReport
    loss_and_gradient(const Graph &graph,
                      const ForwardOptions &opts) const override;
    [[nodiscard]] double loss(const Graph &graph,
                              const ForwardOptions &opts) const override;

  private:
    struct Cache;
    Vector forward(const Graph &graph, Cache *cache) const;

    DenseLayer first_;
    DenseLayer second_;
    DenseLayer classifier_; ///< GCN only
};

// ---------------------------------------------------------------------------
// Hybrid quantum models
// ---------------------------------------------------------------------------

/// Coarsened graph produced by the pooling encoder.
struct PooledGraph {
    Matrix assignment;   ///< S, n x q, row-stochastic
    Matrix adjacency;    ///< A_p = S^T A S
    Matrix features;     ///< X_p = S^T X
    Matrix edge_angles;  ///< pre-mask angles in [0, pi], diagonal included
    Matrix edge_kept;    ///< 1 where the gate survives the mask, else 0
};

/// A_p = S^T A S and X_p = S^T X for a given assignment S.
[[nodiscard]] PooledGraph pool_with_assignment(const Graph &graph,
                                               const Matrix &assignment);

/// pi * logistic(gain * weights + bias), elementwise.
[[nodiscard]] Matrix angle_normalize(const Matrix &weights, double gain = 1.0,
                                     double bias = 0.0);

/// 1 where angle >= threshold, else 0.
[[nodiscard]] Matrix edge_mask(const Matrix &angles, double threshold);

/// Entropy of entries / sum(entries): -sum p log p (0 log 0 = 0).
/// Throws ConfigError on negative entries or an all-zero matrix.
[[nodiscard]] double sparse_loss(const Matrix &weights);

/// d sparse_loss / d weights.
[[nodiscard]] Matrix sparse_loss_grad(const Matrix &weights);

/// Ry(angle_i) on wire i, one gate per entry.
[[nodiscard]] Circuit encoding_circuit(const Vector &angles);

/// For each target i ascending: U1(a_ii) on i, then CU1(a_ij, [j, i]) for
/// j != i ascending. Gates with kept(i, j) == 0 are left out. When
/// `slot_base` >= 0 each gate is trainable with slot slot_base + i*q + j.
[[nodiscard]] Circuit graph_conv_circuit(const Matrix &angles,
                                         const Matrix &kept,
                                         std::ptrdiff_t slot_base = kNoSlot);

/// U3 on every wire ascending, then CU3 on ring pairs (w, w+1 mod q).
/// `angles` is q x 6: columns 0-2 the U3 angles of wire w, columns 3-5 the
/// CU3 angles of pair (w, w+1). Slots follow slot_base + w*6 + k.
[[nodiscard]] Circuit trainable_layer_circuit(const Matrix &angles,
                                              std::ptrdiff_t slot_base = kNoSlot);

/**
 * QuanGCN and its QuanMLP / QuanSGC variants.
 *
 * QuanGCN: S = softmax(MLP(X || A X)); pool; encode theta_i =
 * pi*logistic(X_p[i] w + b) with Ry; L x (graph conv over A_hat, U3CU3
 * layer); Pauli-Z readout m; r = m (|| X_p w_skip); logits = r W + b.
 * A_hat = pi*logistic(g (A_p + I) + c) with trainable gain g and bias c.
 *
 * QuanMLP: theta = pi*logistic(mean(X) W_in + b_in); L x U3CU3; readout as
 * above with skip = mean(X) W_skip. QuanSGC: QuanMLP on A_hat^K X.
 */
class QuantumModel final : public GraphModel {
  public:
    QuantumModel(const ModelConfig &config, std::size_t feature_dim,
                 std::size_t num_classes, std::uint64_t seed);

    /// Everything a backward pass needs from the forward pass.
    struct Forward {
        // pooling (QuanGCN)
        Matrix pool_input;
        DenseCache pool_hidden;
        DenseCache pool_out;
        PooledGraph pooled;
        Matrix edge_logits; ///< g (A_p + I) + c
        // encoding
        Matrix encoder_input; ///< X_p (QuanGCN) or pooled features (1 x d)
        DenseCache encoder;
        Vector feature_logits; ///< pre-logistic encoder outputs, length q
        Vector theta;          ///< encoded Ry angles
        // circuit
        std::vector<double> angle_table;
        Circuit circuit;
        Vector measurements;
        // readout
        Vector skip;
        DenseCache classifier;
        Vector logits;
        double sparse = 0.0;
    };

    [[nodiscard]] Forward forward(const Graph &graph,
                                  const ForwardOptions &opts) const;

    /// Hybrid gradient of xent + sparse_lambda * L_sparse. Classical parts
    /// by reverse mode; circuit angles by parameter shift, chained through
    /// the logistic angle maps and the pooling products.
    [[nodiscard]] GradientReport hybrid_backward(const Graph &graph,
                                                 const Forward &fwd) const;

    [[nodiscard]] Vector logits(const Graph &graph,
                                const ForwardOptions &opts) const override;
    [[nodiscard]] GradientReport
    loss_and_gradient(const Graph &graph,
                      const ForwardOptions &opts) const override;
    [[nodiscard]] double loss(const Graph &graph,
                              const ForwardOptions &opts) const override;

    /// Number of U1/CU1 gates per graph-conv layer after masking.
    [[nodiscard]] std::size_t kept_edge_gates(const Graph &graph) const;

    /// Size of the circuit angle table: q encodings, q^2 edges, 6qL
    /// trainable angles.
    [[nodiscard]] std::size_t angle_table_size() const;

    /// Replaces the pooling encoder by a fixed assignment (tests only).
    void freeze_assignment(Matrix assignment) {
        frozen_assignment_ = std::move(assignment);
    }

    /// Block ids of the trainable circuit angles.
    [[nodiscard]] const std::vector<ModelParams::BlockId> &
    quantum_blocks() const {
        return quantum_blocks_;
    }

  private:
    [[nodiscard]] Matrix node_features(const Graph &graph) const;
    [[nodiscard]] std::ptrdiff_t edge_slot_base() const;
    [[nodiscard]] std::ptrdiff_t trainable_slot_base() const;

    DenseLayer pool_hidden_;
    DenseLayer pool_out_;
    ModelParams::BlockId edge_gain_ = 0;
    ModelParams::BlockId edge_bias_ = 0;
    DenseLayer encoder_;
    ModelParams::BlockId skip_ = 0;
    DenseLayer classifier_;
    std::vector<ModelParams::BlockId> quantum_blocks_; ///< one q x 6 per layer
    std::optional<Matrix> frozen_assignment_;
};

} // namespace qgcn
