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

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qgcn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Undirected graph with node features and a class label.
struct Graph {
    Matrix adjacency; ///< n x n, symmetric, {0,1}, zero diagonal
    Matrix features;  ///< n x d, d >= 1
    std::size_t label = 0;

    /// Raw per-node integer labels and attributes as read from disk; kept
    /// so a dataset can be written back out unchanged.
    std::vector<long long> node_labels;
    Matrix node_attributes; ///< n x k, k may be 0

    [[nodiscard]] std::size_t num_nodes() const {
        return static_cast<std::size_t>(adjacency.rows());
    }
    [[nodiscard]] std::size_t feature_dim() const {
        return static_cast<std::size_t>(features.cols());
    }
    [[nodiscard]] std::size_t num_edges() const;
};

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;
};

enum class FeatureSource { kNodeLabels, kNodeAttributes, kLabelsAndAttributes,
                           kDegree };

struct GraphDataset {
    std::string name;
    std::vector<Graph> graphs;
    std::size_t num_classes = 0;
    /// Original label value of each class index.
    std::vector<long long> class_values;
    /// Sorted node-label vocabulary used for one-hot features.
    std::vector<long long> node_label_values;
    FeatureSource feature_source = FeatureSource::kDegree;
    Split split;

    [[nodiscard]] std::size_t feature_dim() const {
        return graphs.empty() ? 0 : graphs.front().feature_dim();
    }
    [[nodiscard]] std::vector<std::size_t> class_counts() const;
};

[[nodiscard]] const char *to_string(FeatureSource source);

/**
 * Reads a TUDataset directory: DS_A.txt, DS_graph_indicator.txt,
 * DS_graph_labels.txt and optionally DS_node_labels.txt,
 * DS_node_attributes.txt (DS = `name`). All ids are 1-based.
 *
 * Edges are symmetrized and deduplicated; self-loops are dropped. Node
 * labels become one-hot features over the dataset vocabulary, followed by
 * any node attributes. Without either, the feature is the node degree
 * divided by the dataset's max degree. Graph labels are remapped to
 * 0..C-1 in ascending order of their original values.
 *
 * Throws ParseError naming file and line on malformed input.
 */
[[nodiscard]] GraphDataset load_tu_dataset(const std::filesystem::path &dir,
                                           const std::string &name);

/// Writes canonical TU files (both edge directions, ascending) that
/// load_tu_dataset reads back to an identical dataset.
void write_tu_dataset(const GraphDataset &dataset,
                      const std::filesystem::path &dir);

/**
 * Stratified train/val/test split.
 *
 * Sizes: each part gets floor(ratio * N); the leftover graphs go one at a
 * time to val, then test, then train. Within each class the graphs are
 * shuffled by `seed`; classes are interleaved so every contiguous block has
 * class proportions within one graph of the global ones.
 *
 * Throws ConfigError when ratios are not positive, do not sum to 1 (1e-9),
 * or a class has fewer than 3 graphs.
 */
[[nodiscard]] Split make_split(const GraphDataset &dataset,
                               const std::array<double, 3> &ratios,
                               std::uint64_t seed);

/// Per-dimension mean/std over all nodes of the given graphs.
struct FeatureScaler {
    Eigen::RowVectorXd mean;
    Eigen::RowVectorXd scale; ///< std, with 0 replaced by 1

    static FeatureScaler fit(const GraphDataset &dataset,
                             const std::vector<std::size_t> &indices);
    void apply(GraphDataset &dataset) const;
};

/// Structural equality: adjacency, features, labels, raw node data.
[[nodiscard]] bool same_graphs(const GraphDataset &a, const GraphDataset &b);

} // namespace qgcn
