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
#include "qgcn/model.hpp"
#include "qgcn/nn.hpp"
#include "qgcn/noise.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qgcn {

inline constexpr const char *kCodeVersion = "0.1.0";
inline constexpr const char *kDataRootEnv = "QGCN_DATA_ROOT";

/**
 * Everything that determines a run. Text form is one `key = value` per
 * line; `#` starts a comment. Keys:
 *
 *   dataset         directory holding the TU files ("" = $QGCN_DATA_ROOT/name,
 *                   or data/name when the variable is unset)
 *   name            dataset prefix, e.g. MUTAG
 *   model           MLP | SGC | GCN | QUANMLP | QUANSGC | QUANGCN
 *   qubits, layers, hidden, sgc_hops, train_circuit, skip, sparse_lambda,
 *   mask_threshold
 *   inject, inject_prob, inject_spread
 *   noise           none | default | p1,p2,pr,T   (evaluation noise)
 *   noise_seed
 *   lr, beta1, beta2, eps, epochs
 *   split           train,val,test ratios
 *   seeds           comma list and/or inclusive ranges a..b
 *   out             output directory
 */
struct ExperimentConfig {
    std::string dataset;
    std::string name = "MUTAG";
    ModelConfig model;
    bool inject = false;
    InjectionPolicy injection;
    std::string noise = "default";
    std::uint64_t noise_seed = 0;
    AdamHyper adam;
    std::size_t epochs = 100;
    std::array<double, 3> split = {0.8, 0.1, 0.1};
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::string out = "runs/default";

    /// Sets one key from its text value. ConfigError names the key.
    void set(const std::string &key, const std::string &value);
    /// Applies a whole config text. Unknown keys are rejected.
    void apply_text(const std::string &text, const std::string &origin);
    void apply_file(const std::filesystem::path &path);

    void validate() const;

    /// Every key with its resolved value, in a fixed order.
    [[nodiscard]] std::vector<std::pair<std::string, std::string>>
    entries() const;
    [[nodiscard]] std::string to_text() const;

    /// Dataset directory after applying the data-root default.
    [[nodiscard]] std::filesystem::path dataset_dir() const;
    [[nodiscard]] NoiseModel noise_model() const;
};

[[nodiscard]] bool parse_bool(const std::string &key, const std::string &value);
[[nodiscard]] std::vector<std::uint64_t> parse_seeds(const std::string &text);

struct Stat {
    double mean = 0.0;
    std::optional<double> std; ///< sample std, absent for fewer than 2 values
    std::size_t n = 0;
};

[[nodiscard]] Stat summarize(const std::vector<double> &values);

struct SeedResult {
    std::uint64_t seed = 0;
    bool aborted = false;
    std::string abort_reason;
    std::size_t best_epoch = 0;
    double train_acc = 0.0;
    double val_acc = 0.0;
    double test_acc = 0.0;
    double test_acc_noisy = 0.0;
    double final_loss = 0.0;
    /// QuanGCN: mean number of edge gates per conv layer left after the
    /// mask, over all graphs of the dataset.
    std::optional<double> edge_gates;
    /// QuanGCN: mean count of normalized edge weights above 1/q^2.
    std::optional<double> dense_edges;
    double seconds = 0.0;
};

struct DatasetInfo {
    std::string name;
    std::size_t graphs = 0;
    std::size_t classes = 0;
    std::vector<std::size_t> class_counts;
    std::size_t feature_dim = 0;
    std::string feature_source;
    double majority_rate = 0.0;
    std::array<std::size_t, 3> split_sizes = {0, 0, 0};
};

struct RunResult {
    ExperimentConfig config;
    DatasetInfo dataset;
    std::vector<SeedResult> seeds;
    double seconds = 0.0;

    [[nodiscard]] Stat stat(double SeedResult::*field) const;
    [[nodiscard]] std::optional<Stat>
    stat(std::optional<double> SeedResult::*field) const;
    /// Deterministic result document (no timings).
    [[nodiscard]] std::string to_json() const;
    /// One header line plus one line per seed.
    [[nodiscard]] std::string to_csv() const;
};

[[nodiscard]] RunResult parse_result_json(const std::string &text);

struct TrainOptions {
    bool force = false;
    bool parallel_seeds = false;
    std::ostream *log = nullptr;
};

/// Loads the dataset with its features standardized on the split's
/// training nodes; the split is drawn from `seed`.
[[nodiscard]] GraphDataset prepare_dataset(const ExperimentConfig &config,
                                           std::uint64_t seed);
[[nodiscard]] DatasetInfo describe(const GraphDataset &dataset);

/// Argmax accuracy over `indices`. With `noise`, graph k uses stream k.
[[nodiscard]] double accuracy(const GraphModel &model,
                              const GraphDataset &dataset,
                              const std::vector<std::size_t> &indices,
                              const NoiseModel *noise = nullptr);

/// Trains one seed; `best` receives the selected parameters.
[[nodiscard]] SeedResult train_seed(const ExperimentConfig &config,
                                    std::uint64_t seed, Vector *best = nullptr,
                                    std::ostream *log = nullptr);

/**
 * Runs every seed and writes into config.out:
 *   result.json      deterministic result document
 *   seeds.csv        one line per seed
 *   timing.json      wall-clock seconds (kept apart so result.json is stable)
 *   config.txt       resolved configuration
 *   ckpt/seed_<s>.ckpt  selected parameters per seed
 *
 * The dataset is loaded before anything is written; an existing output
 * directory needs `force`.
 */
RunResult cmd_train(const ExperimentConfig &config, const TrainOptions &opts);

/// Re-evaluates a checkpoint's test split under `noise` (preset text).
RunResult cmd_eval(const std::filesystem::path &checkpoint,
                   const std::string &noise, std::uint64_t noise_seed = 0);

enum class TableKind { kT1, kT3 };

[[nodiscard]] TableKind parse_table_kind(const std::string &text);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::string> rows;
    /// cells[row][col]; empty when the run is absent.
    std::vector<std::vector<std::optional<Stat>>> cells;

    [[nodiscard]] std::string to_text() const;
    [[nodiscard]] std::string to_json() const;
};

/**
 * Gathers result.json files directly below `results_dir`. T1: clean test
 * accuracy of the six models without mitigation. T3: noisy test accuracy
 * of QuanGCN with injection, skip, sparse and skip+sparse. Writes
 * table_<kind>.txt and table_<kind>.json next to the runs. Throws Error
 * listing every missing run.
 */
Table cmd_table(const std::filesystem::path &results_dir, TableKind kind);

/// Human-readable dataset statistics.
[[nodiscard]] std::string inspect_dataset(const std::filesystem::path &dir,
                                          const std::string &name);

} // namespace qgcn
