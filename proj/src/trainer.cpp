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

#include "qgcn/trainer.hpp"

#include "qgcn/checkpoint.hpp"
#include "qgcn/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace qgcn {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        parts.push_back(trim(cur));
    }
    return parts;
}

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double to_double(const std::string &key, const std::string &value) {
    double out = 0.0;
    const auto *end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out)) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    return out;
}

std::uint64_t to_uint(const std::string &key, const std::string &value) {
    std::uint64_t out = 0;
    const auto *end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ConfigError(key + ": expected a non-negative integer, got '" +
                          value + "'");
    }
    return out;
}

void write_file(const fs::path &path, const std::string &body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) {
        throw Error("cannot write " + path.string());
    }
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t argmax(const Vector &v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (v(i) > v(best)) {
            best = i;
        }
    }
    return static_cast<std::size_t>(best);
}

std::uint64_t training_stream(std::uint64_t seed, std::size_t epoch,
                              std::size_t graph) {
    return Rng::mix(Rng::mix(seed) ^ (static_cast<std::uint64_t>(epoch) << 32) ^
                    graph);
}

} // namespace

// ---------------------------------------------------------------------------
// ExperimentConfig
// ---------------------------------------------------------------------------

bool parse_bool(const std::string &key, const std::string &value) {
    std::string v = value;
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

std::vector<std::uint64_t> parse_seeds(const std::string &text) {
    std::vector<std::uint64_t> seeds;
    for (const auto &part : split_list(text, ',')) {
        if (part.empty()) {
            throw ConfigError("seeds: empty entry in '" + text + "'");
        }
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            seeds.push_back(to_uint("seeds", part));
            continue;
        }
        const auto lo = to_uint("seeds", trim(part.substr(0, dots)));
        const auto hi = to_uint("seeds", trim(part.substr(dots + 2)));
        if (hi < lo || hi - lo > 100000) {
            throw ConfigError("seeds: bad range '" + part + "'");
        }
        for (auto s = lo; s <= hi; ++s) {
            seeds.push_back(s);
        }
    }
    if (seeds.empty()) {
        throw ConfigError("seeds: list is empty");
    }
    return seeds;
}

void ExperimentConfig::set(const std::string &key, const std::string &raw) {
    const std::string value = trim(raw);
    if (key == "dataset") {
        dataset = value;
    } else if (key == "name") {
        if (value.empty()) {
            throw ConfigError("name: must not be empty");
        }
        name = value;
    } else if (key == "model") {
        model.kind = parse_model_kind(value);
    } else if (key == "qubits") {
        model.qubits = to_uint(key, value);
    } else if (key == "layers") {
        model.layers = to_uint(key, value);
    } else if (key == "hidden") {
        model.hidden = to_uint(key, value);
    } else if (key == "sgc_hops") {
        model.sgc_hops = static_cast<int>(to_uint(key, value));
    } else if (key == "train_circuit") {
        model.train_circuit = parse_bool(key, value);
    } else if (key == "skip") {
        model.skip_connection = parse_bool(key, value);
    } else if (key == "sparse_lambda") {
        model.sparse_lambda = to_double(key, value);
    } else if (key == "mask_threshold") {
        model.mask_threshold = to_double(key, value);
    } else if (key == "inject") {
        inject = parse_bool(key, value);
    } else if (key == "inject_prob") {
        injection.insert_prob = to_double(key, value);
    } else if (key == "inject_spread") {
        injection.angle_spread = to_double(key, value);
    } else if (key == "noise") {
        noise = value;
    } else if (key == "noise_seed") {
        noise_seed = to_uint(key, value);
    } else if (key == "lr") {
        adam.lr = to_double(key, value);
    } else if (key == "beta1") {
        adam.beta1 = to_double(key, value);
    } else if (key == "beta2") {
        adam.beta2 = to_double(key, value);
    } else if (key == "eps") {
        adam.eps = to_double(key, value);
    } else if (key == "epochs") {
        epochs = to_uint(key, value);
    } else if (key == "split") {
        const auto parts = split_list(value, ',');
        if (parts.size() != 3) {
            throw ConfigError("split: expected three ratios train,val,test");
        }
        for (std::size_t i = 0; i < 3; ++i) {
            split[i] = to_double(key, parts[i]);
        }
    } else if (key == "seeds") {
        seeds = parse_seeds(value);
    } else if (key == "out") {
        out = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void ExperimentConfig::apply_text(const std::string &text,
                                  const std::string &origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(origin, lineno, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        try {
            set(key, line.substr(eq + 1));
        } catch (const ConfigError &e) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": " +
                              e.what());
        }
    }
}

void ExperimentConfig::apply_file(const fs::path &path) {
    apply_text(read_file(path), path.string());
}

void ExperimentConfig::validate() const {
    model.validate();
    injection.validate();
    (void)NoiseModel::parse(noise, noise_seed);
    if (!(adam.lr > 0.0)) {
        throw ConfigError("lr: must be positive");
    }
    if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0)) {
        throw ConfigError("beta1: must lie in [0, 1)");
    }
    if (!(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) {
        throw ConfigError("beta2: must lie in [0, 1)");
    }
    if (!(adam.eps > 0.0)) {
        throw ConfigError("eps: must be positive");
    }
    if (epochs < 1) {
        throw ConfigError("epochs: must be >= 1");
    }
    double total = 0.0;
    for (double r : split) {
        if (!(r > 0.0)) {
            throw ConfigError("split: ratios must be positive");
        }
        total += r;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ConfigError("split: ratios must sum to 1");
    }
    if (seeds.empty()) {
        throw ConfigError("seeds: list is empty");
    }
    if (out.empty()) {
        throw ConfigError("out: must not be empty");
    }
}

std::vector<std::pair<std::string, std::string>>
ExperimentConfig::entries() const {
    std::string seed_text;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        seed_text += (i ? "," : "") + std::to_string(seeds[i]);
    }
    return {
        {"dataset", dataset_dir().string()},
        {"name", name},
        {"model", to_string(model.kind)},
        {"qubits", std::to_string(model.qubits)},
        {"layers", std::to_string(model.layers)},
        {"hidden", std::to_string(model.hidden)},
        {"sgc_hops", std::to_string(model.sgc_hops)},
        {"train_circuit", model.train_circuit ? "true" : "false"},
        {"skip", model.skip_connection ? "true" : "false"},
        {"sparse_lambda", fmt(model.sparse_lambda)},
        {"mask_threshold", fmt(model.mask_threshold)},
        {"inject", inject ? "true" : "false"},
        {"inject_prob", fmt(injection.insert_prob)},
        {"inject_spread", fmt(injection.angle_spread)},
        {"noise", NoiseModel::parse(noise, noise_seed).to_string()},
        {"noise_seed", std::to_string(noise_seed)},
        {"lr", fmt(adam.lr)},
        {"beta1", fmt(adam.beta1)},
        {"beta2", fmt(adam.beta2)},
        {"eps", fmt(adam.eps)},
        {"epochs", std::to_string(epochs)},
        {"split", fmt(split[0]) + "," + fmt(split[1]) + "," + fmt(split[2])},
        {"seeds", seed_text},
        {"out", out},
    };
}

std::string ExperimentConfig::to_text() const {
    std::string text;
    for (const auto &[k, v] : entries()) {
        text += k + " = " + v + "\n";
    }
    return text;
}

fs::path ExperimentConfig::dataset_dir() const {
    if (!dataset.empty()) {
        return dataset;
    }
    const char *root = std::getenv(kDataRootEnv);
    return fs::path(root != nullptr && *root != '\0' ? root : "data") / name;
}

NoiseModel ExperimentConfig::noise_model() const {
    return NoiseModel::parse(noise, noise_seed);
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

Stat summarize(const std::vector<double> &values) {
    Stat s;
    s.n = values.size();
    if (values.empty()) {
        return s;
    }
    for (double v : values) {
        s.mean += v;
    }
    s.mean /= static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

Stat RunResult::stat(double SeedResult::*field) const {
    std::vector<double> v;
    for (const auto &s : seeds) {
        if (!s.aborted) {
            v.push_back(s.*field);
        }
    }
    return summarize(v);
}

std::optional<Stat>
RunResult::stat(std::optional<double> SeedResult::*field) const {
    std::vector<double> v;
    for (const auto &s : seeds) {
        if (!s.aborted && (s.*field).has_value()) {
            v.push_back(*(s.*field));
        }
    }
    if (v.empty()) {
        return std::nullopt;
    }
    return summarize(v);
}

namespace {

json stat_json(const Stat &s) {
    json j;
    j["mean"] = s.mean;
    j["std"] = s.std ? json(*s.std) : json(nullptr);
    j["n"] = s.n;
    return j;
}

} // namespace

std::string RunResult::to_json() const {
    json j;
    j["format"] = "qgcn-result";
    j["code_version"] = kCodeVersion;
    json cfg = json::object();
    for (const auto &[k, v] : config.entries()) {
        cfg[k] = v;
    }
    j["config"] = cfg;
    json ds;
    ds["name"] = dataset.name;
    ds["graphs"] = dataset.graphs;
    ds["classes"] = dataset.classes;
    ds["class_counts"] = dataset.class_counts;
    ds["feature_dim"] = dataset.feature_dim;
    ds["feature_source"] = dataset.feature_source;
    ds["majority_rate"] = dataset.majority_rate;
    ds["split_sizes"] = dataset.split_sizes;
    j["dataset"] = ds;

    json summary;
    summary["train_acc"] = stat_json(stat(&SeedResult::train_acc));
    summary["val_acc"] = stat_json(stat(&SeedResult::val_acc));
    summary["test_acc"] = stat_json(stat(&SeedResult::test_acc));
    summary["test_acc_noisy"] = stat_json(stat(&SeedResult::test_acc_noisy));
    const auto gates = stat(&SeedResult::edge_gates);
    summary["edge_gates"] = gates ? stat_json(*gates) : json(nullptr);
    const auto dense = stat(&SeedResult::dense_edges);
    summary["dense_edges"] = dense ? stat_json(*dense) : json(nullptr);
    json aborted = json::array();
    for (const auto &s : seeds) {
        if (s.aborted) {
            aborted.push_back(s.seed);
        }
    }
    summary["aborted_seeds"] = aborted;
    j["summary"] = summary;

    json per_seed = json::array();
    for (const auto &s : seeds) {
        json r;
        r["seed"] = s.seed;
        r["aborted"] = s.aborted;
        r["abort_reason"] = s.abort_reason;
        r["best_epoch"] = s.best_epoch;
        r["train_acc"] = s.train_acc;
        r["val_acc"] = s.val_acc;
        r["test_acc"] = s.test_acc;
        r["test_acc_noisy"] = s.test_acc_noisy;
        r["final_loss"] = std::isfinite(s.final_loss) ? json(s.final_loss)
                                                      : json(nullptr);
        r["edge_gates"] = s.edge_gates ? json(*s.edge_gates) : json(nullptr);
        r["dense_edges"] = s.dense_edges ? json(*s.dense_edges) : json(nullptr);
        per_seed.push_back(r);
    }
    j["seeds"] = per_seed;
    return j.dump(2) + "\n";
}

std::string RunResult::to_csv() const {
    std::ostringstream out;
    out << "seed,aborted,best_epoch,train_acc,val_acc,test_acc,test_acc_noisy,"
           "final_loss,edge_gates,dense_edges\n";
    for (const auto &s : seeds) {
        out << s.seed << ',' << (s.aborted ? 1 : 0) << ',' << s.best_epoch
            << ',' << fmt(s.train_acc) << ',' << fmt(s.val_acc) << ','
            << fmt(s.test_acc) << ',' << fmt(s.test_acc_noisy) << ','
            << fmt(s.final_loss) << ','
            << (s.edge_gates ? fmt(*s.edge_gates) : "") << ','
            << (s.dense_edges ? fmt(*s.dense_edges) : "") << '\n';
    }
    return out.str();
}

RunResult parse_result_json(const std::string &text) {
    const json j = json::parse(text);
    if (j.value("format", "") != "qgcn-result") {
        throw ConfigError("not a qgcn result document");
    }
    RunResult r;
    for (const auto &[k, v] : j.at("config").items()) {
        r.config.set(k, v.get<std::string>());
    }
    const auto &ds = j.at("dataset");
    r.dataset.name = ds.at("name").get<std::string>();
    r.dataset.graphs = ds.at("graphs").get<std::size_t>();
    r.dataset.classes = ds.at("classes").get<std::size_t>();
    r.dataset.class_counts =
        ds.at("class_counts").get<std::vector<std::size_t>>();
    r.dataset.feature_dim = ds.at("feature_dim").get<std::size_t>();
    r.dataset.feature_source = ds.at("feature_source").get<std::string>();
    r.dataset.majority_rate = ds.at("majority_rate").get<double>();
    r.dataset.split_sizes =
        ds.at("split_sizes").get<std::array<std::size_t, 3>>();
    for (const auto &s : j.at("seeds")) {
        SeedResult sr;
        sr.seed = s.at("seed").get<std::uint64_t>();
        sr.aborted = s.at("aborted").get<bool>();
        sr.abort_reason = s.at("abort_reason").get<std::string>();
        sr.best_epoch = s.at("best_epoch").get<std::size_t>();
        sr.train_acc = s.at("train_acc").get<double>();
        sr.val_acc = s.at("val_acc").get<double>();
        sr.test_acc = s.at("test_acc").get<double>();
        sr.test_acc_noisy = s.at("test_acc_noisy").get<double>();
        sr.final_loss = s.at("final_loss").is_null()
                            ? std::nan("")
                            : s.at("final_loss").get<double>();
        if (!s.at("edge_gates").is_null()) {
            sr.edge_gates = s.at("edge_gates").get<double>();
        }
        if (!s.at("dense_edges").is_null()) {
            sr.dense_edges = s.at("dense_edges").get<double>();
        }
        r.seeds.push_back(sr);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

GraphDataset prepare_dataset(const ExperimentConfig &config,
                             std::uint64_t seed) {
    GraphDataset ds = load_tu_dataset(config.dataset_dir(), config.name);
    ds.split = make_split(ds, config.split, seed);
    FeatureScaler::fit(ds, ds.split.train).apply(ds);
    return ds;
}

DatasetInfo describe(const GraphDataset &dataset) {
    DatasetInfo info;
    info.name = dataset.name;
    info.graphs = dataset.graphs.size();
    info.classes = dataset.num_classes;
    info.class_counts = dataset.class_counts();
    info.feature_dim = dataset.feature_dim();
    info.feature_source = to_string(dataset.feature_source);
    if (!dataset.graphs.empty()) {
        info.majority_rate =
            static_cast<double>(*std::max_element(info.class_counts.begin(),
                                                  info.class_counts.end())) /
            static_cast<double>(info.graphs);
    }
    info.split_sizes = {dataset.split.train.size(), dataset.split.val.size(),
                        dataset.split.test.size()};
    return info;
}

double accuracy(const GraphModel &model, const GraphDataset &dataset,
                const std::vector<std::size_t> &indices,
                const NoiseModel *noise) {
    if (indices.empty()) {
        return 0.0;
    }
    std::size_t hits = 0;
    for (const std::size_t k : indices) {
        ForwardOptions opts;
        opts.noise = noise;
        opts.stream = k;
        const Graph &g = dataset.graphs.at(k);
        if (argmax(model.logits(g, opts)) == g.label) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(indices.size());
}

namespace {

void edge_statistics(const GraphModel &model, const GraphDataset &ds,
                     SeedResult &out) {
    const auto *qm = dynamic_cast<const QuantumModel *>(&model);
    if (qm == nullptr || model.config().kind != ModelKind::kQuanGcn) {
        return;
    }
    const auto q = static_cast<double>(model.config().qubits);
    double kept = 0.0;
    double dense = 0.0;
    for (const auto &g : ds.graphs) {
        const auto f = qm->forward(g, {});
        kept += f.pooled.edge_kept.sum();
        const Matrix &a = f.pooled.edge_angles;
        dense += static_cast<double>(
            ((a.array() / a.sum()) > 1.0 / (q * q)).count());
    }
    const auto n = static_cast<double>(ds.graphs.size());
    out.edge_gates = kept / n;
    out.dense_edges = dense / n;
}

} // namespace

SeedResult train_seed(const ExperimentConfig &config, std::uint64_t seed,
                      Vector *best, std::ostream *log) {
    const auto start = std::chrono::steady_clock::now();
    SeedResult result;
    result.seed = seed;

    const GraphDataset ds = prepare_dataset(config, seed);
    auto model = make_model(config.model, ds.feature_dim(), ds.num_classes,
                            Rng::mix(seed ^ 0x51ed5eedULL));
    const NoiseModel noise = config.noise_model();

    AdamState adam;
    Vector best_params = model->params().values();
    double best_val = -1.0;
    double best_val_loss = std::numeric_limits<double>::infinity();
    const auto n_train = static_cast<double>(ds.split.train.size());

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        Vector grad = Vector::Zero(model->params().values().size());
        double loss = 0.0;
        try {
            for (const std::size_t k : ds.split.train) {
                ForwardOptions opts;
                if (config.inject) {
                    opts.injection = &config.injection;
                    opts.stream = training_stream(seed, epoch, k);
                }
                const GradientReport r =
                    model->loss_and_gradient(ds.graphs[k], opts);
                grad += r.gradient;
                loss += r.loss;
            }
            loss /= n_train;
            grad /= n_train;
            if (!std::isfinite(loss)) {
                throw NumericError("loss is not finite at epoch " +
                                   std::to_string(epoch));
            }
            adam_step(model->params(), grad, adam, config.adam);
        } catch (const NumericError &e) {
            result.aborted = true;
            result.abort_reason = e.what();
            result.final_loss = std::nan("");
            if (log != nullptr) {
                *log << "seed " << seed << ": aborted: " << e.what() << "\n";
            }
            break;
        }
        result.final_loss = loss;

        std::size_t hits = 0;
        double val_loss = 0.0;
        for (const std::size_t k : ds.split.val) {
            const Graph &g = ds.graphs[k];
            const Vector logits = model->logits(g, {});
            hits += argmax(logits) == g.label ? 1 : 0;
            val_loss += softmax_xent(logits, g.label).loss;
        }
        const double val =
            static_cast<double>(hits) / static_cast<double>(ds.split.val.size());
        if (val > best_val || (val == best_val && val_loss < best_val_loss)) {
            best_val = val;
            best_val_loss = val_loss;
            best_params = model->params().values();
            result.best_epoch = epoch;
        }
        if (log != nullptr && (epoch % 10 == 0 || epoch == config.epochs)) {
            *log << "seed " << seed << " epoch " << epoch << " loss "
                 << std::setprecision(5) << loss << " val " << val << "\n";
        }
    }

    if (!result.aborted) {
        model->params().values() = best_params;
        result.train_acc = accuracy(*model, ds, ds.split.train);
        result.val_acc = accuracy(*model, ds, ds.split.val);
        result.test_acc = accuracy(*model, ds, ds.split.test);
        result.test_acc_noisy = is_quantum(config.model.kind)
                                    ? accuracy(*model, ds, ds.split.test, &noise)
                                    : result.test_acc;
        edge_statistics(*model, ds, result);
        if (best != nullptr) {
            *best = best_params;
        }
    }
    result.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return result;
}

RunResult cmd_train(const ExperimentConfig &config, const TrainOptions &opts) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const GraphDataset probe = load_tu_dataset(config.dataset_dir(), config.name);
    (void)make_split(probe, config.split, config.seeds.front());

    const fs::path out = config.out;
    if (fs::exists(out) && !opts.force) {
        throw ConfigError("out: directory " + out.string() +
                          " exists (pass --force to overwrite)");
    }

    RunResult run;
    run.config = config;
    run.seeds.resize(config.seeds.size());
    std::vector<Vector> params(config.seeds.size());

    if (opts.parallel_seeds) {
        std::vector<std::future<SeedResult>> jobs;
        for (std::size_t i = 0; i < config.seeds.size(); ++i) {
            jobs.push_back(std::async(std::launch::async, [&, i] {
                return train_seed(config, config.seeds[i], &params[i], nullptr);
            }));
        }
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            run.seeds[i] = jobs[i].get();
        }
    } else {
        for (std::size_t i = 0; i < config.seeds.size(); ++i) {
            run.seeds[i] = train_seed(config, config.seeds[i], &params[i], opts.log);
            if (opts.log != nullptr) {
                const auto &s = run.seeds[i];
                *opts.log << "seed " << s.seed << ": test " << s.test_acc
                          << " noisy " << s.test_acc_noisy << " ("
                          << std::setprecision(3) << s.seconds << " s)\n";
            }
        }
    }
    GraphDataset first = probe;
    first.split = make_split(probe, config.split, config.seeds.front());
    run.dataset = describe(first);
    run.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();

    fs::create_directories(out / "ckpt");
    write_file(out / "result.json", run.to_json());
    write_file(out / "seeds.csv", run.to_csv());
    write_file(out / "config.txt", config.to_text());
    json timing;
    timing["total_seconds"] = run.seconds;
    json per = json::array();
    for (const auto &s : run.seeds) {
        per.push_back({{"seed", s.seed}, {"seconds", s.seconds}});
    }
    timing["seeds"] = per;
    write_file(out / "timing.json", timing.dump(2) + "\n");

    const std::string config_text = config.to_text();
    for (std::size_t i = 0; i < config.seeds.size(); ++i) {
        if (run.seeds[i].aborted) {
            continue;
        }
        auto model = make_model(config.model, probe.feature_dim(),
                                probe.num_classes, 0);
        Checkpoint ckpt;
        ckpt.config_text = config_text;
        ckpt.seed = config.seeds[i];
        ckpt.registry = model->params().registry();
        ckpt.values = params[i];
        save_checkpoint(out / "ckpt" /
                            ("seed_" + std::to_string(config.seeds[i]) + ".ckpt"),
                        ckpt);
    }
    return run;
}

RunResult cmd_eval(const fs::path &checkpoint, const std::string &noise,
                   std::uint64_t noise_seed) {
    const Checkpoint ckpt = load_checkpoint(checkpoint);
    ExperimentConfig config;
    config.apply_text(ckpt.config_text, checkpoint.string());
    config.noise = noise;
    config.noise_seed = noise_seed;
    config.seeds = {ckpt.seed};
    config.validate();

    const GraphDataset ds = prepare_dataset(config, ckpt.seed);
    auto model = make_model(config.model, ds.feature_dim(), ds.num_classes, 0);
    restore_params(model->params(), ckpt);
    const NoiseModel nm = config.noise_model();

    RunResult run;
    run.config = config;
    run.dataset = describe(ds);
    SeedResult s;
    s.seed = ckpt.seed;
    s.train_acc = accuracy(*model, ds, ds.split.train);
    s.val_acc = accuracy(*model, ds, ds.split.val);
    s.test_acc = accuracy(*model, ds, ds.split.test);
    s.test_acc_noisy = is_quantum(config.model.kind)
                           ? accuracy(*model, ds, ds.split.test, &nm)
                           : s.test_acc;
    s.final_loss = std::nan("");
    edge_statistics(*model, ds, s);
    run.seeds.push_back(s);
    return run;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

TableKind parse_table_kind(const std::string &text) {
    if (text == "T1" || text == "t1") {
        return TableKind::kT1;
    }
    if (text == "T3" || text == "t3") {
        return TableKind::kT3;
    }
    throw ConfigError("table: expected T1 or T3, got '" + text + "'");
}

namespace {

struct RowSpec {
    std::string label;
    ModelKind kind;
    bool skip;
    bool sparse;
    bool inject;
};

std::vector<RowSpec> table_rows(TableKind kind) {
    if (kind == TableKind::kT1) {
        std::vector<RowSpec> rows;
        for (auto k : {ModelKind::kMlp, ModelKind::kSgc, ModelKind::kGcn,
                       ModelKind::kQuanMlp, ModelKind::kQuanSgc,
                       ModelKind::kQuanGcn}) {
            rows.push_back({to_string(k), k, false, false, false});
        }
        return rows;
    }
    return {
        {"Random injection", ModelKind::kQuanGcn, false, false, true},
        {"Skip connection", ModelKind::kQuanGcn, true, false, false},
        {"Sparse", ModelKind::kQuanGcn, false, true, false},
        {"Skip + Sparse", ModelKind::kQuanGcn, true, true, false},
    };
}

bool matches(const RowSpec &row, const ExperimentConfig &c) {
    return c.model.kind == row.kind && c.model.skip_connection == row.skip &&
           (c.model.sparse_lambda > 0.0) == row.sparse && c.inject == row.inject;
}

std::string cell_text(const std::optional<Stat> &s) {
    if (!s) {
        return "-";
    }
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << 100.0 * s->mean;
    if (s->std) {
        out << " +- " << 100.0 * *s->std;
    }
    return out.str();
}

} // namespace

std::string Table::to_text() const {
    std::vector<std::size_t> width(columns.size() + 1, 0);
    for (const auto &r : rows) {
        width[0] = std::max(width[0], r.size());
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        width[c + 1] = columns[c].size();
        for (const auto &row : cells) {
            width[c + 1] = std::max(width[c + 1], cell_text(row[c]).size());
        }
    }
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width[0])) << "";
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << "  " << std::setw(static_cast<int>(width[c + 1])) << columns[c];
    }
    out << "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out << std::setw(static_cast<int>(width[0])) << rows[r];
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << "  " << std::setw(static_cast<int>(width[c + 1]))
                << cell_text(cells[r][c]);
        }
        out << "\n";
    }
    return out.str();
}

std::string Table::to_json() const {
    json j;
    j["columns"] = columns;
    json rows_json = json::array();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        json row;
        row["label"] = rows[r];
        json cells_json = json::object();
        for (std::size_t c = 0; c < columns.size(); ++c) {
            cells_json[columns[c]] =
                cells[r][c] ? stat_json(*cells[r][c]) : json(nullptr);
        }
        row["cells"] = cells_json;
        rows_json.push_back(row);
    }
    j["rows"] = rows_json;
    return j.dump(2) + "\n";
}

Table cmd_table(const fs::path &results_dir, TableKind kind) {
    if (!fs::is_directory(results_dir)) {
        throw Error("results directory " + results_dir.string() +
                    " does not exist");
    }
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(results_dir)) {
        const fs::path f = entry.path() / "result.json";
        if (entry.is_directory() && fs::exists(f)) {
            files.push_back(f);
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<RunResult> runs;
    for (const auto &f : files) {
        runs.push_back(parse_result_json(read_file(f)));
    }

    const std::vector<std::string> order = {"MUTAG", "ENZYMES", "PROTEINS",
                                            "IMDB-BINARY"};
    std::vector<std::string> columns;
    for (const auto &r : runs) {
        if (std::find(columns.begin(), columns.end(), r.config.name) ==
            columns.end()) {
            columns.push_back(r.config.name);
        }
    }
    auto rank = [&](const std::string &n) {
        const auto it = std::find(order.begin(), order.end(), n);
        return static_cast<std::size_t>(it - order.begin());
    };
    std::sort(columns.begin(), columns.end(),
              [&](const std::string &a, const std::string &b) {
                  return std::make_pair(rank(a), a) < std::make_pair(rank(b), b);
              });
    if (columns.empty()) {
        columns.push_back("MUTAG");
    }

    Table table;
    table.columns = columns;
    std::vector<std::string> missing;
    for (const auto &spec : table_rows(kind)) {
        table.rows.push_back(spec.label);
        std::vector<std::optional<Stat>> row;
        for (const auto &col : columns) {
            std::optional<Stat> cell;
            for (const auto &r : runs) {
                if (r.config.name == col && matches(spec, r.config)) {
                    cell = r.stat(kind == TableKind::kT1
                                      ? &SeedResult::test_acc
                                      : &SeedResult::test_acc_noisy);
                    break;
                }
            }
            if (!cell) {
                missing.push_back(spec.label + " on " + col);
            }
            row.push_back(cell);
        }
        table.cells.push_back(row);
    }
    if (!missing.empty()) {
        std::string msg = "missing runs:";
        for (const auto &m : missing) {
            msg += "\n  " + m;
        }
        throw Error(msg);
    }
    const std::string stem = kind == TableKind::kT1 ? "table_T1" : "table_T3";
    write_file(results_dir / (stem + ".txt"), table.to_text());
    write_file(results_dir / (stem + ".json"), table.to_json());
    return table;
}

std::string inspect_dataset(const fs::path &dir, const std::string &name) {
    const GraphDataset ds = load_tu_dataset(dir, name);
    const DatasetInfo info = describe(ds);
    double nodes = 0.0;
    double edges = 0.0;
    std::size_t max_nodes = 0;
    for (const auto &g : ds.graphs) {
        nodes += static_cast<double>(g.num_nodes());
        edges += static_cast<double>(g.num_edges());
        max_nodes = std::max(max_nodes, g.num_nodes());
    }
    const auto n = static_cast<double>(std::max<std::size_t>(1, ds.graphs.size()));
    std::ostringstream out;
    out << "dataset        " << info.name << "\n"
        << "graphs         " << info.graphs << "\n"
        << "classes        " << info.classes << "\n"
        << "class counts  ";
    for (std::size_t c = 0; c < info.class_counts.size(); ++c) {
        out << ' ' << ds.class_values[c] << ':' << info.class_counts[c];
    }
    out << "\n"
        << "majority rate  " << std::setprecision(4) << info.majority_rate << "\n"
        << "features       " << info.feature_dim << " (" << info.feature_source
        << ")\n"
        << "avg nodes      " << nodes / n << " (max " << max_nodes << ")\n"
        << "avg edges      " << edges / n << "\n";
    return out.str();
}

} // namespace qgcn
