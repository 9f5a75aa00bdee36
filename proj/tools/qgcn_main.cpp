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

// qgcn: train, evaluate and tabulate hybrid graph classifiers.

#include "qgcn/errors.hpp"
#include "qgcn/trainer.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct TrainFlags {
    std::string config;
    std::optional<std::string> dataset, name, model, noise, seeds, out;
    std::optional<std::string> skip, inject;
    std::optional<std::size_t> qubits, layers, epochs;
    std::optional<double> sparse_lambda;
    bool force = false;
    bool parallel_seeds = false;
    bool quiet = false;
};

qgcn::ExperimentConfig resolve(const TrainFlags &f) {
    qgcn::ExperimentConfig cfg;
    if (!f.config.empty()) {
        cfg.apply_file(f.config);
    }
    auto put = [&](const char *key, const std::optional<std::string> &v) {
        if (v) {
            cfg.set(key, *v);
        }
    };
    put("dataset", f.dataset);
    put("name", f.name);
    put("model", f.model);
    put("noise", f.noise);
    put("seeds", f.seeds);
    put("out", f.out);
    put("skip", f.skip);
    put("inject", f.inject);
    if (f.qubits) {
        cfg.set("qubits", std::to_string(*f.qubits));
    }
    if (f.layers) {
        cfg.set("layers", std::to_string(*f.layers));
    }
    if (f.epochs) {
        cfg.set("epochs", std::to_string(*f.epochs));
    }
    if (f.sparse_lambda) {
        std::ostringstream s;
        s.precision(17);
        s << *f.sparse_lambda;
        cfg.set("sparse_lambda", s.str());
    }
    cfg.validate();
    return cfg;
}

void print_summary(const qgcn::RunResult &r) {
    auto show = [](const char *label, const qgcn::Stat &s) {
        std::cout << label << ' ' << s.mean;
        if (s.std) {
            std::cout << " +- " << *s.std;
        }
        std::cout << " (n=" << s.n << ")\n";
    };
    show("test_acc      ", r.stat(&qgcn::SeedResult::test_acc));
    show("test_acc_noisy", r.stat(&qgcn::SeedResult::test_acc_noisy));
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid quantum graph classification on a statevector "
                 "simulator"};
    app.require_subcommand(1);

    TrainFlags tf;
    auto *train = app.add_subcommand("train", "train a model over several seeds");
    train->add_option("--config", tf.config, "key = value config file");
    train->add_option("--dataset", tf.dataset, "directory with the TU files");
    train->add_option("--name", tf.name, "dataset name, e.g. MUTAG");
    train->add_option("--model", tf.model,
                      "MLP|SGC|GCN|QUANMLP|QUANSGC|QUANGCN");
    train->add_option("--qubits", tf.qubits);
    train->add_option("--layers", tf.layers);
    train->add_option("--epochs", tf.epochs);
    train->add_option("--skip", tf.skip, "true|false");
    train->add_option("--sparse-lambda", tf.sparse_lambda);
    train->add_option("--noise", tf.noise, "none|default|p1,p2,pr,T");
    train->add_option("--inject", tf.inject, "true|false");
    train->add_option("--seeds", tf.seeds, "e.g. 0..9 or 1,4,7");
    train->add_option("--out", tf.out, "output directory");
    train->add_flag("--force", tf.force, "overwrite an existing output directory");
    train->add_flag("--parallel-seeds", tf.parallel_seeds);
    train->add_flag("--quiet", tf.quiet);

    std::string ckpt_path, eval_noise = "none", eval_out;
    std::uint64_t eval_noise_seed = 0;
    auto *eval = app.add_subcommand("eval", "evaluate a checkpoint under noise");
    eval->add_option("--checkpoint", ckpt_path)->required();
    eval->add_option("--noise", eval_noise, "none|default|p1,p2,pr,T");
    eval->add_option("--noise-seed", eval_noise_seed);
    eval->add_option("--out", eval_out, "write the result document here");

    std::string results_dir, table_name = "T1";
    auto *table = app.add_subcommand("table", "tabulate finished runs");
    table->add_option("--results", results_dir, "directory of run folders")
        ->required();
    table->add_option("--table", table_name, "T1|T3");

    std::string inspect_dir, inspect_name = "MUTAG";
    auto *inspect = app.add_subcommand("inspect-dataset", "print dataset stats");
    inspect->add_option("--dataset", inspect_dir, "directory with the TU files");
    inspect->add_option("--name", inspect_name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*train) {
            const auto cfg = resolve(tf);
            qgcn::TrainOptions opts;
            opts.force = tf.force;
            opts.parallel_seeds = tf.parallel_seeds;
            opts.log = tf.quiet ? nullptr : &std::cerr;
            const auto run = qgcn::cmd_train(cfg, opts);
            print_summary(run);
            std::cout << "results in " << cfg.out << "\n";
        } else if (*eval) {
            const auto run = qgcn::cmd_eval(ckpt_path, eval_noise, eval_noise_seed);
            const std::string doc = run.to_json();
            if (!eval_out.empty()) {
                std::ofstream(eval_out) << doc;
            }
            std::cout << doc;
        } else if (*table) {
            const auto t =
                qgcn::cmd_table(results_dir, qgcn::parse_table_kind(table_name));
            std::cout << t.to_text();
        } else if (*inspect) {
            qgcn::ExperimentConfig cfg;
            cfg.name = inspect_name;
            cfg.dataset = inspect_dir;
            std::cout << qgcn::inspect_dataset(cfg.dataset_dir(), inspect_name);
        }
    } catch (const qgcn::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
