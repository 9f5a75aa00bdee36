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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "support.hpp"

#include "qgcn/errors.hpp"
#include "qgcn/gradient.hpp"
#include "qgcn/model.hpp"
#include "qgcn/noise.hpp"
#include "qgcn/oracle.hpp"
#include "qgcn/trainer.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qgcn;
using namespace qgcn::testing;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string &detail) {
    std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <class... Ts> std::string cat(const Ts &...parts) {
    std::ostringstream s;
    s.precision(6);
    (s << ... << parts);
    return s.str();
}

// 1 ------------------------------------------------------------------------

void simulator_correctness() {
    const auto t0 = Clock::now();
    Rng rng(101);
    double worst_amp = 0.0;
    double worst_norm = 0.0;
    std::size_t kinds_seen = 0;
    std::vector<bool> seen(8, false);
    for (std::size_t q : {2U, 3U, 4U}) {
        for (int trial = 0; trial < 100; ++trial) {
            const Circuit c = random_circuit(rng, q, 10 + rng.below(20));
            for (const auto &g : c) {
                seen[static_cast<std::size_t>(g.kind)] = true;
            }
            const auto sim = run_circuit(c, q);
            const auto oracle = dense_oracle(c, q).apply_to_ground();
            for (std::size_t i = 0; i < sim.size(); ++i) {
                worst_amp = std::max(worst_amp,
                                     std::abs(sim[i] - oracle(static_cast<Eigen::Index>(i))));
            }
            worst_norm = std::max(worst_norm, std::abs(sim.norm() - 1.0));
        }
    }
    for (bool s : seen) {
        kinds_seen += s ? 1 : 0;
    }
    const double secs = seconds_since(t0);
    report(1, worst_amp < 1e-10 && worst_norm < 1e-10 && kinds_seen == 8 && secs < 10.0,
           cat("max amplitude error ", worst_amp, ", norm drift ", worst_norm, ", ", kinds_seen,
               "/8 gate kinds, ", secs, " s"));
}

// 2 ------------------------------------------------------------------------

void diagonal_invariance() {
    Rng rng(202);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t q = 2 + rng.below(3);
        const auto state = random_state(rng, q);
        const auto before = state.expect_z_all();
        Circuit suffix;
        const std::size_t len = 1 + rng.below(12);
        for (std::size_t k = 0; k < len; ++k) {
            const std::size_t a = rng.below(q);
            std::size_t b = rng.below(q - 1);
            b += b >= a ? 1 : 0;
            suffix.push_back(rng.bernoulli(0.5) ? gates::u1(rng.uniform(-kPi, kPi), a)
                                                : gates::cu1(rng.uniform(-kPi, kPi), a, b));
        }
        const auto after = run_circuit(suffix, state).expect_z_all();
        for (std::size_t w = 0; w < q; ++w) {
            worst = std::max(worst, std::abs(after[w] - before[w]));
        }
    }
    report(2, worst < 1e-12, cat("max Z change ", worst, " over 100 states"));
}

// 3 ------------------------------------------------------------------------

Circuit bind_angles(const Circuit &c, const Vector &x) {
    Circuit out = c;
    for (auto &g : out) {
        for (std::size_t k = 0; k < 3; ++k) {
            if (g.trainable && g.slots[k] >= 0) {
                g.params[k] = x(g.slots[k]);
            }
        }
    }
    return out;
}

void gradient_fidelity() {
    const auto t0 = Clock::now();
    Rng rng(303);
    std::size_t quantum_bad = 0;
    std::size_t quantum_coords = 0;
    double quantum_worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t q = 2 + rng.below(3);
        Circuit c;
        std::vector<double> angles;
        const std::size_t len = 3 + rng.below(8);
        for (std::size_t k = 0; k < len; ++k) {
            GateOp g = random_gate(rng, q, true);
            g.trainable = true;
            for (std::size_t p = 0; p < arity(g.kind); ++p) {
                g.slots[p] = static_cast<std::ptrdiff_t>(angles.size());
                angles.push_back(g.params[p]);
            }
            c.push_back(g);
        }
        const Vector x =
            Eigen::Map<Vector>(angles.data(), static_cast<Eigen::Index>(angles.size()));
        const auto qg = quantum_grad(c, q, angles.size());
        for (std::size_t w = 0; w < q; ++w) {
            const Vector fd = finite_diff_oracle(
                [&, w](const Vector &v) { return run_circuit(bind_angles(c, v), q).expect_z(w); }, x,
                1e-5);
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                const double a = qg.jacobian(i, static_cast<Eigen::Index>(w));
                ++quantum_coords;
                if (!close_rel(a, fd(i), 1e-5)) {
                    ++quantum_bad;
                }
                const double scale = std::max(std::abs(a), std::abs(fd(i)));
                if (scale >= 1e-4) {
                    quantum_worst = std::max(quantum_worst, std::abs(a - fd(i)) / scale);
                }
            }
        }
    }

    std::size_t hybrid_bad = 0;
    std::size_t hybrid_coords = 0;
    double hybrid_worst = 0.0;
    const ModelKind kinds[] = {ModelKind::kQuanGcn, ModelKind::kQuanGcn, ModelKind::kQuanMlp,
                               ModelKind::kQuanSgc};
    for (int trial = 0; trial < 100; ++trial) {
        ModelConfig cfg;
        cfg.kind = kinds[trial % 4];
        cfg.qubits = 2 + rng.below(2);
        cfg.layers = 1 + rng.below(2);
        cfg.hidden = 4;
        cfg.skip_connection = rng.bernoulli(0.5);
        cfg.sparse_lambda = cfg.kind == ModelKind::kQuanGcn ? rng.uniform(0.0, 1.0) : 0.0;
        const std::size_t d = 2 + rng.below(2);
        const std::size_t classes = 2 + rng.below(2);
        auto model = make_model(cfg, d, classes, static_cast<std::uint64_t>(trial));
        auto &params = model->params();
        if (cfg.kind == ModelKind::kQuanGcn) {
            params.block(params.find("edge.gain"))(0, 0) = rng.uniform(0.5, 2.0);
            params.block(params.find("edge.bias"))(0, 0) = rng.uniform(-1.0, 1.0);
        }
        const Graph g = random_graph(rng, 2 + rng.below(6), d, rng.below(classes));
        const auto rep = model->loss_and_gradient(g, {});
        Vector &values = params.values();
        const Vector base = values;
        const Vector fd = finite_diff_oracle(
            [&](const Vector &v) {
                values = v;
                return model->loss(g, {});
            },
            base, 1e-5);
        values = base;
        for (Eigen::Index i = 0; i < fd.size(); ++i) {
            ++hybrid_coords;
            if (!close_rel(rep.gradient(i), fd(i), 1e-4)) {
                ++hybrid_bad;
            }
            const double scale = std::max(std::abs(rep.gradient(i)), std::abs(fd(i)));
            if (scale >= 1e-4) {
                hybrid_worst = std::max(hybrid_worst, std::abs(rep.gradient(i) - fd(i)) / scale);
            }
        }
    }
    const double secs = seconds_since(t0);
    report(3, quantum_bad == 0 && hybrid_bad == 0 && secs < 60.0,
           cat("shift: ", quantum_bad, "/", quantum_coords, " off, worst rel ", quantum_worst,
               "; hybrid: ", hybrid_bad, "/", hybrid_coords, " off, worst rel ", hybrid_worst,
               "; ", secs, " s"));
}

// 4 ------------------------------------------------------------------------

void noise_analytics() {
    bool ok = true;
    std::ostringstream detail;
    detail.precision(5);
    for (double p : {0.01, 0.05, 0.1}) {
        NoiseModel m;
        m.gate_error_1q = p;
        m.trajectories = 100000;
        m.seed = 404;
        const double got = noisy_forward({gates::ry(0.0, 0)}, 1, m)[0];
        const double mu = 1.0 - 4.0 * p / 3.0;
        const double sigma = std::sqrt(1.0 - mu * mu) / std::sqrt(100000.0);
        const double z = std::abs(got - mu) / sigma;
        ok = ok && z < 3.0;
        detail << "p=" << p << " " << z << " sigma; ";
    }
    Rng rng(405);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t q = 2 + rng.below(3);
        const Circuit c = random_circuit(rng, q, 15);
        NoiseModel m;
        m.readout_flip = rng.uniform(0.0, 0.5);
        const auto noisy = noisy_forward(c, q, m);
        const auto clean = run_circuit(c, q).expect_z_all();
        for (std::size_t w = 0; w < q; ++w) {
            worst = std::max(worst, std::abs(noisy[w] - (1.0 - 2.0 * m.readout_flip) * clean[w]));
        }
    }
    ok = ok && worst <= 1e-15;
    detail << "readout max error " << worst;
    report(4, ok, detail.str());
}

// 5, 6, 8 ------------------------------------------------------------------

ExperimentConfig mutag_config(const fs::path &root, const std::string &run) {
    ExperimentConfig c;
    c.dataset = mutag_dir().string();
    c.name = "MUTAG";
    c.seeds = parse_seeds("0..9");
    c.out = (root / run).string();
    return c;
}

RunResult train(const ExperimentConfig &c) {
    TrainOptions opts;
    opts.force = true;
    const auto t0 = Clock::now();
    RunResult r = cmd_train(c, opts);
    std::printf("  trained %s in %.1f s\n", fs::path(c.out).filename().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    return r;
}

void mutag_reproduction(const fs::path &root, RunResult &quangcn) {
    const auto t0 = Clock::now();
    ExperimentConfig q = mutag_config(root, "quangcn");
    quangcn = train(q);
    ExperimentConfig g = mutag_config(root, "gcn");
    g.model.kind = ModelKind::kGcn;
    const RunResult gcn = train(g);
    const double majority = 125.0 / 188.0;
    const double qm = quangcn.stat(&SeedResult::test_acc).mean;
    const double gm = gcn.stat(&SeedResult::test_acc).mean;
    const bool q_ok = qm >= 0.70 && qm <= 0.92 && qm > majority;
    const bool g_ok = gm >= 0.7463 && gm <= 0.9063 && gm > majority;
    const bool complete = quangcn.stat(&SeedResult::test_acc).n == 10 &&
                          gcn.stat(&SeedResult::test_acc).n == 10;
    report(5, q_ok && g_ok && complete,
           cat("QuanGCN ", qm, " (band [0.70, 0.92]), GCN ", gm,
               " (band [0.7463, 0.9063]), majority ", majority, ", ", seconds_since(t0),
               " s"));
}

void mitigation(const fs::path &root, const RunResult &none) {
    ExperimentConfig skip = mutag_config(root, "skip");
    skip.model.skip_connection = true;
    ExperimentConfig sparse = mutag_config(root, "sparse");
    sparse.model.sparse_lambda = 1.0;
    ExperimentConfig both = mutag_config(root, "skip_sparse");
    both.model.skip_connection = true;
    both.model.sparse_lambda = 1.0;
    const RunResult rs = train(skip);
    const RunResult rp = train(sparse);
    const RunResult rb = train(both);

    const double acc_none = none.stat(&SeedResult::test_acc_noisy).mean;
    const double acc_skip = rs.stat(&SeedResult::test_acc_noisy).mean;
    const double acc_both = rb.stat(&SeedResult::test_acc_noisy).mean;
    const double gates_none = none.stat(&SeedResult::edge_gates)->mean;
    const double gates_sparse = rp.stat(&SeedResult::edge_gates)->mean;
    const bool a = acc_skip > acc_none;
    const bool b = acc_both >= acc_skip - 0.02;
    const bool c = gates_sparse < gates_none;
    report(6, a && b && c,
           cat("(a) ", a ? "ok" : "no", " skip ", acc_skip, " vs none ", acc_none, "; (b) ",
               b ? "ok" : "no", " skip+sparse ", acc_both, "; (c) ", c ? "ok" : "no",
               " edge gates per layer ", gates_sparse, " vs ", gates_none));
}

void determinism(const fs::path &root) {
    // Re-runs the default QuanGCN config from criterion 5 into the same place.
    ExperimentConfig c = mutag_config(root, "quangcn");
    const std::string body = slurp(fs::path(c.out) / "result.json");
    (void)train(c);
    const std::string again = slurp(fs::path(c.out) / "result.json");
    report(8, !body.empty() && body == again,
           cat("result.json ", body.size(), " bytes, ", body == again ? "identical" : "differs"));
}

// 7 ------------------------------------------------------------------------

void round_trip() {
    bool ok = true;
    std::ostringstream detail;
    for (const auto &[dir, name] : {std::pair{mutag_dir(), std::string("MUTAG")},
                                    std::pair{tiny_dir(), std::string("TINY")}}) {
        const GraphDataset a = load_tu_dataset(dir, name);
        const fs::path out = scratch_dir("acceptance_rt_" + name);
        write_tu_dataset(a, out);
        const GraphDataset b = load_tu_dataset(out, name);
        const bool same = same_graphs(a, b);
        ok = ok && same;
        detail << name << " " << a.graphs.size() << " graphs " << a.num_classes << " classes "
               << (same ? "identical" : "DIFFER") << "; ";
        if (name == "MUTAG") {
            ok = ok && a.graphs.size() == 188 && a.num_classes == 2;
        }
    }
    report(7, ok, detail.str());
}

} // namespace

int main() {
    const fs::path root = fs::path(QGCN_BINARY_DIR) / "acceptance_runs";
    auto guard = [](int id, auto &&fn) {
        try {
            fn();
        } catch (const std::exception &e) {
            report(id, false, std::string("exception: ") + e.what());
        }
    };
    guard(1, simulator_correctness);
    guard(2, diagonal_invariance);
    guard(3, gradient_fidelity);
    guard(4, noise_analytics);
    RunResult quangcn;
    bool have_baseline = false;
    guard(5, [&] {
        mutag_reproduction(root, quangcn);
        have_baseline = true;
    });
    guard(6, [&] {
        if (!have_baseline) {
            throw Error("no-mitigation baseline unavailable");
        }
        mitigation(root, quangcn);
    });
    guard(7, round_trip);
    guard(8, [&] { determinism(root); });
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
