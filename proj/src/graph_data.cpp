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

#include "qgcn/graph_data.hpp"

#include "qgcn/errors.hpp"
#include "qgcn/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace qgcn {

namespace fs = std::filesystem;

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<std::vector<Line>> read_lines(const fs::path &path,
                                            bool required) {
    std::ifstream in(path);
    if (!in) {
        if (required) {
            throw ParseError(path.string(), 0, "cannot open file");
        }
        return std::nullopt;
    }
    std::vector<Line> lines;
    std::string text;
    std::size_t n = 0;
    while (std::getline(in, text)) {
        ++n;
        text = trim(text);
        if (!text.empty()) {
            lines.push_back({n, std::move(text)});
        }
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        out.push_back(trim(tok));
    }
    return out;
}

long long parse_int(const std::string &tok, const fs::path &file,
                    std::size_t line) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(file.string(), line,
                         "expected an integer, got '" + tok + "'");
    }
    return v;
}

double parse_real(const std::string &tok, const fs::path &file,
                  std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used == tok.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw ParseError(file.string(), line,
                     "expected a real number, got '" + tok + "'");
}

bool same_matrix(const Matrix &a, const Matrix &b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

std::string format_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::size_t Graph::num_edges() const {
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < adjacency.cols(); ++j) {
            count += adjacency(i, j) != 0.0 ? 1 : 0;
        }
    }
    return count;
}

std::vector<std::size_t> GraphDataset::class_counts() const {
    std::vector<std::size_t> counts(num_classes, 0);
    for (const auto &g : graphs) {
        ++counts.at(g.label);
    }
    return counts;
}

const char *to_string(FeatureSource source) {
    switch (source) {
    case FeatureSource::kNodeLabels:
        return "node_labels_one_hot";
    case FeatureSource::kNodeAttributes:
        return "node_attributes";
    case FeatureSource::kLabelsAndAttributes:
        return "node_labels_one_hot+node_attributes";
    case FeatureSource::kDegree:
        return "degree_over_max_degree";
    }
    return "?";
}

GraphDataset load_tu_dataset(const fs::path &dir, const std::string &name) {
    const fs::path a_path = dir / (name + "_A.txt");
    const fs::path ind_path = dir / (name + "_graph_indicator.txt");
    const fs::path gl_path = dir / (name + "_graph_labels.txt");
    const fs::path nl_path = dir / (name + "_node_labels.txt");
    const fs::path na_path = dir / (name + "_node_attributes.txt");

    const auto indicator = *read_lines(ind_path, true);
    const auto graph_labels = *read_lines(gl_path, true);
    const auto edges = *read_lines(a_path, true);
    const auto node_labels = read_lines(nl_path, false);
    const auto node_attrs = read_lines(na_path, false);

    const std::size_t num_nodes = indicator.size();
    const std::size_t num_graphs = graph_labels.size();
    if (num_graphs == 0) {
        throw ParseError(gl_path.string(), 0, "no graph labels");
    }

    // node (0-based global) -> graph (0-based), local index
    std::vector<std::size_t> node_graph(num_nodes);
    std::vector<std::size_t> node_local(num_nodes);
    std::vector<std::size_t> graph_size(num_graphs, 0);
    std::vector<std::vector<std::size_t>> graph_nodes(num_graphs);
    for (std::size_t k = 0; k < num_nodes; ++k) {
        const auto &ln = indicator[k];
        const long long gid = parse_int(ln.text, ind_path, ln.number);
        if (gid < 1 || static_cast<std::size_t>(gid) > num_graphs) {
            throw ParseError(ind_path.string(), ln.number,
                             "graph id " + std::to_string(gid) +
                                 " has no entry in " +
                                 gl_path.filename().string());
        }
        const auto g = static_cast<std::size_t>(gid - 1);
        node_graph[k] = g;
        node_local[k] = graph_size[g]++;
        graph_nodes[g].push_back(k);
    }
    for (std::size_t g = 0; g < num_graphs; ++g) {
        if (graph_size[g] == 0) {
            throw ParseError(ind_path.string(), 0,
                             "graph " + std::to_string(g + 1) + " has no nodes");
        }
    }

    GraphDataset ds;
    ds.name = name;
    ds.graphs.resize(num_graphs);
    for (std::size_t g = 0; g < num_graphs; ++g) {
        const auto n = static_cast<Eigen::Index>(graph_size[g]);
        ds.graphs[g].adjacency = Matrix::Zero(n, n);
    }

    for (const auto &ln : edges) {
        const auto f = split_fields(ln.text);
        if (f.size() != 2) {
            throw ParseError(a_path.string(), ln.number,
                             "expected 'i, j', got '" + ln.text + "'");
        }
        const long long i = parse_int(f[0], a_path, ln.number);
        const long long j = parse_int(f[1], a_path, ln.number);
        for (long long v : {i, j}) {
            if (v < 1 || static_cast<std::size_t>(v) > num_nodes) {
                throw ParseError(a_path.string(), ln.number,
                                 "edge references unknown node " +
                                     std::to_string(v) + " (" +
                                     std::to_string(num_nodes) +
                                     " nodes declared)");
            }
        }
        const auto u = static_cast<std::size_t>(i - 1);
        const auto v = static_cast<std::size_t>(j - 1);
        if (node_graph[u] != node_graph[v]) {
            throw ParseError(a_path.string(), ln.number,
                             "edge joins nodes of different graphs");
        }
        if (u == v) {
            continue;
        }
        auto &adj = ds.graphs[node_graph[u]].adjacency;
        const auto lu = static_cast<Eigen::Index>(node_local[u]);
        const auto lv = static_cast<Eigen::Index>(node_local[v]);
        adj(lu, lv) = 1.0;
        adj(lv, lu) = 1.0;
    }

    // Graph labels, remapped to 0..C-1.
    std::vector<long long> raw_labels(num_graphs);
    for (std::size_t g = 0; g < num_graphs; ++g) {
        raw_labels[g] =
            parse_int(graph_labels[g].text, gl_path, graph_labels[g].number);
    }
    std::set<long long> distinct(raw_labels.begin(), raw_labels.end());
    ds.class_values.assign(distinct.begin(), distinct.end());
    ds.num_classes = ds.class_values.size();
    for (std::size_t g = 0; g < num_graphs; ++g) {
        ds.graphs[g].label = static_cast<std::size_t>(
            std::lower_bound(ds.class_values.begin(), ds.class_values.end(),
                             raw_labels[g]) -
            ds.class_values.begin());
    }

    // Raw node labels and attributes.
    std::vector<long long> nlabels;
    if (node_labels) {
        if (node_labels->size() != num_nodes) {
            throw ParseError(nl_path.string(), node_labels->size(),
                             "expected " + std::to_string(num_nodes) +
                                 " node labels");
        }
        nlabels.reserve(num_nodes);
        for (const auto &ln : *node_labels) {
            const auto f = split_fields(ln.text);
            nlabels.push_back(parse_int(f.front(), nl_path, ln.number));
        }
        std::set<long long> vocab(nlabels.begin(), nlabels.end());
        ds.node_label_values.assign(vocab.begin(), vocab.end());
    }
    std::size_t attr_dim = 0;
    std::vector<std::vector<double>> attrs;
    if (node_attrs) {
        if (node_attrs->size() != num_nodes) {
            throw ParseError(na_path.string(), node_attrs->size(),
                             "expected " + std::to_string(num_nodes) +
                                 " attribute rows");
        }
        for (const auto &ln : *node_attrs) {
            const auto f = split_fields(ln.text);
            if (attrs.empty()) {
                attr_dim = f.size();
            } else if (f.size() != attr_dim) {
                throw ParseError(na_path.string(), ln.number,
                                 "inconsistent attribute count");
            }
            std::vector<double> row;
            for (const auto &tok : f) {
                row.push_back(parse_real(tok, na_path, ln.number));
            }
            attrs.push_back(std::move(row));
        }
    }

    if (node_labels && node_attrs) {
        ds.feature_source = FeatureSource::kLabelsAndAttributes;
    } else if (node_labels) {
        ds.feature_source = FeatureSource::kNodeLabels;
    } else if (node_attrs) {
        ds.feature_source = FeatureSource::kNodeAttributes;
    } else {
        ds.feature_source = FeatureSource::kDegree;
    }

    const std::size_t vocab = ds.node_label_values.size();
    double max_degree = 1.0;
    for (const auto &g : ds.graphs) {
        if (g.adjacency.size() > 0) {
            max_degree = std::max(max_degree, g.adjacency.rowwise().sum().maxCoeff());
        }
    }
    for (std::size_t g = 0; g < num_graphs; ++g) {
        Graph &gr = ds.graphs[g];
        const auto n = static_cast<Eigen::Index>(graph_size[g]);
        gr.node_attributes = Matrix::Zero(n, static_cast<Eigen::Index>(attr_dim));
        if (ds.feature_source == FeatureSource::kDegree) {
            gr.features = gr.adjacency.rowwise().sum() / max_degree;
            continue;
        }
        gr.features =
            Matrix::Zero(n, static_cast<Eigen::Index>(vocab + attr_dim));
        for (std::size_t k : graph_nodes[g]) {
            const auto r = static_cast<Eigen::Index>(node_local[k]);
            if (!nlabels.empty()) {
                gr.node_labels.push_back(nlabels[k]);
                const auto col = std::lower_bound(ds.node_label_values.begin(),
                                                  ds.node_label_values.end(),
                                                  nlabels[k]) -
                                 ds.node_label_values.begin();
                gr.features(r, col) = 1.0;
            }
            for (std::size_t c = 0; c < attr_dim; ++c) {
                const auto cc = static_cast<Eigen::Index>(c);
                gr.node_attributes(r, cc) = attrs[k][c];
                gr.features(r, static_cast<Eigen::Index>(vocab) + cc) =
                    attrs[k][c];
            }
        }
    }
    return ds;
}

void write_tu_dataset(const GraphDataset &ds, const fs::path &dir) {
    fs::create_directories(dir);
    const std::string &name = ds.name;
    std::ofstream a(dir / (name + "_A.txt"));
    std::ofstream ind(dir / (name + "_graph_indicator.txt"));
    std::ofstream gl(dir / (name + "_graph_labels.txt"));
    const bool labels = ds.feature_source == FeatureSource::kNodeLabels ||
                        ds.feature_source == FeatureSource::kLabelsAndAttributes;
    const bool attrs = ds.feature_source == FeatureSource::kNodeAttributes ||
                       ds.feature_source == FeatureSource::kLabelsAndAttributes;
    std::ofstream nl;
    std::ofstream na;
    if (labels) {
        nl.open(dir / (name + "_node_labels.txt"));
    }
    if (attrs) {
        na.open(dir / (name + "_node_attributes.txt"));
    }

    std::size_t offset = 0;
    for (std::size_t g = 0; g < ds.graphs.size(); ++g) {
        const Graph &gr = ds.graphs[g];
        const std::size_t n = gr.num_nodes();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (gr.adjacency(static_cast<Eigen::Index>(i),
                                 static_cast<Eigen::Index>(j)) != 0.0) {
                    a << offset + i + 1 << ", " << offset + j + 1 << '\n';
                }
            }
            ind << g + 1 << '\n';
            if (labels) {
                nl << gr.node_labels.at(i) << '\n';
            }
            if (attrs) {
                for (Eigen::Index c = 0; c < gr.node_attributes.cols(); ++c) {
                    na << (c ? ", " : "")
                       << format_real(gr.node_attributes(
                              static_cast<Eigen::Index>(i), c));
                }
                na << '\n';
            }
        }
        gl << ds.class_values.at(gr.label) << '\n';
        offset += n;
    }
}

Split make_split(const GraphDataset &ds, const std::array<double, 3> &ratios,
                 std::uint64_t seed) {
    for (double r : ratios) {
        if (!(r > 0.0)) {
            throw ConfigError("split ratios must be positive");
        }
    }
    if (std::abs(ratios[0] + ratios[1] + ratios[2] - 1.0) > 1e-9) {
        throw ConfigError("split ratios must sum to 1");
    }
    const std::size_t total = ds.graphs.size();
    std::vector<std::vector<std::size_t>> by_class(ds.num_classes);
    for (std::size_t g = 0; g < total; ++g) {
        by_class.at(ds.graphs[g].label).push_back(g);
    }
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        if (by_class[c].size() < 3) {
            throw ConfigError("class " + std::to_string(c) + " has " +
                              std::to_string(by_class[c].size()) +
                              " graphs; stratified split needs at least 3");
        }
    }

    std::array<std::size_t, 3> sizes{};
    std::size_t assigned = 0;
    for (std::size_t s = 0; s < 3; ++s) {
        sizes[s] = static_cast<std::size_t>(
            std::floor(ratios[s] * static_cast<double>(total) + 1e-9));
        assigned += sizes[s];
    }
    for (std::size_t k = 0; assigned < total; ++k, ++assigned) {
        ++sizes[(1 + k) % 3]; // val, test, train, ...
    }

    // Interleave classes by fractional rank so each contiguous block is
    // stratified.
    struct Key {
        double position;
        std::size_t cls;
        std::size_t graph;
    };
    std::vector<Key> keys;
    keys.reserve(total);
    Rng rng(seed);
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto members = by_class[c];
        rng.shuffle(members);
        const double m = static_cast<double>(members.size());
        for (std::size_t r = 0; r < members.size(); ++r) {
            keys.push_back({(static_cast<double>(r) + 0.5) / m, c, members[r]});
        }
    }
    std::sort(keys.begin(), keys.end(), [](const Key &x, const Key &y) {
        return x.position != y.position ? x.position < y.position
                                        : x.cls < y.cls;
    });

    Split split;
    std::size_t pos = 0;
    std::array<std::vector<std::size_t> *, 3> parts{&split.train, &split.val,
                                                    &split.test};
    for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t k = 0; k < sizes[s]; ++k) {
            parts[s]->push_back(keys[pos++].graph);
        }
    }
    return split;
}

FeatureScaler FeatureScaler::fit(const GraphDataset &ds,
                                 const std::vector<std::size_t> &indices) {
    const auto d = static_cast<Eigen::Index>(ds.feature_dim());
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(d);
    Eigen::RowVectorXd sq = Eigen::RowVectorXd::Zero(d);
    double count = 0.0;
    for (std::size_t g : indices) {
        const Matrix &x = ds.graphs[g].features;
        sum += x.colwise().sum();
        sq += x.array().square().matrix().colwise().sum();
        count += static_cast<double>(x.rows());
    }
    FeatureScaler s;
    s.mean = sum / std::max(count, 1.0);
    s.scale = Eigen::RowVectorXd::Ones(d);
    for (Eigen::Index c = 0; c < d; ++c) {
        const double var = sq(c) / std::max(count, 1.0) - s.mean(c) * s.mean(c);
        if (var > 1e-12) {
            s.scale(c) = std::sqrt(var);
        }
    }
    return s;
}

void FeatureScaler::apply(GraphDataset &ds) const {
    for (auto &g : ds.graphs) {
        g.features = (g.features.rowwise() - mean).array().rowwise() /
                     scale.array();
    }
}

bool same_graphs(const GraphDataset &a, const GraphDataset &b) {
    if (a.graphs.size() != b.graphs.size() || a.num_classes != b.num_classes ||
        a.class_values != b.class_values ||
        a.node_label_values != b.node_label_values ||
        a.feature_source != b.feature_source) {
        return false;
    }
    for (std::size_t g = 0; g < a.graphs.size(); ++g) {
        const Graph &x = a.graphs[g];
        const Graph &y = b.graphs[g];
        if (x.label != y.label || x.node_labels != y.node_labels ||
            !same_matrix(x.adjacency, y.adjacency) ||
            !same_matrix(x.features, y.features) ||
            !same_matrix(x.node_attributes, y.node_attributes)) {
            return false;
        }
    }
    return true;
}

} // namespace qgcn
