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

#include "qgcn/checkpoint.hpp"

#include "qgcn/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace qgcn {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'Q', 'G', 'C', 'N', 'C', 'K', 'P', 'T'};

template <class T> void put(std::ostream &out, T value) {
    out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

void put_string(std::ostream &out, const std::string &s) {
    put<std::uint64_t>(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class Reader {
  public:
    Reader(std::istream &in, std::string file) : in_(in), file_(std::move(file)) {}

    template <class T> T get() {
        T value{};
        read(reinterpret_cast<char *>(&value), sizeof(T));
        return value;
    }

    std::string get_string() {
        const auto n = get<std::uint64_t>();
        if (n > (1ULL << 30)) {
            throw ParseError(file_, 0, "implausible string length");
        }
        std::string s(n, '\0');
        read(s.data(), n);
        return s;
    }

    void read(char *dst, std::size_t n) {
        if (!in_.read(dst, static_cast<std::streamsize>(n))) {
            throw ParseError(file_, 0, "truncated checkpoint");
        }
    }

  private:
    std::istream &in_;
    std::string file_;
};

} // namespace

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write checkpoint " + path.string());
    }
    out.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(out, kCheckpointVersion);
    put_string(out, ckpt.config_text);
    put<std::uint64_t>(out, ckpt.seed);
    put<std::uint64_t>(out, ckpt.registry.size());
    for (const auto &b : ckpt.registry) {
        put_string(out, b.name);
        put<std::int64_t>(out, b.rows);
        put<std::int64_t>(out, b.cols);
        put<std::uint8_t>(out, b.segment == Segment::kQuantum ? 1 : 0);
    }
    put<std::uint64_t>(out, static_cast<std::uint64_t>(ckpt.values.size()));
    out.write(reinterpret_cast<const char *>(ckpt.values.data()),
              static_cast<std::streamsize>(sizeof(double) * ckpt.values.size()));
    if (!out) {
        throw Error("failed writing checkpoint " + path.string());
    }
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open checkpoint " + path.string());
    }
    Reader r(in, path.string());
    char magic[8];
    r.read(magic, sizeof magic);
    if (std::memcmp(magic, kMagic, sizeof magic) != 0) {
        throw ParseError(path.string(), 0, "not a qgcn checkpoint");
    }
    const auto version = r.get<std::uint32_t>();
    if (version != kCheckpointVersion) {
        throw ConfigError("checkpoint " + path.string() + " has format version " +
                          std::to_string(version) + ", this build reads " +
                          std::to_string(kCheckpointVersion));
    }
    Checkpoint ckpt;
    ckpt.config_text = r.get_string();
    ckpt.seed = r.get<std::uint64_t>();
    const auto blocks = r.get<std::uint64_t>();
    std::size_t offset = 0;
    for (std::uint64_t i = 0; i < blocks; ++i) {
        ParamBlock b;
        b.name = r.get_string();
        b.rows = r.get<std::int64_t>();
        b.cols = r.get<std::int64_t>();
        b.segment = r.get<std::uint8_t>() != 0 ? Segment::kQuantum
                                               : Segment::kClassical;
        b.offset = offset;
        offset += b.size();
        ckpt.registry.push_back(std::move(b));
    }
    const auto n = r.get<std::uint64_t>();
    if (n != offset) {
        throw ParseError(path.string(), 0,
                         "value count does not match block registry");
    }
    ckpt.values.resize(static_cast<Eigen::Index>(n));
    r.read(reinterpret_cast<char *>(ckpt.values.data()), sizeof(double) * n);
    return ckpt;
}

void restore_params(ModelParams &params, const Checkpoint &ckpt) {
    const auto &mine = params.registry();
    if (mine.size() != ckpt.registry.size()) {
        throw ConfigError("checkpoint has " +
                          std::to_string(ckpt.registry.size()) +
                          " parameter blocks, model has " +
                          std::to_string(mine.size()));
    }
    for (std::size_t i = 0; i < mine.size(); ++i) {
        const auto &a = mine[i];
        const auto &b = ckpt.registry[i];
        if (a.name != b.name || a.rows != b.rows || a.cols != b.cols) {
            throw ConfigError("checkpoint block '" + b.name +
                              "' does not match model block '" + a.name + "'");
        }
    }
    params.values() = ckpt.values;
}

} // namespace qgcn
