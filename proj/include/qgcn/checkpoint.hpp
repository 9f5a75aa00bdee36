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

#include "qgcn/nn.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qgcn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/**
 * Trained parameters plus what is needed to rebuild the model around them.
 *
 * On-disk layout (little-endian):
 *
 *   char[8]  "QGCNCKPT"
 *   u32      version
 *   u64      n, then n bytes of config text (key = value lines)
 *   u64      seed
 *   u64      block count, then per block:
 *              u64 name length, name bytes, i64 rows, i64 cols, u8 segment
 *   u64      value count, then that many f64
 */
struct Checkpoint {
    std::string config_text;
    std::uint64_t seed = 0;
    std::vector<ParamBlock> registry;
    Vector values;
};

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt);

/// Throws ParseError on a bad magic or truncated file and ConfigError when
/// the version differs from kCheckpointVersion.
[[nodiscard]] Checkpoint load_checkpoint(const std::filesystem::path &path);

/// Copies values into `params` after checking the registries agree.
void restore_params(ModelParams &params, const Checkpoint &ckpt);

} // namespace qgcn
