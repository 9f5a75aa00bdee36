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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgcn {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments, out-of-range wires, bad configuration values.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Malformed input files. Carries the file and 1-based line number.
class ParseError : public Error {
  public:
    ParseError(const std::string &file, std::size_t line,
               const std::string &what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(file),
          line_(line) {}

    [[nodiscard]] const std::string &file() const noexcept { return file_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::string file_;
    std::size_t line_;
};

/// Non-finite values reached an optimizer or a gradient.
class NumericError : public Error {
  public:
    using Error::Error;
};

} // namespace qgcn
