// Copyright 2026 The qpirlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpirlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Registers missing, duplicated, or arranged inconsistently between operands.
class LayoutError : public Error {
 public:
  using Error::Error;
};

/// A protocol operation does not have the shape its round requires.
class ShapeError : public Error {
 public:
  ShapeError(std::size_t round, const std::string& what)
      : Error("round " + std::to_string(round) + ": " + what), round_(round) {}

  std::size_t round() const noexcept { return round_; }

 private:
  std::size_t round_;
};

/// A state or operator would exceed the configured dimension guard.
class DimensionGuardError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical input violates an invariant beyond tolerance (non-PSD state,
/// non-isometric matrix, vector outside a compression support, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input. `path` is a JSON pointer to the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qpirlab
