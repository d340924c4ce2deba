// Copyright (c) 2026 The semikern Authors. All Rights Reserved.
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

namespace semikern {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar lies outside the domain of the semiring operating on it.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid input when building matrices, models or configurations.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number of the offending
/// line so callers can point at it.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace semikern
