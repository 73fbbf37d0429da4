// Copyright 2026 The kpzlab Authors.
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

#ifndef KPZLAB_ERROR_HPP
#define KPZLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kpzlab {

// Exit codes used by the command line tool.
enum class ExitCode : int { kOk = 0, kConfig = 2, kAcceptance = 3, kRuntime = 4 };

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual ExitCode exit_code() const { return ExitCode::kRuntime; }
};

// Bad arguments to a library call.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Requested sizes that cannot be allocated or enumerated.
class SizingError : public Error {
 public:
  using Error::Error;
};

// Index outside a lattice.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// A requested point lies beyond what a lattice or grid can represent, or the
// argmax sat on the window edge too often under strict mode.
class WindowError : public Error {
 public:
  using Error::Error;
};

// Every candidate of a variational problem was -inf.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Functional initial data breaks its growth bound.
class ClassViolationError : public Error {
 public:
  using Error::Error;
};

// log log or similar evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Reference tables and result files.
class DataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kConfig; }
};

}  // namespace kpzlab

#endif  // KPZLAB_ERROR_HPP
