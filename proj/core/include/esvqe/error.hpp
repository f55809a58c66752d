// Copyright 2026 The esvqe Authors
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

#include <stdexcept>
#include <string>

namespace esvqe {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (FCIDUMP header, integral line, config file).
class FormatError : public Error {
  public:
    using Error::Error;
};

/// An orbital, qubit, or integral index outside its allowed range.
class IndexError : public Error {
  public:
    using Error::Error;
};

/// Conflicting duplicate data, e.g. two different values for one integral.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

/// Operands with incompatible qubit counts.
class SizeMismatchError : public Error {
  public:
    using Error::Error;
};

/// Violated precondition on a domain value (occupancy, hermiticity, ...).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// An iterative method stopped at its iteration cap.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Invalid run configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Filesystem failure.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace esvqe
