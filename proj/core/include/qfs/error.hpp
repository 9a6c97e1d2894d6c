// Copyright 2026 The qfsample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qfs {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A bitstring, vector or table had the wrong length for the arity in use.
class InputShapeError : public Error {
  public:
    using Error::Error;
};

/// A generator or policy parameter is outside its domain.
class ParameterError : public Error {
  public:
    using Error::Error;
};

/// The requested arity exceeds the configured memory cap.
class ResourceError : public Error {
  public:
    using Error::Error;
};

/// Malformed input file or inconsistent content (e.g. contradictory labels).
class ParseError : public Error {
  public:
    using Error::Error;
};

/// An operation was called on a value that violates its precondition.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// A state vector whose squared norm drifted away from 1.
class CorruptStateError : public Error {
  public:
    using Error::Error;
};

/// A weak hypothesis was requested from a zero coefficient estimate.
class SignAmbiguousError : public Error {
  public:
    using Error::Error;
};

}  // namespace qfs
