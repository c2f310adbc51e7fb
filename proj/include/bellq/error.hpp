// Copyright 2026 The bellq Authors
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

#ifndef BELLQ_ERROR_HPP_
#define BELLQ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bellq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input object violates one of its invariants (bad probabilities,
// non-Hermitian effects, unnormalized state, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Shapes or sizes do not fit together: missing table entries, scenario
// mismatch, wrong matrix dimensions.
class StructuralError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The input is valid but not in the form the operation requires.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The request exceeds a configured size guard.
class ResourceError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A result failed a self-check that should hold mathematically.
class InternalError : public Error {
 public:
  using Error::Error;
};

// The simplex solver could not produce a verifiable certificate.
class LpError : public InternalError {
 public:
  LpError(const std::string& what, double residual)
      : InternalError(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace bellq

#endif  // BELLQ_ERROR_HPP_
