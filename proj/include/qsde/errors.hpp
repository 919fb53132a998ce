// Copyright 2026 The qsde-elim Authors
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

namespace qsde {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values: negative times, NaN entries, empty channel lists.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// The fast generator does not annihilate the slow subspace (or does not map into its complement).
class StructuralViolation : public Error {
 public:
  using Error::Error;
};

// The fast generator is not invertible on the complement of the slow subspace,
// or only with a condition number beyond the configured limit.
class SingularFastDynamics : public Error {
 public:
  using Error::Error;
};

// A supplied inverse failed verification.
class InverseMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed model files, operator documents or command-line values.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsde
