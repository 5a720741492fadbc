// Copyright 2026 The gradist Authors
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

#ifndef GRADIST_ERRORS_HPP_
#define GRADIST_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace gradist {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input rejected by an axiom or schema check (CLI exit code 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (CLI exit code 2).
class ParseError : public Error {
 public:
  using Error::Error;
};

class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class AsymmetryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class TriangleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class SeparationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NonexpansiveInputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class SemanticsMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class DiscreteRequired : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class DepthMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A proof node that does not follow from its premises by its rule.
class InvalidStep : public ValidationError {
 public:
  InvalidStep(std::string path, const std::string& reason)
      : ValidationError(path + ": " + reason), path_(std::move(path)), reason_(reason) {}
  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string path_;
  std::string reason_;
};

// The archimedean rule has infinitely many premises and is not checkable.
class ArchUnsupported : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};
class DepthError : public ParseError {
 public:
  using ParseError::ParseError;
};
class WhitelistError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Resource cap exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Numerical failure of the transport solver; never returned silently.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace gradist

#endif  // GRADIST_ERRORS_HPP_
