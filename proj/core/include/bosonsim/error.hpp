// Copyright 2026 The bosonsim Authors
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

#ifndef BOSONSIM_ERROR_HPP
#define BOSONSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bosonsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input is larger than an algorithm's hard ceiling (e.g. the factorial oracle).
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured state-count guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Input and output photon numbers differ.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A value fails a required property (e.g. a matrix that should be unitary).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Collision-free postselection keeps (numerically) zero probability mass.
class DegeneratePostselectionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Wrong number of parameters.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// Two-photon visibility requested where the classical rate vanishes.
class UndefinedVisibilityError : public Error {
 public:
  using Error::Error;
};

/// No restart of the fitter produced a usable solution.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace bosonsim

#endif  // BOSONSIM_ERROR_HPP
