// Copyright 2026 The qinst Authors
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

namespace qinst {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes or outcome spaces do not line up.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A value violates the invariants of the type it is being turned into.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A map was required to be completely positive and is not.
class NotCompletelyPositiveError : public Error {
  public:
    NotCompletelyPositiveError(const std::string& what, double min_choi_eigenvalue)
        : Error(what), min_choi_eigenvalue_(min_choi_eigenvalue) {}

    double min_choi_eigenvalue() const noexcept { return min_choi_eigenvalue_; }

  private:
    double min_choi_eigenvalue_;
};

/// An operation or instrument is not compatible with the given observable.
class IncompatibleError : public Error {
  public:
    using Error::Error;
};

/// The observable has a projection of rank greater than one.
class DegenerateObservableError : public Error {
  public:
    using Error::Error;
};

/// A collective state reduction was queried on a set of outcome probability zero.
class UndefinedReductionError : public Error {
  public:
    using Error::Error;
};

/// A serialized document does not match the expected schema.
class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace qinst
