// Copyright 2026 The trotterlab Authors
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

#ifndef TROTTERLAB_ERRORS_HPP
#define TROTTERLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trotterlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TROTTERLAB_DEFINE_ERROR(Name)    \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

TROTTERLAB_DEFINE_ERROR(NonHermitian);
TROTTERLAB_DEFINE_ERROR(NonFinite);
TROTTERLAB_DEFINE_ERROR(DimensionOverflow);
TROTTERLAB_DEFINE_ERROR(DimensionMismatch);
TROTTERLAB_DEFINE_ERROR(EmptyInput);
TROTTERLAB_DEFINE_ERROR(NotSplit);
TROTTERLAB_DEFINE_ERROR(GridTooCoarse);
TROTTERLAB_DEFINE_ERROR(NonRealPotential);
TROTTERLAB_DEFINE_ERROR(OddN);
TROTTERLAB_DEFINE_ERROR(BadCutoff);
TROTTERLAB_DEFINE_ERROR(PacketTouchesBoundary);
TROTTERLAB_DEFINE_ERROR(UnnormalizedState);
TROTTERLAB_DEFINE_ERROR(TooFewPoints);
TROTTERLAB_DEFINE_ERROR(Unreachable);
TROTTERLAB_DEFINE_ERROR(InvalidArgument);

#undef TROTTERLAB_DEFINE_ERROR

/// Malformed JSON; carries the 1-based line and column of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Well-formed JSON that fails validation; names the offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace trotterlab

#endif  // TROTTERLAB_ERRORS_HPP
