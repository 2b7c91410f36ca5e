// Copyright 2026 The disclab Authors. All rights reserved.
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

namespace disclab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Checked integer arithmetic left the representable range.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Operand shapes do not agree (row/column counts, vector lengths).
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A precondition on an argument value was violated.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// An enumeration or width cap would be exceeded.
class CapExceeded : public Error {
public:
  using Error::Error;
};

/// A self-check failed after a computation. Always indicates a bug.
class VerificationError : public Error {
public:
  using Error::Error;
};

} // namespace disclab
