// Copyright 2026 The slumix Authors.
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

#ifndef SLUMIX_ERROR_H_
#define SLUMIX_ERROR_H_

#include <stdexcept>
#include <string>

namespace slumix {

// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data that violates a format or invariant (bad record, duplicate id,
// unresolved reference). The CLI maps these to exit code 1.
class DataError : public Error {
 public:
  using Error::Error;
};

// A caller violated an operation precondition (p outside [0,1], n < 2, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace slumix

#endif  // SLUMIX_ERROR_H_
