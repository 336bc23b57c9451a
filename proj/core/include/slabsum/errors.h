// Copyright 2026 The Slabsum Authors
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

#ifndef SLABSUM_ERRORS_H_
#define SLABSUM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slabsum {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the mathematical input does not hold (zero divisor,
// odd n for the planted generator, p not a power of two, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed instance or verdict file. `location` is a JSON pointer such as
// "/weights/3", or "line 4, column 2" for syntax errors.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& message)
      : Error(location + ": " + message), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

// A configured budget (DP table cells, oracle size, SSSP grid leaves) would
// be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Some u_k came out as 0 during quantization. The caller may raise N.
class QuantizationUnderflow : public DomainError {
 public:
  explicit QuantizationUnderflow(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

}  // namespace slabsum

#endif  // SLABSUM_ERRORS_H_
