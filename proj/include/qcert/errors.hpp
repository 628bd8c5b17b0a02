// Copyright 2026 The qcert Authors
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

#ifndef QCERT_ERRORS_HPP
#define QCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcert {

// Mismatched qubit counts, out-of-range qubit indices.
struct DimensionError : std::invalid_argument {
  explicit DimensionError(const std::string &msg) : std::invalid_argument(msg) {}
};

// Request exceeds a configured resource limit (dense qubit limit, t limit).
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string &msg) : std::runtime_error(msg) {}
};

// Semantically invalid input (non-Hermitian Pauli, non-commuting observable
// set, bad parameter range).
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string &msg) : std::invalid_argument(msg) {}
};

// Malformed circuit files or report documents.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace qcert

#endif
