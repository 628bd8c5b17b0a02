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

#ifndef QCERT_PAULI_HPP
#define QCERT_PAULI_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qcert/errors.hpp"

namespace qcert {

// n-qubit Pauli operator in symplectic bit form, up to 64 qubits.
//
// value = i^phase * sigma(x, z) where sigma is the Hermitian Pauli with
// X-support x and Z-support z (per-qubit factors I, X, Y, Z and Y = i X Z).
// Qubit q lives in bit q of x and z.
struct PauliString {
  uint32_t n = 0;
  uint64_t x = 0;
  uint64_t z = 0;
  uint8_t phase = 0; // Z_4 exponent of the leading i^phase

  PauliString() = default;
  PauliString(uint32_t n_qubits, uint64_t x_bits, uint64_t z_bits, uint8_t ph = 0);

  static PauliString identity(uint32_t n_qubits) { return PauliString(n_qubits, 0, 0, 0); }

  bool is_hermitian() const { return (phase & 1) == 0; }
  bool is_identity() const { return x == 0 && z == 0 && phase == 0; }

  // Real sign of a Hermitian Pauli: +1 for phase 0, -1 for phase 2.
  int sign() const { return (phase & 2) ? -1 : +1; }

  PauliString adjoint() const;

  bool operator==(const PauliString &o) const = default;
};

// Exact group product a*b with the accumulated i^k factor.
PauliString multiply(const PauliString &a, const PauliString &b);

// True iff the symplectic form <a.x, b.z> + <a.z, b.x> is even.
bool commutes(const PauliString &a, const PauliString &b);

// Canonical index of a phase-0 Pauli: sum_q 4^q * code(q) with
// I=0, X=1, Y=2, Z=3 and qubit 0 least significant.
struct PauliIndex {
  uint64_t value = 0;
};

PauliIndex pauli_to_index(const PauliString &p);
PauliString index_to_pauli(PauliIndex i, uint32_t n_qubits);

// Text form: factors over {I,X,Y,Z}, qubit 0 leftmost, optional prefix
// "+", "-", "+i", "-i" (e.g. "-iXIZ").
std::string to_text(const PauliString &p);
PauliString pauli_from_text(const std::string &text);

// Dense 2^n x 2^n matrix, row-major. Test oracle and small-n workhorse.
std::vector<std::complex<double>> pauli_dense_matrix(const PauliString &p);

namespace detail {
inline int parity64(uint64_t v) { return __builtin_parityll(v); }
inline int popcount64(uint64_t v) { return __builtin_popcountll(v); }
} // namespace detail

} // namespace qcert

#endif
