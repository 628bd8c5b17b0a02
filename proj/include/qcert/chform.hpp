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

#ifndef QCERT_CHFORM_HPP
#define QCERT_CHFORM_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "qcert/circuit.hpp"
#include "qcert/pauli.hpp"

namespace qcert {

// Discrete stabilizer scalar: value = zero ? 0 : 2^(p/2) * exp(i pi e / 4).
// Every amplitude and overlap of stabilizer states has this form.
struct StabScalar {
  bool zero = false;
  int32_t p = 0;
  uint8_t e = 0; // Z_8

  static StabScalar one() { return {}; }
  static StabScalar null() { return {true, 0, 0}; }

  StabScalar conj() const { return {zero, p, static_cast<uint8_t>((8 - e) & 7)}; }
  StabScalar operator*(const StabScalar &o) const {
    return {zero || o.zero, p + o.p, static_cast<uint8_t>((e + o.e) & 7)};
  }
  std::complex<double> value() const;
};

// Stabilizer inner product in the form b * 2^(-p/2) * exp(i pi m / 4).
struct StabInnerProduct {
  bool b = false;
  int32_t p = 0;
  int32_t m = 0;

  std::complex<double> value() const;
};

// Phase-exact stabilizer state in CH form:
//
//   |phi> = omega * U_C * U_H |s>
//
// where U_C is generated by {CX, CZ, S} (fixes |0^n>), U_H is a layer of
// Hadamards on the qubits in v, and s is a basis string. The C layer is
// stored through its Heisenberg action, row p giving
//
//   U_C^dag X_p U_C = i^gamma[p] X^F[p] Z^M[p]
//   U_C^dag Z_p U_C = Z^G[p]
//
// Unlike a plain tableau this keeps the global phase, so amplitudes and
// overlaps are exact complex numbers. Gate cost: O(n) for C-type gates and
// Paulis, O(n^2)-ish for H. Amplitude and overlap queries are exact.
class ChForm {
public:
  explicit ChForm(uint32_t n_qubits);
  ChForm(uint32_t n_qubits, uint64_t basis_string);

  uint32_t num_qubits() const { return n_; }
  StabScalar scalar() const { return omega_; }
  bool is_zero() const { return omega_.zero; }

  void set_basis_state(uint64_t x);

  void h(uint32_t q);
  void s(uint32_t q);
  void sdg(uint32_t q);
  void x(uint32_t q);
  void y(uint32_t q);
  void z(uint32_t q);
  void cx(uint32_t control, uint32_t target);
  void cz(uint32_t a, uint32_t b);
  void swap(uint32_t a, uint32_t b);

  void apply(const Gate &g);
  void apply(const Circuit &c);          // gates must all be Clifford
  void apply_inverse(const Circuit &c);  // applies c^dag

  // Applies the rank-d/2 projector (1 + P)/2. The state norm changes;
  // renormalize_after_projection() restores unit norm after a fair coin
  // outcome. P must be Hermitian.
  void project_pauli(const PauliString &pauli);
  void renormalize_after_projection() { omega_.p += 1; }

  // Exact amplitude <x|phi>.
  StabScalar amplitude(uint64_t x) const;

  // Exact overlap <a|b>, O(n^3).
  static StabScalar overlap(const ChForm &a, const ChForm &b);

  // Dense statevector, for oracles and tests (n <= 20).
  std::vector<std::complex<double>> to_statevector() const;

private:
  struct CPauli { // X^x Z^z times i^e
    uint64_t x = 0, z = 0;
    uint32_t e = 0;
  };

  CPauli conjugated_x_product(uint64_t x_bits) const;
  void update_superposition(uint64_t t, uint64_t u, uint32_t b);

  void right_cx(uint32_t control, uint32_t target);
  void right_cz(uint32_t a, uint32_t b);
  void right_s(uint32_t q);

  // Left-multiplies the C layer data by an elementary gate without touching
  // v, s, omega. Used by gates and by the overlap decomposition.
  void left_c_gate(const Gate &g);

  // Gate sequence h_1..h_m with h_m * ... * h_1 * U_C = identity.
  std::vector<Gate> c_layer_inverse_sequence() const;

  uint32_t n_;
  std::vector<uint64_t> F_, G_, M_; // rows
  std::vector<uint8_t> gamma_;      // Z_4
  uint64_t v_ = 0;
  uint64_t s_ = 0;
  StabScalar omega_;
};

} // namespace qcert

#endif
