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

#ifndef QCERT_TABLEAU_HPP
#define QCERT_TABLEAU_HPP

#include <cstdint>
#include <vector>

#include "qcert/chform.hpp"
#include "qcert/circuit.hpp"
#include "qcert/pauli.hpp"
#include "qcert/rng.hpp"

namespace qcert {

// Stabilizer state as destabilizer/stabilizer generator rows (generator
// signs live in each row's phase, restricted to {0,2}), plus a CH-form
// companion that carries the global phase so overlaps are exact complex
// numbers relative to the preparation circuit.
class StabilizerTableau {
public:
  explicit StabilizerTableau(uint32_t n_qubits);
  StabilizerTableau(uint32_t n_qubits, uint64_t basis_string);

  static StabilizerTableau from_circuit(const Circuit &c, uint64_t basis_string = 0);

  uint32_t num_qubits() const { return n_; }
  const PauliString &stabilizer(uint32_t i) const { return stab_[i]; }
  const PauliString &destabilizer(uint32_t i) const { return destab_[i]; }
  const ChForm &phase_state() const { return phase_state_; }

  void apply(const Gate &g);
  void apply(const Circuit &c);

  // Z-basis measurement with the standard anticommuting-generator update.
  // Randomness comes only from the injected rng.
  int measure_z(uint32_t qubit, Rng &rng);

  // tr(P * state) for a Hermitian Pauli: +1/-1 if +-P stabilizes, else 0.
  int expectation(const PauliString &p) const;

  // Generator structure: commuting stabilizers, destab_i anticommutes with
  // stab_i only, full symplectic rank, phases in {0,2}.
  bool invariants_hold() const;

private:
  void row_multiply(PauliString &dst, const PauliString &src) const;

  uint32_t n_;
  std::vector<PauliString> destab_;
  std::vector<PauliString> stab_;
  ChForm phase_state_;
};

StabInnerProduct inner_product(const StabilizerTableau &a, const StabilizerTableau &b);

// Conjugation action g P g^dag on a Pauli (exact signs).
PauliString conjugate_pauli(const PauliString &p, const Gate &g);
PauliString conjugate_pauli_by_circuit(const PauliString &p, const Circuit &c);

// Uniformly random element of the Clifford group as a gate sequence.
// Sweep construction: per level, draw a uniform signed nonidentity Pauli
// and a uniform signed anticommuting partner on the remaining qubits and
// reduce the pair to (X_j, Z_j); the pair sequence is in bijection with the
// group, so the draw is exactly uniform.
Circuit random_clifford(uint32_t n, Rng &rng);

// Uniformly random n-qubit stabilizer state tableau (random Clifford on |0>).
StabilizerTableau random_stabilizer_state(uint32_t n, Rng &rng);

} // namespace qcert

#endif
