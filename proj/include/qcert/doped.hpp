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

#ifndef QCERT_DOPED_HPP
#define QCERT_DOPED_HPP

#include <cstdint>
#include <vector>

#include "qcert/chform.hpp"
#include "qcert/circuit.hpp"

namespace qcert {

// Clifford-only circuit on n + t qubits obtained by replacing the k-th
// T/Tdg at qubit i_k with CX(i_k, n + k - 1); ancilla k carries phase
// weight +1 for T and -1 for Tdg in the magic-state expansion.
struct GadgetizedCircuit {
  Circuit clifford;              // n + t qubits
  uint32_t n = 0;                // original register size
  uint32_t t = 0;                // ancilla count
  std::vector<int8_t> ancilla_sign; // +1 (T) / -1 (Tdg) per ancilla
};

GadgetizedCircuit gadgetize(const Circuit &u);

// Unit-cost accounting for a strong-simulation call: `terms` overlaps of
// stabilizer states on n + t qubits, each billed (n+t)^3.
struct CostLedger {
  uint64_t terms = 0;          // 2^t amplitude evaluations
  uint64_t overlap_qubits = 0; // n + t
  uint64_t n_cl = 0;           // terms * (n+t)^3

  void charge(uint64_t term_count, uint64_t qubits) {
    terms += term_count;
    overlap_qubits = qubits;
    n_cl += term_count * qubits * qubits * qubits;
  }
};

struct DopedLimits {
  uint32_t t = 16;
};
DopedLimits &doped_limits();

struct OutcomeProbability {
  double probability = 0;
  CostLedger ledger;
};

// Exact |<x| U |0^n>|^2 by the gadget sum
//   p(x) = | sum_{y in {0,1}^t} e^{i pi s(y)/4} <x,0^t| C_U |0^n,y> |^2
// with s(y) the signed Hamming weight given by the ancilla directions.
// The 2^t overlaps are accumulated exactly in Z[e^{i pi/4}], so the result
// is bit-stable for any worker count.
OutcomeProbability outcome_probability(const Circuit &u, uint64_t x, uint32_t workers = 0);

// Probability of x for the composition (clifford after u) on |0^n>.
OutcomeProbability outcome_probability_with_clifford(const Circuit &u, const Circuit &clifford,
                                                     uint64_t x, uint32_t workers = 0);

uint64_t parse_bit_string(const std::string &s); // "0110", qubit 0 leftmost
std::string format_bit_string(uint64_t x, uint32_t n);

} // namespace qcert

#endif
