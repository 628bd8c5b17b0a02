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

#ifndef QCERT_CIRCUIT_HPP
#define QCERT_CIRCUIT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcert/errors.hpp"

namespace qcert {

enum class GateKind : uint8_t { H, S, Sdg, X, Y, Z, CX, CZ, Swap, T, Tdg };

inline bool is_clifford(GateKind k) { return k != GateKind::T && k != GateKind::Tdg; }
inline bool is_two_qubit(GateKind k) {
  return k == GateKind::CX || k == GateKind::CZ || k == GateKind::Swap;
}

const char *gate_name(GateKind k);
GateKind gate_kind_from_name(const std::string &name);

struct Gate {
  GateKind kind;
  uint32_t q0 = 0;
  uint32_t q1 = 0; // second qubit of CX/CZ/SWAP; q0 is the CX control

  static Gate one_qubit(GateKind k, uint32_t q) { return Gate{k, q, 0}; }
  static Gate two_qubit(GateKind k, uint32_t a, uint32_t b) { return Gate{k, a, b}; }

  bool operator==(const Gate &o) const = default;
};

// Inverse as a short gate sequence within the same gate set.
std::vector<Gate> inverse_gates(const Gate &g);

// Gate list over {Clifford gates, T, Tdg} acting on n qubits.
struct Circuit {
  uint32_t n = 0;
  std::vector<Gate> gates;
  std::optional<std::string> label;
  std::optional<uint64_t> seed;

  Circuit() = default;
  explicit Circuit(uint32_t n_qubits) : n(n_qubits) {}

  void append(const Gate &g);
  void append(GateKind k, uint32_t q) { append(Gate::one_qubit(k, q)); }
  void append(GateKind k, uint32_t a, uint32_t b) { append(Gate::two_qubit(k, a, b)); }
  void extend(const Circuit &other);

  uint32_t t_count() const;
  bool clifford_only() const { return t_count() == 0; }

  Circuit inverse() const;
};

void validate_gate(const Gate &g, uint32_t n);

// Circuit file format: one JSON document
//   {"n": 2, "gates": [{"g": "H", "q": [0]}, {"g": "CX", "q": [0, 1]}],
//    "label": "...", "seed": 123}
// with gate names in {H,S,SDG,X,Y,Z,CX,CZ,SWAP,T,TDG}. label and seed are
// optional. parse(emit(c)) == c.
std::string emit_circuit_json(const Circuit &c);
Circuit parse_circuit_json(const std::string &text);
Circuit load_circuit_file(const std::string &path);
void save_circuit_file(const Circuit &c, const std::string &path);

} // namespace qcert

#endif
