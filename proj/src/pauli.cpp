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

#include "qcert/pauli.hpp"

namespace qcert {

namespace {

uint64_t qubit_mask(uint32_t n) { return n >= 64 ? ~0ull : ((1ull << n) - 1); }

void check_same_size(const PauliString &a, const PauliString &b) {
  if (a.n != b.n)
    throw DimensionError("Pauli size mismatch: " + std::to_string(a.n) + " vs " + std::to_string(b.n));
}

} // namespace

PauliString::PauliString(uint32_t n_qubits, uint64_t x_bits, uint64_t z_bits, uint8_t ph)
    : n(n_qubits), x(x_bits), z(z_bits), phase(ph & 3) {
  if (n_qubits > 64)
    throw DimensionError("PauliString supports up to 64 qubits");
  uint64_t m = qubit_mask(n_qubits);
  if ((x_bits & ~m) || (z_bits & ~m))
    throw DimensionError("Pauli support exceeds qubit count");
}

PauliString PauliString::adjoint() const {
  PauliString r = *this;
  r.phase = (4 - phase) & 3;
  return r;
}

PauliString multiply(const PauliString &a, const PauliString &b) {
  check_same_size(a, b);
  PauliString r;
  r.n = a.n;
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  // i^phase relative to the Hermitian sigma(x,z) basis: convert both factors
  // to X^x Z^z form, commute Z^za past X^xb, convert back.
  int k = a.phase + b.phase;
  k += detail::popcount64(a.x & a.z) + detail::popcount64(b.x & b.z);
  k += 2 * detail::parity64(a.z & b.x);
  k -= detail::popcount64(r.x & r.z);
  r.phase = static_cast<uint8_t>(((k % 4) + 4) % 4);
  return r;
}

bool commutes(const PauliString &a, const PauliString &b) {
  check_same_size(a, b);
  return (detail::parity64(a.x & b.z) ^ detail::parity64(a.z & b.x)) == 0;
}

PauliIndex pauli_to_index(const PauliString &p) {
  uint64_t v = 0;
  for (uint32_t q = p.n; q-- > 0;) {
    uint64_t code = ((p.x >> q) & 1) ? (((p.z >> q) & 1) ? 2 : 1) : (((p.z >> q) & 1) ? 3 : 0);
    v = 4 * v + code;
  }
  return PauliIndex{v};
}

PauliString index_to_pauli(PauliIndex i, uint32_t n_qubits) {
  if (n_qubits > 32 || (n_qubits < 32 && i.value >= (1ull << (2 * n_qubits))))
    throw std::out_of_range("Pauli index out of range for qubit count");
  PauliString p = PauliString::identity(n_qubits);
  uint64_t v = i.value;
  for (uint32_t q = 0; q < n_qubits; q++) {
    uint64_t code = v & 3;
    v >>= 2;
    if (code == 1 || code == 2) p.x |= 1ull << q;
    if (code == 2 || code == 3) p.z |= 1ull << q;
  }
  return p;
}

std::string to_text(const PauliString &p) {
  static const char *prefix[4] = {"+", "+i", "-", "-i"};
  std::string s = prefix[p.phase];
  for (uint32_t q = 0; q < p.n; q++) {
    bool xb = (p.x >> q) & 1, zb = (p.z >> q) & 1;
    s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return s;
}

PauliString pauli_from_text(const std::string &text) {
  size_t pos = 0;
  uint8_t phase = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    pos++;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = (phase + 1) & 3;
    pos++;
  }
  std::string body = text.substr(pos);
  if (body.empty())
    throw ParseError("empty Pauli string");
  PauliString p = PauliString::identity(static_cast<uint32_t>(body.size()));
  p.phase = phase;
  for (uint32_t q = 0; q < body.size(); q++) {
    switch (body[q]) {
    case 'I': break;
    case 'X': p.x |= 1ull << q; break;
    case 'Y': p.x |= 1ull << q; p.z |= 1ull << q; break;
    case 'Z': p.z |= 1ull << q; break;
    default:
      throw ParseError(std::string("invalid Pauli letter '") + body[q] + "'");
    }
  }
  return p;
}

std::vector<std::complex<double>> pauli_dense_matrix(const PauliString &p) {
  if (p.n > 12)
    throw CapacityError("dense Pauli matrix limited to 12 qubits");
  const uint64_t d = 1ull << p.n;
  static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<std::complex<double>> m(d * d, 0.0);
  // P|j> = i^(phase + |x&z|) (-1)^(z.j) |j ^ x>
  std::complex<double> lead = i_pow[(p.phase + detail::popcount64(p.x & p.z)) & 3];
  for (uint64_t j = 0; j < d; j++) {
    double sgn = detail::parity64(p.z & j) ? -1.0 : 1.0;
    m[(j ^ p.x) * d + j] = lead * sgn;
  }
  return m;
}

} // namespace qcert
