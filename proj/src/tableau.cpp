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

#include "qcert/tableau.hpp"

#include <cassert>

namespace qcert {

namespace {

inline uint64_t bit(uint32_t q) { return 1ull << q; }

// In-place conjugation rules on (x, z, phase); phase steps are +-2 (signs).
void conjugate_inplace(PauliString &p, const Gate &g) {
  uint32_t q = g.q0, r = g.q1;
  auto xb = [&](uint32_t k) -> bool { return p.x & bit(k); };
  auto zb = [&](uint32_t k) -> bool { return p.z & bit(k); };
  auto flip_sign_if = [&](bool c) {
    if (c) p.phase = (p.phase + 2) & 3;
  };
  switch (g.kind) {
  case GateKind::H: {
    flip_sign_if(xb(q) && zb(q));
    bool oldx = xb(q);
    p.x = (p.x & ~bit(q)) | (uint64_t(zb(q)) << q);
    p.z = (p.z & ~bit(q)) | (uint64_t(oldx) << q);
    break;
  }
  case GateKind::S:
    flip_sign_if(xb(q) && zb(q));
    p.z ^= (p.x & bit(q));
    break;
  case GateKind::Sdg:
    flip_sign_if(xb(q) && !zb(q));
    p.z ^= (p.x & bit(q));
    break;
  case GateKind::X:
    flip_sign_if(zb(q));
    break;
  case GateKind::Y:
    flip_sign_if(xb(q) != zb(q));
    break;
  case GateKind::Z:
    flip_sign_if(xb(q));
    break;
  case GateKind::CX:
    flip_sign_if(xb(q) && zb(r) && (xb(r) == zb(q)));
    p.x ^= xb(q) ? bit(r) : 0;
    p.z ^= zb(r) ? bit(q) : 0;
    break;
  case GateKind::CZ:
    flip_sign_if(xb(q) && xb(r) && (zb(q) != zb(r)));
    p.z ^= xb(q) ? bit(r) : 0;
    p.z ^= xb(r) ? bit(q) : 0;
    break;
  case GateKind::Swap: {
    bool xq = xb(q), zq = zb(q), xr = xb(r), zr = zb(r);
    p.x = (p.x & ~(bit(q) | bit(r))) | (uint64_t(xr) << q) | (uint64_t(xq) << r);
    p.z = (p.z & ~(bit(q) | bit(r))) | (uint64_t(zr) << q) | (uint64_t(zq) << r);
    break;
  }
  default:
    throw ValidationError("cannot conjugate by a non-Clifford gate");
  }
}

} // namespace

PauliString conjugate_pauli(const PauliString &p, const Gate &g) {
  validate_gate(g, p.n);
  PauliString r = p;
  conjugate_inplace(r, g);
  return r;
}

PauliString conjugate_pauli_by_circuit(const PauliString &p, const Circuit &c) {
  PauliString r = p;
  for (const auto &g : c.gates) {
    validate_gate(g, p.n);
    conjugate_inplace(r, g);
  }
  return r;
}

StabilizerTableau::StabilizerTableau(uint32_t n_qubits) : StabilizerTableau(n_qubits, 0) {}

StabilizerTableau::StabilizerTableau(uint32_t n_qubits, uint64_t basis_string)
    : n_(n_qubits), phase_state_(n_qubits, basis_string) {
  destab_.reserve(n_);
  stab_.reserve(n_);
  for (uint32_t q = 0; q < n_; q++) {
    destab_.push_back(PauliString(n_, bit(q), 0, 0));
    stab_.push_back(PauliString(n_, 0, bit(q), ((basis_string >> q) & 1) ? 2 : 0));
  }
}

StabilizerTableau StabilizerTableau::from_circuit(const Circuit &c, uint64_t basis_string) {
  if (!c.clifford_only())
    throw ValidationError("stabilizer tableau requires a Clifford-only circuit");
  StabilizerTableau t(c.n, basis_string);
  t.apply(c);
  return t;
}

void StabilizerTableau::apply(const Gate &g) {
  validate_gate(g, n_);
  if (!is_clifford(g.kind))
    throw ValidationError("stabilizer tableau can only apply Clifford gates");
  for (uint32_t i = 0; i < n_; i++) {
    conjugate_inplace(destab_[i], g);
    conjugate_inplace(stab_[i], g);
  }
  phase_state_.apply(g);
}

void StabilizerTableau::apply(const Circuit &c) {
  if (c.n != n_)
    throw DimensionError("circuit width does not match tableau");
  for (const auto &g : c.gates) apply(g);
}

void StabilizerTableau::row_multiply(PauliString &dst, const PauliString &src) const {
  dst = multiply(src, dst);
}

int StabilizerTableau::measure_z(uint32_t qubit, Rng &rng) {
  if (qubit >= n_)
    throw DimensionError("measured qubit out of range");
  uint32_t p = n_;
  for (uint32_t i = 0; i < n_; i++) {
    if (stab_[i].x & bit(qubit)) {
      p = i;
      break;
    }
  }

  if (p == n_) {
    // deterministic: Z_q is a product of stabilizers, picked out by the
    // destabilizers that anticommute with it
    PauliString acc = PauliString::identity(n_);
    for (uint32_t i = 0; i < n_; i++)
      if (destab_[i].x & bit(qubit)) row_multiply(acc, stab_[i]);
    return acc.sign() < 0 ? 1 : 0;
  }

  int outcome = rng.next_bit() ? 1 : 0;
  for (uint32_t i = 0; i < n_; i++) {
    if (i != p && (stab_[i].x & bit(qubit))) row_multiply(stab_[i], stab_[p]);
    if ((destab_[i].x & bit(qubit))) row_multiply(destab_[i], stab_[p]);
  }
  destab_[p] = stab_[p];
  stab_[p] = PauliString(n_, 0, bit(qubit), outcome ? 2 : 0);

  PauliString proj(n_, 0, bit(qubit), outcome ? 2 : 0);
  phase_state_.project_pauli(proj);
  phase_state_.renormalize_after_projection();
  assert(invariants_hold());
  return outcome;
}

int StabilizerTableau::expectation(const PauliString &p) const {
  if (p.n != n_)
    throw DimensionError("Pauli width does not match tableau");
  if (!p.is_hermitian())
    throw ValidationError("expectation needs a Hermitian Pauli");
  for (uint32_t i = 0; i < n_; i++)
    if (!commutes(p, stab_[i])) return 0;
  PauliString acc = PauliString::identity(n_);
  for (uint32_t i = 0; i < n_; i++)
    if (!commutes(p, destab_[i])) acc = multiply(acc, stab_[i]);
  if (acc.x != p.x || acc.z != p.z) return 0;
  return acc.phase == p.phase ? +1 : -1;
}

bool StabilizerTableau::invariants_hold() const {
  for (uint32_t i = 0; i < n_; i++) {
    if (!stab_[i].is_hermitian() || !destab_[i].is_hermitian()) return false;
    if (commutes(destab_[i], stab_[i])) return false;
    for (uint32_t j = 0; j < n_; j++) {
      if (j != i && !commutes(stab_[i], stab_[j])) return false;
      if (j != i && !commutes(destab_[i], stab_[j])) return false;
      if (j != i && !commutes(destab_[i], destab_[j])) return false;
    }
  }
  // full rank over GF(2)
  std::vector<uint64_t> rows;
  rows.reserve(2 * n_);
  for (const auto &r : destab_) rows.push_back(r.x | (r.z << n_));
  for (const auto &r : stab_) rows.push_back(r.x | (r.z << n_));
  if (n_ > 32) return true; // rank check shortcut only used at small n
  uint32_t rank = 0;
  for (uint32_t c = 0; c < 2 * n_; c++) {
    uint32_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & bit(c))) pivot++;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (uint32_t r = 0; r < rows.size(); r++)
      if (r != rank && (rows[r] & bit(c))) rows[r] ^= rows[rank];
    rank++;
  }
  return rank == 2 * n_;
}

StabInnerProduct inner_product(const StabilizerTableau &a, const StabilizerTableau &b) {
  if (a.num_qubits() != b.num_qubits())
    throw DimensionError("inner product of states with different qubit counts");
  StabScalar s = ChForm::overlap(a.phase_state(), b.phase_state());
  StabInnerProduct r;
  if (s.zero) return r;
  r.b = true;
  r.p = -s.p;
  r.m = s.e;
  return r;
}

namespace {

// Gates reducing a signed Pauli, with X/Y/Z factors on the given window, to
// +-X at window qubit w0; emitted gates are also applied to `p` in place.
void sweep_to_x(PauliString &p, uint32_t w0, Circuit &out) {
  uint32_t n = p.n;
  auto emit = [&](const Gate &g) {
    conjugate_inplace(p, g);
    out.gates.push_back(g);
  };
  for (uint32_t q = w0; q < n; q++) {
    bool xq = p.x & bit(q), zq = p.z & bit(q);
    if (xq && zq)
      emit(Gate::one_qubit(GateKind::Sdg, q)); // Y -> X
    else if (!xq && zq)
      emit(Gate::one_qubit(GateKind::H, q)); // Z -> X
  }
  if (!(p.x & bit(w0))) {
    uint32_t head = w0 + 1;
    while (head < n && !(p.x & bit(head))) head++;
    emit(Gate::two_qubit(GateKind::Swap, w0, head));
  }
  for (uint32_t q = w0 + 1; q < n; q++)
    if (p.x & bit(q)) emit(Gate::two_qubit(GateKind::CX, w0, q));
}

PauliString random_signed_pauli(uint32_t n, uint32_t w0, Rng &rng) {
  uint32_t w = n - w0;
  for (;;) {
    uint64_t xs = rng.next_below(1ull << w);
    uint64_t zs = rng.next_below(1ull << w);
    if (xs == 0 && zs == 0) continue;
    PauliString p(n, xs << w0, zs << w0, rng.next_bit() ? 2 : 0);
    return p;
  }
}

} // namespace

Circuit random_clifford(uint32_t n, Rng &rng) {
  if (n == 0 || n > 32)
    throw DimensionError("random_clifford supports 1..32 qubits");
  Circuit out(n);
  for (uint32_t j = 0; j < n; j++) {
    PauliString p = random_signed_pauli(n, j, rng);
    PauliString q;
    do {
      q = random_signed_pauli(n, j, rng);
    } while (commutes(p, q));

    Circuit level(n);
    sweep_to_x(p, j, level);
    for (const auto &g : level.gates) conjugate_inplace(q, g);
    // q anticommutes with X_j, so its factor at j is Z or Y. Reduce it to
    // +-Z_j inside an H_j sandwich; the q-sweep gates (Sdg_j, H/Sdg off j,
    // CX with control j) all fix the Z_j that p has become.
    if (!(q.x == 0 && q.z == bit(j))) {
      Gate h = Gate::one_qubit(GateKind::H, j);
      conjugate_inplace(p, h);
      conjugate_inplace(q, h);
      level.gates.push_back(h);
      sweep_to_x(q, j, level);
      conjugate_inplace(p, h);
      conjugate_inplace(q, h);
      level.gates.push_back(h);
    }
    // sign fixes: want p = +X_j, q = +Z_j
    if (p.phase == 2) {
      Gate g = Gate::one_qubit(GateKind::Z, j);
      conjugate_inplace(p, g);
      conjugate_inplace(q, g);
      level.gates.push_back(g);
    }
    if (q.phase == 2) {
      Gate g = Gate::one_qubit(GateKind::X, j);
      conjugate_inplace(p, g);
      conjugate_inplace(q, g);
      level.gates.push_back(g);
    }
    out.extend(level);
  }
  return out;
}

StabilizerTableau random_stabilizer_state(uint32_t n, Rng &rng) {
  Circuit c = random_clifford(n, rng);
  return StabilizerTableau::from_circuit(c);
}

} // namespace qcert
