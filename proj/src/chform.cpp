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

#include "qcert/chform.hpp"

#include <cassert>
#include <cmath>

namespace qcert {

namespace {
const double kSqrtHalf = 0.70710678118654752440;
const double kRe[8] = {1, kSqrtHalf, 0, -kSqrtHalf, -1, -kSqrtHalf, 0, kSqrtHalf};
const double kIm[8] = {0, kSqrtHalf, 1, kSqrtHalf, 0, -kSqrtHalf, -1, -kSqrtHalf};

inline int parity(uint64_t v) { return __builtin_parityll(v); }
inline uint64_t bit(uint32_t q) { return 1ull << q; }
} // namespace

std::complex<double> StabScalar::value() const {
  if (zero) return {0.0, 0.0};
  double mag = std::exp2(0.5 * p);
  return {mag * kRe[e & 7], mag * kIm[e & 7]};
}

std::complex<double> StabInnerProduct::value() const {
  if (!b) return {0.0, 0.0};
  double mag = std::exp2(-0.5 * p);
  return {mag * kRe[m & 7], mag * kIm[m & 7]};
}

ChForm::ChForm(uint32_t n_qubits) : ChForm(n_qubits, 0) {}

ChForm::ChForm(uint32_t n_qubits, uint64_t basis_string) : n_(n_qubits) {
  if (n_ > 64)
    throw DimensionError("ChForm supports up to 64 qubits");
  F_.assign(n_, 0);
  G_.assign(n_, 0);
  M_.assign(n_, 0);
  gamma_.assign(n_, 0);
  set_basis_state(basis_string);
}

void ChForm::set_basis_state(uint64_t x) {
  for (uint32_t p = 0; p < n_; p++) {
    F_[p] = bit(p);
    G_[p] = bit(p);
    M_[p] = 0;
    gamma_[p] = 0;
  }
  v_ = 0;
  s_ = x;
  omega_ = StabScalar::one();
}

void ChForm::left_c_gate(const Gate &g) {
  switch (g.kind) {
  case GateKind::S:
    M_[g.q0] ^= G_[g.q0];
    gamma_[g.q0] = (gamma_[g.q0] + 3) & 3;
    break;
  case GateKind::Sdg:
    M_[g.q0] ^= G_[g.q0];
    gamma_[g.q0] = (gamma_[g.q0] + 1) & 3;
    break;
  case GateKind::Z:
    gamma_[g.q0] = (gamma_[g.q0] + 2) & 3;
    break;
  case GateKind::CZ:
    M_[g.q0] ^= G_[g.q1];
    M_[g.q1] ^= G_[g.q0];
    break;
  case GateKind::CX: {
    uint32_t q = g.q0, r = g.q1;
    gamma_[q] = (gamma_[q] + gamma_[r] + 2 * parity(M_[q] & F_[r])) & 3;
    F_[q] ^= F_[r];
    M_[q] ^= M_[r];
    G_[r] ^= G_[q];
    break;
  }
  default:
    throw ValidationError("not a C-type gate");
  }
}

void ChForm::s(uint32_t q) { left_c_gate(Gate::one_qubit(GateKind::S, q)); }
void ChForm::sdg(uint32_t q) { left_c_gate(Gate::one_qubit(GateKind::Sdg, q)); }
void ChForm::z(uint32_t q) { left_c_gate(Gate::one_qubit(GateKind::Z, q)); }
void ChForm::cz(uint32_t a, uint32_t b) { left_c_gate(Gate::two_qubit(GateKind::CZ, a, b)); }
void ChForm::cx(uint32_t control, uint32_t target) {
  left_c_gate(Gate::two_qubit(GateKind::CX, control, target));
}

void ChForm::x(uint32_t q) {
  // Push U_C^dag X_q U_C = i^gamma X^F[q] Z^M[q] through the H layer onto s.
  uint64_t a = F_[q], b = M_[q];
  uint32_t e = 2u * gamma_[q];
  e += 4u * static_cast<uint32_t>(parity(a & b & v_)); // H turns Y into -Y
  uint64_t ax = (a & ~v_) ^ (b & v_);
  uint64_t zx = (b & ~v_) ^ (a & v_);
  e += 4u * static_cast<uint32_t>(parity(zx & s_));
  s_ ^= ax;
  omega_.e = (omega_.e + e) & 7;
}

void ChForm::y(uint32_t q) {
  z(q);
  x(q);
  omega_.e = (omega_.e + 2) & 7;
}

void ChForm::swap(uint32_t a, uint32_t b) {
  cx(a, b);
  cx(b, a);
  cx(a, b);
}

void ChForm::right_s(uint32_t q) {
  for (uint32_t p = 0; p < n_; p++) {
    if (F_[p] & bit(q)) {
      M_[p] ^= bit(q);
      gamma_[p] = (gamma_[p] + 3) & 3;
    }
  }
}

void ChForm::right_cz(uint32_t a, uint32_t b) {
  for (uint32_t p = 0; p < n_; p++) {
    bool fa = F_[p] & bit(a), fb = F_[p] & bit(b);
    if (fa) M_[p] ^= bit(b);
    if (fb) M_[p] ^= bit(a);
    if (fa && fb) gamma_[p] = (gamma_[p] + 2) & 3;
  }
}

void ChForm::right_cx(uint32_t control, uint32_t target) {
  for (uint32_t p = 0; p < n_; p++) {
    if (F_[p] & bit(control)) F_[p] ^= bit(target);
    if (M_[p] & bit(target)) M_[p] ^= bit(control);
    if (G_[p] & bit(target)) G_[p] ^= bit(control);
  }
}

void ChForm::update_superposition(uint64_t t, uint64_t u, uint32_t b) {
  // Rewrites (|t> + i^b |u>)/sqrt(2) back into U_C'' U_H' |s'> form,
  // right-multiplying the C layer as needed.
  b &= 3;
  if (t == u) {
    s_ = t;
    switch (b) {
    case 0: omega_.p += 1; break;
    case 1: omega_.e = (omega_.e + 1) & 7; break;
    case 2: omega_.zero = true; break;
    case 3: omega_.e = (omega_.e + 7) & 7; break;
    }
    return;
  }

  uint64_t ut = u ^ t;
  uint64_t nu0 = ut & ~v_;
  uint64_t nu1 = ut & v_;
  uint32_t q;
  if (nu0) {
    q = static_cast<uint32_t>(__builtin_ctzll(nu0));
    nu0 &= ~bit(q);
    for (uint32_t q1 = q + 1; q1 < n_; q1++)
      if (nu0 & bit(q1)) right_cx(q, q1);
    for (uint32_t q1 = 0; q1 < n_; q1++)
      if (nu1 & bit(q1)) right_cz(q, q1);
  } else {
    q = static_cast<uint32_t>(__builtin_ctzll(nu1));
    for (uint32_t q1 = q + 1; q1 < n_; q1++)
      if (nu1 & bit(q1)) right_cx(q1, q);
  }

  // keep the branch with 0 at qubit q as the base string
  if (t & bit(q)) {
    s_ = u;
    omega_.e = (omega_.e + 2 * b) & 7;
    b = (4 - b) & 3;
  } else {
    s_ = t;
  }

  // H^a S^b |+> = eta^e1 S^e2 H^e3 |e4>, eta = exp(i pi/4)
  bool a = v_ & bit(q);
  uint32_t e1 = a ? ((b % 2) * ((3 * b + 6) & 7)) : 0; // b=1 -> 1, b=3 -> 7
  uint32_t e2 = b % 2;
  bool e3 = a ? (b % 2) : true;
  bool e4 = a ? (b == 1 || b == 2) : (b >= 2);

  s_ = (s_ & ~bit(q)) | (uint64_t(e4) << q);
  v_ = (v_ & ~bit(q)) | (uint64_t(e3) << q);
  omega_.e = (omega_.e + e1) & 7;
  if (e2) right_s(q);
}

void ChForm::h(uint32_t q) {
  if (q >= n_) throw DimensionError("H qubit out of range");
  uint64_t rowF = F_[q], rowG = G_[q], rowM = M_[q];

  uint64_t t = s_ ^ (rowG & v_);
  uint64_t u = s_ ^ (rowF & ~v_) ^ (rowM & v_);
  uint32_t alpha = parity(rowG & ~v_ & s_);
  uint32_t beta = parity(rowM & ~v_ & s_) ^ parity(rowF & v_ & (rowM ^ s_));

  omega_.e = (omega_.e + 4 * alpha) & 7;
  uint32_t b = (gamma_[q] + 2 * (alpha + beta)) & 3;
  update_superposition(t, u, b);
}

void ChForm::apply(const Gate &g) {
  validate_gate(g, n_);
  switch (g.kind) {
  case GateKind::H: h(g.q0); break;
  case GateKind::S: s(g.q0); break;
  case GateKind::Sdg: sdg(g.q0); break;
  case GateKind::X: x(g.q0); break;
  case GateKind::Y: y(g.q0); break;
  case GateKind::Z: z(g.q0); break;
  case GateKind::CX: cx(g.q0, g.q1); break;
  case GateKind::CZ: cz(g.q0, g.q1); break;
  case GateKind::Swap: swap(g.q0, g.q1); break;
  default:
    throw ValidationError("ChForm can only apply Clifford gates");
  }
}

void ChForm::apply(const Circuit &c) {
  if (c.n != n_)
    throw DimensionError("circuit width does not match state");
  for (const auto &g : c.gates) apply(g);
}

void ChForm::apply_inverse(const Circuit &c) {
  if (c.n != n_)
    throw DimensionError("circuit width does not match state");
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
    for (const auto &g : inverse_gates(*it)) apply(g);
}

ChForm::CPauli ChForm::conjugated_x_product(uint64_t x_bits) const {
  CPauli r;
  for (uint32_t q = 0; q < n_; q++) {
    if (x_bits & bit(q)) {
      r.e = (r.e + gamma_[q] + 2 * parity(r.z & F_[q])) & 3;
      r.x ^= F_[q];
      r.z ^= M_[q];
    }
  }
  return r;
}

StabScalar ChForm::amplitude(uint64_t x) const {
  if (omega_.zero) return StabScalar::null();
  CPauli p = conjugated_x_product(x);

  // <x|phi> = omega * <0|P U_H|s> with P = U_C^dag X(x) U_C; P is Hermitian,
  // so this equals omega * conj(<s|U_H P|0^n>).
  if ((p.x & ~v_) != (s_ & ~v_)) return StabScalar::null();
  StabScalar amp;
  amp.e = static_cast<uint8_t>((2 * p.e + 4 * parity(p.x & v_ & s_)) & 7);
  amp.p = -static_cast<int32_t>(__builtin_popcountll(v_));
  amp = amp.conj();
  return amp * omega_;
}

void ChForm::project_pauli(const PauliString &pauli) {
  if (pauli.n != n_)
    throw DimensionError("Pauli width does not match state");
  if (!pauli.is_hermitian())
    throw ValidationError("projector needs a Hermitian Pauli");
  if (omega_.zero) return;

  // R = U_C^dag P U_C in X^x Z^z * i^e convention
  CPauli r = conjugated_x_product(pauli.x);
  r.e = (r.e + pauli.phase + detail::popcount64(pauli.x & pauli.z)) & 3;
  for (uint32_t q = 0; q < n_; q++)
    if (pauli.z & bit(q)) r.z ^= G_[q];

  // conjugate by the H layer
  uint64_t rx = (r.x & ~v_) ^ (r.z & v_);
  uint64_t rz = (r.z & ~v_) ^ (r.x & v_);
  r.e = (r.e + 2 * parity(r.x & r.z & v_)) & 3;
  r.x = rx;
  r.z = rz;

  uint32_t b = (r.e + 2 * parity(s_ & r.z)) & 3;
  update_superposition(s_, s_ ^ r.x, b);
  omega_.p -= 1;
}

std::vector<Gate> ChForm::c_layer_inverse_sequence() const {
  // Reduce a copy of (F, G, M, gamma) to the identity C layer by left
  // multiplications; the op list then equals U_C^dag in application order.
  std::vector<uint64_t> F = F_, G = G_, M = M_;
  std::vector<uint8_t> gamma(gamma_);
  std::vector<Gate> ops;

  auto apply_op = [&](const Gate &g) {
    switch (g.kind) {
    case GateKind::S:
      M[g.q0] ^= G[g.q0];
      gamma[g.q0] = (gamma[g.q0] + 3) & 3;
      break;
    case GateKind::Z:
      gamma[g.q0] = (gamma[g.q0] + 2) & 3;
      break;
    case GateKind::CZ:
      M[g.q0] ^= G[g.q1];
      M[g.q1] ^= G[g.q0];
      break;
    case GateKind::CX: {
      uint32_t q = g.q0, r = g.q1;
      gamma[q] = (gamma[q] + gamma[r] + 2 * parity(M[q] & F[r])) & 3;
      F[q] ^= F[r];
      M[q] ^= M[r];
      G[r] ^= G[q];
      break;
    }
    default: break;
    }
    ops.push_back(g);
  };

  // Gauss-Jordan on F: row j picks up row p (CX adds row q1 into q0 of F).
  for (uint32_t j = 0; j < n_; j++) {
    if (!(F[j] & bit(j))) {
      uint32_t p = j + 1;
      while (p < n_ && !(F[p] & bit(j))) p++;
      assert(p < n_ && "C layer F matrix is singular");
      // three row additions swap rows j and p
      apply_op(Gate::two_qubit(GateKind::CX, j, p));
      apply_op(Gate::two_qubit(GateKind::CX, p, j));
      apply_op(Gate::two_qubit(GateKind::CX, j, p));
    }
    for (uint32_t p = 0; p < n_; p++)
      if (p != j && (F[p] & bit(j))) apply_op(Gate::two_qubit(GateKind::CX, p, j));
  }
  for (uint32_t q = 0; q < n_; q++) {
    assert(F[q] == bit(q) && G[q] == bit(q));
    for (uint32_t r = q + 1; r < n_; r++)
      if (M[q] & bit(r)) apply_op(Gate::two_qubit(GateKind::CZ, q, r));
  }
  for (uint32_t q = 0; q < n_; q++) {
    if (M[q] & bit(q)) apply_op(Gate::one_qubit(GateKind::S, q));
    assert(M[q] == 0 && (gamma[q] & 1) == 0);
    if (gamma[q] & 2) apply_op(Gate::one_qubit(GateKind::Z, q));
  }
  return ops;
}

StabScalar ChForm::overlap(const ChForm &a, const ChForm &b) {
  if (a.n_ != b.n_)
    throw DimensionError("overlap of states with different qubit counts");
  if (a.omega_.zero || b.omega_.zero) return StabScalar::null();

  // <a|b> = conj(omega_a) <s_a| U_Ha U_Ca^dag |b>
  ChForm work = b;
  for (const auto &g : a.c_layer_inverse_sequence()) work.left_c_gate(g);
  for (uint32_t q = 0; q < a.n_; q++)
    if (a.v_ & bit(q)) work.h(q);
  StabScalar amp = work.amplitude(a.s_);
  return a.omega_.conj() * amp;
}

std::vector<std::complex<double>> ChForm::to_statevector() const {
  if (n_ > 20)
    throw CapacityError("statevector export limited to 20 qubits");
  std::vector<std::complex<double>> out(1ull << n_);
  for (uint64_t x = 0; x < out.size(); x++) out[x] = amplitude(x).value();
  return out;
}

} // namespace qcert
