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

#include "qcert/dense.hpp"

#include <algorithm>
#include <cmath>

namespace qcert {

namespace {
const cplx kI(0.0, 1.0);
const double kSqrtHalf = 0.70710678118654752440;

inline int parity(uint64_t v) { return __builtin_parityll(v); }

void check_pure_capacity(uint32_t n) {
  if (n > dense_limits().pure)
    throw CapacityError("dense statevector limit exceeded: n=" + std::to_string(n) +
                        " > " + std::to_string(dense_limits().pure));
}
void check_mixed_capacity(uint32_t n) {
  if (n > dense_limits().mixed)
    throw CapacityError("dense density-matrix limit exceeded: n=" + std::to_string(n) +
                        " > " + std::to_string(dense_limits().mixed));
}
} // namespace

DenseLimits &dense_limits() {
  static DenseLimits limits;
  return limits;
}

DenseState::DenseState(uint32_t n_qubits, uint64_t basis) : n(n_qubits) {
  check_pure_capacity(n);
  amp.assign(1ull << n, cplx(0, 0));
  amp[basis] = 1.0;
}

double DenseState::norm2() const {
  double s = 0;
  for (const auto &a : amp) s += std::norm(a);
  return s;
}

DensityMatrix::DensityMatrix(uint32_t n_qubits) : n(n_qubits) {
  check_mixed_capacity(n);
  m.assign((1ull << n) * (1ull << n), cplx(0, 0));
  m[0] = 1.0;
}

DensityMatrix DensityMatrix::from_pure(const DenseState &psi) {
  check_mixed_capacity(psi.n);
  DensityMatrix rho(psi.n);
  uint64_t d = rho.dim();
  for (uint64_t r = 0; r < d; r++)
    for (uint64_t c = 0; c < d; c++) rho.m[r * d + c] = psi.amp[r] * std::conj(psi.amp[c]);
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(uint32_t n_qubits) {
  DensityMatrix rho(n_qubits);
  uint64_t d = rho.dim();
  rho.m.assign(d * d, cplx(0, 0));
  for (uint64_t r = 0; r < d; r++) rho.m[r * d + r] = 1.0 / static_cast<double>(d);
  return rho;
}

double DensityMatrix::trace_real() const {
  double s = 0;
  uint64_t d = dim();
  for (uint64_t r = 0; r < d; r++) s += m[r * d + r].real();
  return s;
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_rc|^2 for Hermitian rho
  double s = 0;
  for (const auto &e : m) s += std::norm(e);
  return s;
}

bool KrausChannel::is_trace_preserving(double tol) const {
  uint64_t d = 1ull << n;
  std::vector<cplx> acc(d * d, cplx(0, 0));
  for (const auto &a : ops) {
    for (uint64_t r = 0; r < d; r++)
      for (uint64_t c = 0; c < d; c++) {
        cplx s(0, 0);
        for (uint64_t k = 0; k < d; k++) s += std::conj(a[k * d + r]) * a[k * d + c];
        acc[r * d + c] += s;
      }
  }
  for (uint64_t r = 0; r < d; r++)
    for (uint64_t c = 0; c < d; c++) {
      cplx want = (r == c) ? cplx(1, 0) : cplx(0, 0);
      if (std::abs(acc[r * d + c] - want) > tol) return false;
    }
  return true;
}

// --- gate kernels ---

namespace {

void apply_1q(std::vector<cplx> &amp, uint32_t n, uint32_t q, const cplx u[4]) {
  uint64_t stride = 1ull << q;
  uint64_t dim = 1ull << n;
  for (uint64_t base = 0; base < dim; base += 2 * stride) {
    for (uint64_t off = 0; off < stride; off++) {
      uint64_t i0 = base + off, i1 = i0 + stride;
      cplx a = amp[i0], b = amp[i1];
      amp[i0] = u[0] * a + u[1] * b;
      amp[i1] = u[2] * a + u[3] * b;
    }
  }
}

void apply_gate_amp(std::vector<cplx> &amp, uint32_t n, const Gate &g) {
  uint64_t dim = 1ull << n;
  switch (g.kind) {
  case GateKind::H: {
    const cplx u[4] = {kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf};
    apply_1q(amp, n, g.q0, u);
    break;
  }
  case GateKind::S: {
    const cplx u[4] = {1, 0, 0, kI};
    apply_1q(amp, n, g.q0, u);
    break;
  }
  case GateKind::Sdg: {
    const cplx u[4] = {1, 0, 0, -kI};
    apply_1q(amp, n, g.q0, u);
    break;
  }
  case GateKind::T: {
    const cplx u[4] = {1, 0, 0, cplx(kSqrtHalf, kSqrtHalf)};
    apply_1q(amp, n, g.q0, u);
    break;
  }
  case GateKind::Tdg: {
    const cplx u[4] = {1, 0, 0, cplx(kSqrtHalf, -kSqrtHalf)};
    apply_1q(amp, n, g.q0, u);
    break;
  }
  case GateKind::X: {
    const cplx u[4] = {0, 1, 1, 0};
    apply_1q(amp, n, g.q0, u);
    break;
  }
  case GateKind::Y: {
    const cplx u[4] = {0, -kI, kI, 0};
    apply_1q(amp, n, g.q0, u);
    break;
  }
  case GateKind::Z: {
    const cplx u[4] = {1, 0, 0, -1};
    apply_1q(amp, n, g.q0, u);
    break;
  }
  case GateKind::CX: {
    uint64_t cm = 1ull << g.q0, tm = 1ull << g.q1;
    for (uint64_t i = 0; i < dim; i++)
      if ((i & cm) && !(i & tm)) std::swap(amp[i], amp[i | tm]);
    break;
  }
  case GateKind::CZ: {
    uint64_t cm = 1ull << g.q0, tm = 1ull << g.q1;
    for (uint64_t i = 0; i < dim; i++)
      if ((i & cm) && (i & tm)) amp[i] = -amp[i];
    break;
  }
  case GateKind::Swap: {
    uint64_t am = 1ull << g.q0, bm = 1ull << g.q1;
    for (uint64_t i = 0; i < dim; i++)
      if ((i & am) && !(i & bm)) std::swap(amp[i], amp[(i ^ am) | bm]);
    break;
  }
  }
}

} // namespace

void apply_gate(DenseState &psi, const Gate &g) {
  validate_gate(g, psi.n);
  apply_gate_amp(psi.amp, psi.n, g);
}

void apply_circuit(DenseState &psi, const Circuit &c) {
  if (c.n != psi.n)
    throw DimensionError("circuit width does not match state");
  for (const auto &g : c.gates) apply_gate(psi, g);
}

DenseState simulate(const Circuit &c, uint64_t input_basis) {
  DenseState psi(c.n, input_basis);
  apply_circuit(psi, c);
  return psi;
}

std::vector<cplx> unitary_of_circuit(const Circuit &c) {
  check_pure_capacity(c.n);
  uint64_t d = 1ull << c.n;
  std::vector<cplx> u(d * d, cplx(0, 0));
  std::vector<cplx> col(d);
  for (uint64_t b = 0; b < d; b++) {
    std::fill(col.begin(), col.end(), cplx(0, 0));
    col[b] = 1.0;
    for (const auto &g : c.gates) apply_gate_amp(col, c.n, g);
    for (uint64_t r = 0; r < d; r++) u[r * d + b] = col[r];
  }
  return u;
}

void conjugate_by_circuit(DensityMatrix &rho, const Circuit &c) {
  if (c.n != rho.n)
    throw DimensionError("circuit width does not match density matrix");
  uint64_t d = rho.dim();
  // columns: rho <- U rho
  std::vector<cplx> col(d);
  for (uint64_t cidx = 0; cidx < d; cidx++) {
    for (uint64_t r = 0; r < d; r++) col[r] = rho.m[r * d + cidx];
    for (const auto &g : c.gates) apply_gate_amp(col, c.n, g);
    for (uint64_t r = 0; r < d; r++) rho.m[r * d + cidx] = col[r];
  }
  // rows: rho <- rho U^dag, i.e. conj(U (conj-row))
  for (uint64_t ridx = 0; ridx < d; ridx++) {
    for (uint64_t cidx = 0; cidx < d; cidx++) col[cidx] = std::conj(rho.m[ridx * d + cidx]);
    for (const auto &g : c.gates) apply_gate_amp(col, c.n, g);
    for (uint64_t cidx = 0; cidx < d; cidx++) rho.m[ridx * d + cidx] = std::conj(col[cidx]);
  }
}

// --- fidelity and distance ---

double fidelity(const DenseState &psi, const DensityMatrix &rho) {
  if (psi.n != rho.n)
    throw DimensionError("fidelity of states with different qubit counts");
  uint64_t d = rho.dim();
  cplx f(0, 0);
  for (uint64_t r = 0; r < d; r++)
    for (uint64_t c = 0; c < d; c++) f += std::conj(psi.amp[r]) * rho.m[r * d + c] * psi.amp[c];
  double v = f.real();
  if (v < 0 && v > -1e-9) v = 0;
  if (v > 1 && v < 1 + 1e-9) v = 1;
  return v;
}

TwoNormReport two_norm_distance(const DensityMatrix &rho, const DensityMatrix &rho_tilde) {
  if (rho.n != rho_tilde.n)
    throw DimensionError("two-norm distance of states with different qubit counts");
  TwoNormReport rep;
  rep.purity_rho = rho.purity();
  rep.purity_rho_tilde = rho_tilde.purity();
  if (rep.purity_rho <= 0)
    throw ValidationError("two_norm_distance needs Pur(rho) > 0");
  uint64_t d = rho.dim();
  cplx cross(0, 0);
  for (uint64_t r = 0; r < d; r++)
    for (uint64_t c = 0; c < d; c++) cross += rho.m[r * d + c] * rho_tilde.m[c * d + r];
  rep.overlap_phi = cross.real() / rep.purity_rho;
  double inner = 1.0 + rep.purity_rho_tilde / rep.purity_rho - 2.0 * rep.overlap_phi;
  if (inner < 0 && inner > -1e-12) inner = 0;
  rep.distance = std::sqrt(rep.purity_rho) * std::sqrt(inner);
  return rep;
}

// --- channels ---

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &ch) {
  if (rho.n != ch.n)
    throw DimensionError("channel width does not match state");
  if (!ch.is_trace_preserving(1e-9))
    throw ValidationError("Kraus channel is not trace preserving");
  uint64_t d = rho.dim();
  DensityMatrix out(rho.n);
  out.m.assign(d * d, cplx(0, 0));
  for (const auto &a : ch.ops) {
    std::vector<cplx> ar = mat_mul(a, rho.m, d);
    std::vector<cplx> ad = mat_adjoint(a, d);
    std::vector<cplx> term = mat_mul(ar, ad, d);
    for (uint64_t i = 0; i < d * d; i++) out.m[i] += term[i];
  }
  return out;
}

KrausChannel identity_channel(uint32_t n) {
  uint64_t d = 1ull << n;
  KrausChannel ch;
  ch.n = n;
  std::vector<cplx> id(d * d, cplx(0, 0));
  for (uint64_t r = 0; r < d; r++) id[r * d + r] = 1.0;
  ch.ops.push_back(std::move(id));
  return ch;
}

KrausChannel unitary_channel(const std::vector<cplx> &u, uint32_t n) {
  KrausChannel ch;
  ch.n = n;
  ch.ops.push_back(u);
  return ch;
}

KrausChannel compose(const KrausChannel &after, const KrausChannel &before) {
  if (after.n != before.n)
    throw DimensionError("composed channels must act on the same qubits");
  uint64_t d = 1ull << after.n;
  KrausChannel out;
  out.n = after.n;
  for (const auto &a : after.ops)
    for (const auto &b : before.ops) out.ops.push_back(mat_mul(a, b, d));
  return out;
}

KrausChannel noise_model(const NoiseSpec &spec, uint32_t n) {
  uint64_t d = 1ull << n;
  switch (spec.kind) {
  case NoiseKind::None:
    return identity_channel(n);
  case NoiseKind::GlobalDepolarizing: {
    double p = spec.parameter;
    if (p < 0 || p > 1)
      throw ValidationError("depolarizing probability must be in [0,1]");
    // (1-p) rho + p I/d  ==  sqrt(1-p+p/d^2) rho + sum_{P != I} (sqrt(p)/d) P rho P
    KrausChannel ch;
    ch.n = n;
    std::vector<cplx> id(d * d, cplx(0, 0));
    for (uint64_t r = 0; r < d; r++) id[r * d + r] = std::sqrt(1.0 - p + p / double(d * d));
    ch.ops.push_back(std::move(id));
    if (p > 0) {
      double w = std::sqrt(p) / static_cast<double>(d);
      uint64_t npauli = 1ull << (2 * n);
      for (uint64_t i = 1; i < npauli; i++) {
        auto pm = pauli_dense_matrix(index_to_pauli(PauliIndex{i}, n));
        for (auto &e : pm) e *= w;
        ch.ops.push_back(std::move(pm));
      }
    }
    return ch;
  }
  case NoiseKind::LocalDepolarizing: {
    double p = spec.parameter;
    if (p < 0 || p > 1)
      throw ValidationError("depolarizing probability must be in [0,1]");
    if (n > 5)
      throw CapacityError("explicit local depolarizing Kraus list limited to 5 qubits");
    // tensor products of the one-qubit Kraus set
    KrausChannel ch;
    ch.n = n;
    double w0 = std::sqrt(1.0 - 3.0 * p / 4.0), w1 = std::sqrt(p / 4.0);
    uint64_t npauli = 1ull << (2 * n);
    for (uint64_t i = 0; i < npauli; i++) {
      PauliString pp = index_to_pauli(PauliIndex{i}, n);
      double w = 1.0;
      for (uint32_t q = 0; q < n; q++) {
        bool nonid = ((pp.x >> q) & 1) || ((pp.z >> q) & 1);
        w *= nonid ? w1 : w0;
      }
      if (w == 0.0) continue;
      auto pm = pauli_dense_matrix(pp);
      for (auto &e : pm) e *= w;
      ch.ops.push_back(std::move(pm));
    }
    return ch;
  }
  case NoiseKind::CoherentOverrotation: {
    // diag(1, e^{i theta}) on every qubit
    std::vector<cplx> u(d * d, cplx(0, 0));
    for (uint64_t b = 0; b < d; b++)
      u[b * d + b] = std::exp(kI * (spec.parameter * double(__builtin_popcountll(b))));
    return unitary_channel(u, n);
  }
  }
  throw ValidationError("unknown noise kind");
}

// --- expectations and sampling ---

double pauli_expectation(const DenseState &psi, const PauliString &p) {
  if (p.n != psi.n)
    throw DimensionError("Pauli width does not match state");
  if (!p.is_hermitian())
    throw ValidationError("expectation needs a Hermitian Pauli");
  // <psi|P|psi> with P|j> = i^(phase + |x&z|) (-1)^(z.j) |j^x>
  static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx lead = i_pow[(p.phase + detail::popcount64(p.x & p.z)) & 3];
  cplx acc(0, 0);
  uint64_t d = psi.dim();
  for (uint64_t j = 0; j < d; j++) {
    double sgn = parity(p.z & j) ? -1.0 : 1.0;
    acc += std::conj(psi.amp[j ^ p.x]) * (lead * sgn) * psi.amp[j];
  }
  return acc.real();
}

double pauli_expectation(const DensityMatrix &rho, const PauliString &p) {
  if (p.n != rho.n)
    throw DimensionError("Pauli width does not match state");
  if (!p.is_hermitian())
    throw ValidationError("expectation needs a Hermitian Pauli");
  static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx lead = i_pow[(p.phase + detail::popcount64(p.x & p.z)) & 3];
  cplx acc(0, 0);
  uint64_t d = rho.dim();
  for (uint64_t j = 0; j < d; j++) {
    double sgn = parity(p.z & j) ? -1.0 : 1.0;
    acc += (lead * sgn) * rho.m[j * d + (j ^ p.x)];
  }
  return acc.real();
}

std::vector<double> pauli_expectations_all(const DenseState &psi) {
  uint64_t count = 1ull << (2 * psi.n);
  std::vector<double> out(count);
  for (uint64_t i = 0; i < count; i++)
    out[i] = pauli_expectation(psi, index_to_pauli(PauliIndex{i}, psi.n));
  return out;
}

std::vector<double> pauli_expectations_all(const DensityMatrix &rho) {
  uint64_t count = 1ull << (2 * rho.n);
  std::vector<double> out(count);
  for (uint64_t i = 0; i < count; i++)
    out[i] = pauli_expectation(rho, index_to_pauli(PauliIndex{i}, rho.n));
  return out;
}

int one_shot_pauli(const DensityMatrix &rho, const PauliString &p, Rng &rng) {
  double e = pauli_expectation(rho, p);
  double p_plus = 0.5 * (1.0 + e);
  return rng.next_double() < p_plus ? +1 : -1;
}

uint64_t measure_computational(const DenseState &psi, Rng &rng) {
  double u = rng.next_double();
  double acc = 0;
  uint64_t d = psi.dim();
  for (uint64_t b = 0; b < d; b++) {
    acc += std::norm(psi.amp[b]);
    if (u < acc) return b;
  }
  return d - 1;
}

uint64_t measure_computational(const DensityMatrix &rho, Rng &rng) {
  double u = rng.next_double();
  double acc = 0;
  uint64_t d = rho.dim();
  for (uint64_t b = 0; b < d; b++) {
    acc += rho.m[b * d + b].real();
    if (u < acc) return b;
  }
  return d - 1;
}

std::pair<DenseState, int> random_pauli_eigenstate(const PauliString &p, Rng &rng) {
  if (!p.is_hermitian())
    throw ValidationError("eigenstates need a Hermitian Pauli");
  static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  DenseState psi(p.n);
  uint64_t d = psi.dim();
  uint64_t b = rng.next_below(d);
  cplx lead = i_pow[(p.phase + detail::popcount64(p.x & p.z)) & 3];
  cplx cb = lead * (parity(p.z & b) ? -1.0 : 1.0); // P|b> = cb |b^x>
  psi.amp.assign(d, cplx(0, 0));
  if (p.x == 0) {
    psi.amp[b] = 1.0;
    return {psi, cb.real() > 0 ? +1 : -1};
  }
  int lambda = rng.next_bit() ? +1 : -1;
  psi.amp[b] = double(lambda) * kSqrtHalf;
  psi.amp[b ^ p.x] = cb * kSqrtHalf;
  return {psi, lambda};
}

// --- linear algebra ---

std::vector<cplx> mat_mul(const std::vector<cplx> &a, const std::vector<cplx> &b, uint64_t d) {
  std::vector<cplx> out(d * d, cplx(0, 0));
  for (uint64_t r = 0; r < d; r++)
    for (uint64_t k = 0; k < d; k++) {
      cplx arc = a[r * d + k];
      if (arc == cplx(0, 0)) continue;
      const cplx *brow = &b[k * d];
      cplx *orow = &out[r * d];
      for (uint64_t c = 0; c < d; c++) orow[c] += arc * brow[c];
    }
  return out;
}

std::vector<cplx> mat_adjoint(const std::vector<cplx> &a, uint64_t d) {
  std::vector<cplx> out(d * d);
  for (uint64_t r = 0; r < d; r++)
    for (uint64_t c = 0; c < d; c++) out[c * d + r] = std::conj(a[r * d + c]);
  return out;
}

cplx mat_trace(const std::vector<cplx> &a, uint64_t d) {
  cplx t(0, 0);
  for (uint64_t r = 0; r < d; r++) t += a[r * d + r];
  return t;
}

void hermitian_eigen(const std::vector<cplx> &a_in, uint64_t d,
                     std::vector<double> &vals, std::vector<cplx> &vecs) {
  std::vector<cplx> a = a_in;
  vecs.assign(d * d, cplx(0, 0));
  for (uint64_t r = 0; r < d; r++) vecs[r * d + r] = 1.0;

  for (int sweep = 0; sweep < 100; sweep++) {
    double off = 0;
    for (uint64_t r = 0; r < d; r++)
      for (uint64_t c = r + 1; c < d; c++) off += std::norm(a[r * d + c]);
    if (off < 1e-26) break;
    for (uint64_t p = 0; p < d; p++) {
      for (uint64_t q = p + 1; q < d; q++) {
        cplx apq = a[p * d + q];
        if (std::abs(apq) < 1e-300) continue;
        double app = a[p * d + p].real(), aqq = a[q * d + q].real();
        // unitary 2x2 rotation zeroing a_pq
        double absa = std::abs(apq);
        cplx phase = apq / absa;
        double tau = (aqq - app) / (2.0 * absa);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double cth = 1.0 / std::sqrt(1.0 + t * t);
        double sth = t * cth;
        cplx s = sth * phase;
        // columns p,q of a and vecs: G = [[c, conj(s)], [-s, c]] hmm apply as
        // a <- G^dag a G with row/col updates
        for (uint64_t k = 0; k < d; k++) {
          cplx akp = a[k * d + p], akq = a[k * d + q];
          a[k * d + p] = cth * akp - std::conj(s) * akq;
          a[k * d + q] = s * akp + cth * akq;
        }
        for (uint64_t k = 0; k < d; k++) {
          cplx apk = a[p * d + k], aqk = a[q * d + k];
          a[p * d + k] = cth * apk - s * aqk;
          a[q * d + k] = std::conj(s) * apk + cth * aqk;
        }
        for (uint64_t k = 0; k < d; k++) {
          cplx vkp = vecs[k * d + p], vkq = vecs[k * d + q];
          vecs[k * d + p] = cth * vkp - std::conj(s) * vkq;
          vecs[k * d + q] = s * vkp + cth * vkq;
        }
      }
    }
  }
  vals.resize(d);
  for (uint64_t r = 0; r < d; r++) vals[r] = a[r * d + r].real();
}

double min_eigenvalue(const std::vector<cplx> &a, uint64_t d) {
  std::vector<double> vals;
  std::vector<cplx> vecs;
  hermitian_eigen(a, d, vals, vecs);
  return *std::min_element(vals.begin(), vals.end());
}

} // namespace qcert
