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

#ifndef QCERT_DENSE_HPP
#define QCERT_DENSE_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "qcert/circuit.hpp"
#include "qcert/pauli.hpp"
#include "qcert/rng.hpp"

namespace qcert {

using cplx = std::complex<double>;

struct DenseLimits {
  uint32_t pure = 12;
  uint32_t mixed = 7;
};

DenseLimits &dense_limits(); // process-wide, adjustable via CLI

// Exact statevector on n qubits, amplitude of |b> at index b (qubit 0 is the
// least significant bit).
struct DenseState {
  uint32_t n = 0;
  std::vector<cplx> amp;

  DenseState() = default;
  explicit DenseState(uint32_t n_qubits, uint64_t basis = 0);

  uint64_t dim() const { return 1ull << n; }
  double norm2() const;
};

struct DensityMatrix {
  uint32_t n = 0;
  std::vector<cplx> m; // row-major d x d

  DensityMatrix() = default;
  explicit DensityMatrix(uint32_t n_qubits); // |0..0><0..0|
  static DensityMatrix from_pure(const DenseState &psi);
  static DensityMatrix maximally_mixed(uint32_t n_qubits);

  uint64_t dim() const { return 1ull << n; }
  cplx &at(uint64_t r, uint64_t c) { return m[r * dim() + c]; }
  const cplx &at(uint64_t r, uint64_t c) const { return m[r * dim() + c]; }
  double trace_real() const;
  double purity() const;
};

struct KrausChannel {
  uint32_t n = 0;
  std::vector<std::vector<cplx>> ops; // each d x d row-major

  // sum_a A_a^dag A_a = 1 within tol
  bool is_trace_preserving(double tol = 1e-9) const;
};

// --- gates and circuits ---

void apply_gate(DenseState &psi, const Gate &g);
void apply_circuit(DenseState &psi, const Circuit &c);

// Exact final state of a circuit on an input basis string.
DenseState simulate(const Circuit &c, uint64_t input_basis = 0);

// Dense unitary of a circuit (d x d row-major).
std::vector<cplx> unitary_of_circuit(const Circuit &c);

void conjugate_by_circuit(DensityMatrix &rho, const Circuit &c); // rho -> C rho C^dag

// --- fidelity and distance ---

double fidelity(const DenseState &psi, const DensityMatrix &rho);

struct TwoNormReport {
  double distance = 0;
  double purity_rho = 0;
  double purity_rho_tilde = 0;
  double overlap_phi = 0; // tr(rho rho~) / Pur(rho)
};
TwoNormReport two_norm_distance(const DensityMatrix &rho, const DensityMatrix &rho_tilde);

// --- channels ---

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &ch);

enum class NoiseKind { GlobalDepolarizing, LocalDepolarizing, CoherentOverrotation, None };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double parameter = 0; // probability p or rotation angle
};

KrausChannel noise_model(const NoiseSpec &spec, uint32_t n);
KrausChannel identity_channel(uint32_t n);
KrausChannel unitary_channel(const std::vector<cplx> &u, uint32_t n);
KrausChannel compose(const KrausChannel &after, const KrausChannel &before);

// --- expectations and sampling ---

double pauli_expectation(const DenseState &psi, const PauliString &p);
double pauli_expectation(const DensityMatrix &rho, const PauliString &p);

// Entry i = tr(P_i rho) in PauliIndex order; entry 0 is 1.
std::vector<double> pauli_expectations_all(const DenseState &psi);
std::vector<double> pauli_expectations_all(const DensityMatrix &rho);

// One-shot +-1 measurement of a Hermitian Pauli: +1 with prob (1+tr(P rho))/2.
int one_shot_pauli(const DensityMatrix &rho, const PauliString &p, Rng &rng);

uint64_t measure_computational(const DenseState &psi, Rng &rng);
uint64_t measure_computational(const DensityMatrix &rho, Rng &rng);

// Random +-1 eigenstate of a Hermitian Pauli together with its eigenvalue;
// uniform over an orthonormal eigenbasis.
std::pair<DenseState, int> random_pauli_eigenstate(const PauliString &p, Rng &rng);

// --- small dense linear algebra (row-major) ---

std::vector<cplx> mat_mul(const std::vector<cplx> &a, const std::vector<cplx> &b, uint64_t d);
std::vector<cplx> mat_adjoint(const std::vector<cplx> &a, uint64_t d);
cplx mat_trace(const std::vector<cplx> &a, uint64_t d);

// Hermitian eigendecomposition by cyclic Jacobi: a = V diag(vals) V^dag.
void hermitian_eigen(const std::vector<cplx> &a, uint64_t d,
                     std::vector<double> &vals, std::vector<cplx> &vecs);

// Smallest eigenvalue of a Hermitian matrix (PSD check helper).
double min_eigenvalue(const std::vector<cplx> &a, uint64_t d);

} // namespace qcert

#endif
