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

#ifndef QCERT_MAGIC_HPP
#define QCERT_MAGIC_HPP

#include <cstdint>
#include <vector>

#include "qcert/circuit.hpp"
#include "qcert/dense.hpp"

namespace qcert {

// Probability vector over PauliIndex: entry i = tr^2(P_i rho) / (d Pur(rho)).
struct PauliDistribution {
  uint32_t n = 0;
  std::vector<double> probs;
  double purity = 1.0;

  void validate(double tol = 1e-9) const;
};

// Sparse distribution over Pauli pairs (P, P'), entries above threshold only.
// pair_index = index(P) + 4^n * index(P'), value = tr^2(P U P' U^dag)/d^4.
struct PairDistribution {
  uint32_t n = 0;
  std::vector<std::pair<uint64_t, double>> entries;
  int64_t support = 0;
};

struct MagicReport {
  double alpha = 0;
  double value = 0;   // M_alpha in bits
  int64_t support = 0; // |support(Xi)| (meaningful for alpha = 0)
  double purity = 1;
};

PauliDistribution xi_state(const DenseState &psi);
PauliDistribution xi_state(const DensityMatrix &rho);

// M_alpha = S_alpha(Xi) + S_2(rho) - log2 d, in bits. alpha = 1 is the
// Shannon limit; alpha = 0 counts support with threshold |tr(P rho)| >
// 1e-12 * d.
MagicReport stabilizer_renyi_entropy(const DenseState &psi, double alpha);
MagicReport stabilizer_renyi_entropy(const DensityMatrix &rho, double alpha);

// 2^{M_2} without logs: d / sum_P tr^4(P psi), the quantity whose ensemble
// mean the scaling experiments track.
double exp2_m2(const DenseState &psi);

// nu = log2 d - log2 |{P : |tr(P psi)| = 1}| (tolerance 1e-9).
double stabilizer_nullity(const DenseState &psi);

// |U> = (1 x U)|I>, a 2n-qubit state; the identity register is the low half.
DenseState choi_state(const std::vector<cplx> &u, uint32_t n);
DenseState choi_state(const Circuit &c);

PairDistribution xi_unitary(const std::vector<cplx> &u, uint32_t n);

// Pair-distribution route: M_alpha(|U>) = S_alpha(Xi_U) - 2 log2 d.
MagicReport choi_magic(const std::vector<cplx> &u, uint32_t n, double alpha);

// 4*alpha-point out-of-time-order correlator by explicit Pauli-tuple
// averaging (alpha in {2,3}; cost (d^2)^(2*alpha-1) matrix products per
// (P,P') pair, so keep n <= 2). Satisfies
//   M_alpha(|U>) = log2(OTOC_4a(U)) / (1 - alpha).
double otoc_4alpha(const std::vector<cplx> &u, uint32_t n, uint32_t alpha);

// nu(U) = 2 log2 d - log2 |{(P1,P2) : |tr(P1 U P2 U^dag)|/d = 1}|.
double unitary_stabilizer_nullity(const std::vector<cplx> &u, uint32_t n);

// Renyi entropy of a probability vector in bits (support threshold applies
// to alpha = 0; 0 log 0 = 0 at alpha = 1).
double renyi_entropy(const std::vector<double> &probs, double alpha,
                     double support_threshold = 1e-24);

} // namespace qcert

#endif
