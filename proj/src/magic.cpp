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

#include "qcert/magic.hpp"

#include <cmath>

namespace qcert {

namespace {

// Xi support uses |tr(P rho)| > 1e-12 * dim, per the alpha = 0 convention.
double xi_support_threshold(double dim, double purity) {
  double tr_threshold = 1e-12 * dim;
  return tr_threshold * tr_threshold / (dim * purity);
}

MagicReport renyi_report(const std::vector<double> &probs, double alpha, double purity,
                         double support_threshold, double log2_dim) {
  if (alpha < 0)
    throw ValidationError("Renyi order must be >= 0");
  MagicReport rep;
  rep.alpha = alpha;
  rep.purity = purity;
  int64_t support = 0;
  for (double p : probs)
    if (p > support_threshold) support++;
  rep.support = support;
  double s_alpha = renyi_entropy(probs, alpha, support_threshold);
  double s2_rho = -std::log2(purity);
  rep.value = s_alpha + s2_rho - log2_dim;
  return rep;
}

} // namespace

double renyi_entropy(const std::vector<double> &probs, double alpha, double support_threshold) {
  if (alpha < 0)
    throw ValidationError("Renyi order must be >= 0");
  if (alpha == 0.0) {
    int64_t support = 0;
    for (double p : probs)
      if (p > support_threshold) support++;
    return std::log2(static_cast<double>(support));
  }
  if (alpha == 1.0) {
    double h = 0;
    for (double p : probs)
      if (p > 0) h -= p * std::log2(p);
    return h;
  }
  double s = 0;
  for (double p : probs)
    if (p > 0) s += std::pow(p, alpha);
  return std::log2(s) / (1.0 - alpha);
}

void PauliDistribution::validate(double tol) const {
  double sum = 0;
  for (double p : probs) {
    if (p < -1e-12)
      throw ValidationError("Xi entry below zero");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol)
    throw ValidationError("Xi does not sum to one");
}

namespace {

template <typename StateT>
PauliDistribution xi_from_expectations(const StateT &state, double purity) {
  PauliDistribution xi;
  xi.n = state.n;
  xi.purity = purity;
  std::vector<double> e = pauli_expectations_all(state);
  double d = static_cast<double>(1ull << state.n);
  xi.probs.resize(e.size());
  for (size_t i = 0; i < e.size(); i++) {
    double v = e[i] * e[i] / (d * purity);
    xi.probs[i] = v < 0 ? 0 : v;
  }
  return xi;
}

} // namespace

PauliDistribution xi_state(const DenseState &psi) { return xi_from_expectations(psi, 1.0); }

PauliDistribution xi_state(const DensityMatrix &rho) {
  double purity = rho.purity();
  if (purity <= 0)
    throw ValidationError("xi_state needs Pur(rho) > 0");
  return xi_from_expectations(rho, purity);
}

MagicReport stabilizer_renyi_entropy(const DenseState &psi, double alpha) {
  PauliDistribution xi = xi_state(psi);
  double d = static_cast<double>(1ull << psi.n);
  return renyi_report(xi.probs, alpha, 1.0, xi_support_threshold(d, 1.0), psi.n);
}

MagicReport stabilizer_renyi_entropy(const DensityMatrix &rho, double alpha) {
  PauliDistribution xi = xi_state(rho);
  double d = static_cast<double>(1ull << rho.n);
  return renyi_report(xi.probs, alpha, xi.purity, xi_support_threshold(d, xi.purity), rho.n);
}

double exp2_m2(const DenseState &psi) {
  std::vector<double> e = pauli_expectations_all(psi);
  double s4 = 0;
  for (double v : e) s4 += v * v * v * v;
  return static_cast<double>(1ull << psi.n) / s4;
}

double stabilizer_nullity(const DenseState &psi) {
  std::vector<double> e = pauli_expectations_all(psi);
  int64_t s = 0;
  for (double v : e)
    if (std::abs(std::abs(v) - 1.0) < 1e-9) s++;
  return static_cast<double>(psi.n) - std::log2(static_cast<double>(s));
}

DenseState choi_state(const std::vector<cplx> &u, uint32_t n) {
  if (2 * n > dense_limits().pure)
    throw CapacityError("Choi state exceeds the dense limit");
  uint64_t d = 1ull << n;
  DenseState psi(2 * n);
  psi.amp.assign(d * d, cplx(0, 0));
  double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (uint64_t i = 0; i < d; i++)       // identity-register value (low qubits)
    for (uint64_t j = 0; j < d; j++)     // U-register value (high qubits)
      psi.amp[i + (j << n)] = u[j * d + i] * w;
  return psi;
}

DenseState choi_state(const Circuit &c) { return choi_state(unitary_of_circuit(c), c.n); }

PairDistribution xi_unitary(const std::vector<cplx> &u, uint32_t n) {
  if (n > 5)
    throw CapacityError("xi_unitary limited to 5 qubits");
  uint64_t d = 1ull << n;
  uint64_t npauli = 1ull << (2 * n);
  PairDistribution xi;
  xi.n = n;
  std::vector<cplx> ud = mat_adjoint(u, d);
  double d4 = static_cast<double>(d) * d * d * d;
  double tr_threshold = 1e-12 * static_cast<double>(d) * d; // on |tr|/d vs Choi dim
  for (uint64_t b = 0; b < npauli; b++) {
    PauliString pb = index_to_pauli(PauliIndex{b}, n);
    std::vector<cplx> w = mat_mul(mat_mul(u, pauli_dense_matrix(pb), d), ud, d); // U P' U^dag
    for (uint64_t a = 0; a < npauli; a++) {
      PauliString pa = index_to_pauli(PauliIndex{a}, n);
      // tr(P_a W) with P_a|j> = c_j |j^x>
      static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      cplx lead = i_pow[(pa.phase + detail::popcount64(pa.x & pa.z)) & 3];
      cplx tr(0, 0);
      for (uint64_t j = 0; j < d; j++) {
        double sgn = detail::parity64(pa.z & j) ? -1.0 : 1.0;
        tr += (lead * sgn) * w[j * d + (j ^ pa.x)];
      }
      double t = tr.real(); // tr(P U P' U^dag) is real for Hermitian P, P'
      double val = t * t / d4;
      if (std::abs(t) / static_cast<double>(d) > tr_threshold) xi.support++;
      // genuine Clifford+T coefficients are dyadic; 1e-22 only drops noise
      if (val > 1e-22)
        xi.entries.push_back({a + (b << (2 * n)), val});
    }
  }
  return xi;
}

MagicReport choi_magic(const std::vector<cplx> &u, uint32_t n, double alpha) {
  if (alpha < 0)
    throw ValidationError("Renyi order must be >= 0");
  PairDistribution xi = xi_unitary(u, n);
  MagicReport rep;
  rep.alpha = alpha;
  rep.purity = 1.0;
  rep.support = xi.support;
  double s_alpha;
  if (alpha == 0.0) {
    s_alpha = std::log2(static_cast<double>(xi.support));
  } else if (alpha == 1.0) {
    s_alpha = 0;
    for (const auto &[idx, p] : xi.entries)
      if (p > 0) s_alpha -= p * std::log2(p);
  } else {
    double s = 0;
    for (const auto &[idx, p] : xi.entries) s += std::pow(p, alpha);
    s_alpha = std::log2(s) / (1.0 - alpha);
  }
  rep.value = s_alpha - 2.0 * static_cast<double>(n);
  return rep;
}

double otoc_4alpha(const std::vector<cplx> &u, uint32_t n, uint32_t alpha) {
  if (n > 2)
    throw CapacityError("brute-force OTOC limited to 2 qubits");
  if (alpha < 2 || alpha > 3)
    throw ValidationError("OTOC order alpha must be 2 or 3");
  uint64_t d = 1ull << n;
  uint64_t npauli = 1ull << (2 * n);
  std::vector<cplx> ud = mat_adjoint(u, d);

  std::vector<std::vector<cplx>> pauli_mats(npauli);
  for (uint64_t i = 0; i < npauli; i++)
    pauli_mats[i] = pauli_dense_matrix(index_to_pauli(PauliIndex{i}, n));

  // The trailing P_{2a} cancels inside the trace, so 2*alpha - 1 Paulis are
  // averaged explicitly: factors B P_0 P_1, B P_1 P_2, ..., B P_{2a-1}.
  uint32_t navg = 2 * alpha - 1;
  double total = 0;
  std::vector<uint64_t> tup(navg, 0);
  for (uint64_t a = 0; a < npauli; a++) {
    std::vector<cplx> upu = mat_mul(mat_mul(u, pauli_mats[a], d), ud, d);
    for (uint64_t b = 0; b < npauli; b++) {
      std::vector<cplx> bmat = mat_mul(upu, pauli_mats[b], d); // B = U P U^dag P'
      double pair_sum = 0;
      std::fill(tup.begin(), tup.end(), 0);
      for (;;) {
        // product of factors B P_{i-1} P_i, i = 1..2a, with P_0 = 1 and the
        // P_2a pair cancelled under the trace
        std::vector<cplx> m = mat_mul(bmat, pauli_mats[tup[0]], d);
        for (uint32_t i = 1; i < navg; i++) {
          m = mat_mul(m, bmat, d);
          m = mat_mul(m, pauli_mats[tup[i - 1]], d);
          m = mat_mul(m, pauli_mats[tup[i]], d);
        }
        m = mat_mul(m, bmat, d);
        m = mat_mul(m, pauli_mats[tup[navg - 1]], d);
        pair_sum += mat_trace(m, d).real();
        uint32_t pos = 0;
        while (pos < navg && ++tup[pos] == npauli) tup[pos++] = 0;
        if (pos == navg) break;
      }
      double norm = std::pow(static_cast<double>(d) * d, static_cast<double>(navg));
      pair_sum /= norm;                        // the <.> average
      total += pair_sum / static_cast<double>(d); // the 1/d in otoc
    }
  }
  return total / static_cast<double>(d * d); // OTOC = d^-2 sum_{P,P'}
}

double unitary_stabilizer_nullity(const std::vector<cplx> &u, uint32_t n) {
  if (n > 5)
    throw CapacityError("unitary nullity limited to 5 qubits");
  uint64_t d = 1ull << n;
  uint64_t npauli = 1ull << (2 * n);
  std::vector<cplx> ud = mat_adjoint(u, d);
  int64_t s = 0;
  for (uint64_t b = 0; b < npauli; b++) {
    PauliString pb = index_to_pauli(PauliIndex{b}, n);
    std::vector<cplx> w = mat_mul(mat_mul(u, pauli_dense_matrix(pb), d), ud, d);
    for (uint64_t a = 0; a < npauli; a++) {
      PauliString pa = index_to_pauli(PauliIndex{a}, n);
      static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      cplx lead = i_pow[(pa.phase + detail::popcount64(pa.x & pa.z)) & 3];
      cplx tr(0, 0);
      for (uint64_t j = 0; j < d; j++) {
        double sgn = detail::parity64(pa.z & j) ? -1.0 : 1.0;
        tr += (lead * sgn) * w[j * d + (j ^ pa.x)];
      }
      if (std::abs(std::abs(tr.real()) / static_cast<double>(d) - 1.0) < 1e-9) s++;
    }
  }
  return 2.0 * static_cast<double>(n) - std::log2(static_cast<double>(s));
}

} // namespace qcert
