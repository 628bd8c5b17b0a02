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

#ifndef QCERT_CERTIFY_HPP
#define QCERT_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcert/circuit.hpp"
#include "qcert/dense.hpp"
#include "qcert/doped.hpp"
#include "qcert/magic.hpp"
#include "qcert/rng.hpp"

namespace qcert {

struct EstimationConfig {
  double epsilon = 0.1;
  double delta = 0.05;
  uint64_t master_seed = 1;
  uint32_t shots_per_pauli = 1; // c_P
  std::optional<uint64_t> k_override;
  std::optional<double> theta;     // truncation knob; default epsilon/(2 sqrt 2)
  std::optional<uint64_t> shadow_k; // snapshots per batch; default ceil(20/eps^2)
  std::optional<uint64_t> shadow_l; // median batches; default ceil(8 ln(2/delta))
  uint32_t workers = 0;             // 0 = resolve from env/hardware
  bool record_trials = true;

  void validate() const;
};

struct TrialRecord {
  uint64_t trial = 0;
  std::string sampled;      // observable / Clifford-snapshot descriptor
  double outcome = 0;       // one-shot value or measured string probability
  double term = 0;          // contribution to the estimator
};

struct EstimationReport {
  std::string protocol;
  double estimate = 0;
  double true_value = 0; // from the dense oracle
  uint64_t k = 0;        // sampled observables or snapshots
  uint64_t sample_count = 0; // N: state (or channel) preparations consumed
  uint64_t n_cl = 0;         // classical unit cost per snapshot
  uint64_t total_cost = 0;   // N x N_cl
  double protocol_lower_bound = 0; // Hoeffding-route sample-complexity bounds
  double protocol_upper_bound = 0;
  uint64_t master_seed = 0;
  std::vector<TrialRecord> trials;
};

struct SampleComplexityBounds {
  double lower = 0; // (2/eps^2) ln(2/delta) 2^{M_2}
  double upper = 0; // (64/eps^4) ln(2/delta) 2^{M_0}
};

SampleComplexityBounds pauli_sample_complexity_bounds(const DenseState &psi, double epsilon, double delta);

// Pauli fidelity estimation: importance-sample Xi_psi, one-shot measure the
// drawn Paulis on rho~, average X_P = outcome / tr(P psi). Default sample
// count is the Hoeffding k = 2 ln(2/delta) / (eps^2 m^2) with m the smallest
// |tr(P psi)| on the support.
EstimationReport pauli_dfe(const DenseState &psi, const DensityMatrix &rho_tilde,
                           const EstimationConfig &cfg);

// Mixed-state overlap Phi(rho, rho~) = tr(rho rho~)/Pur(rho) by the same
// importance sampling over Xi_rho.
EstimationReport pauli_dfe_mixed(const DensityMatrix &rho, const DensityMatrix &rho_tilde,
                                 const EstimationConfig &cfg);

// Truncated variant: coefficients below theta * sqrt(2^-M0) are zeroed and
// the renormalized psi' is sampled instead; bias at most eps/2 at the
// default theta, with k = 8 ln(2/delta) / (eps^2 m'^2).
EstimationReport pauli_dfe_truncated(const DenseState &psi, const DensityMatrix &rho_tilde,
                                     const EstimationConfig &cfg);

// Known complete commuting set of stabilizing observables: k is
// 2 ln(2/delta)/eps^2, independent of n.
EstimationReport generalized_dfe(const DenseState &psi, const DensityMatrix &rho_tilde,
                                 const std::vector<std::vector<cplx>> &observables,
                                 const EstimationConfig &cfg);

// Observable set {V o_I V^dag, V o_Z V^dag}^n for a product target
// phi^(x)n, with V phi-preparing on one qubit: 2^n commuting stabilizers.
std::vector<std::vector<cplx>> product_stabilizer_observables(const DenseState &single_qubit_state,
                                                              uint32_t n);

// Shadow fidelity estimation: per snapshot draw a uniform Clifford, rotate
// rho~, measure a computational string, and evaluate the exact outcome
// probability of the target circuit with the gadget sum. Median of l batch
// means of (d+1) p - 1. N_cl per snapshot is the gadget ledger cost.
EstimationReport shadow_fidelity(const Circuit &target, const DensityMatrix &rho_tilde,
                                 const EstimationConfig &cfg);

struct ProcessFidelity {
  double f_u = 0;   // entanglement fidelity
  double f_avg = 0; // average gate fidelity (Kraus form)
};

// Exact F_U = d^-4 sum_{mu nu} tr(P_mu U P_nu U^dag) tr(P_mu E(P_nu)).
ProcessFidelity entanglement_fidelity_exact(const std::vector<cplx> &u, uint32_t n,
                                            const KrausChannel &ch);

// Monte Carlo F_U: sample pairs from Xi_U, prepare a random P_nu eigenstate,
// one-shot measure P_mu after the channel.
EstimationReport process_fidelity_estimate(const std::vector<cplx> &u, uint32_t n,
                                           const KrausChannel &ch, const EstimationConfig &cfg);

// --- doped ensembles and scaling experiments ---

// C_t T C_{t-1} ... T C_0 with independent uniform Cliffords and uniformly
// random T qubits.
Circuit random_doped_circuit(uint32_t n, uint32_t t, Rng &rng);

double f_plus(double d);  // (3d^2 - 3d - 4) / (4(d^2 - 1))
double f_minus(double d); // (3d^2 + 3d - 4) / (4(d^2 - 1))

// Lower bound for the ensemble mean of 2^{M_2} over t-doped states:
// (d+3) / (4 + (d-1) f_+^t).
double doped_state_exp_m2_bound(uint32_t n, uint32_t t);

// Reference closed form for the doped-circuit ensemble average of
// tr(Q U^x4 Q U^dag x4), emitted as the paper_bound column of the process
// sweep. Known to disagree with the exactly computable t = 0 value (d^2);
// see README.
double doped_circuit_q4_closed_form(uint32_t n, uint32_t t);

// Per-circuit tr(Q U^x4 Q U^dag x4) = sum_{P,P'} tr^4(P U P' U^dag) / d^4.
double q4_overlap(const std::vector<cplx> &u, uint32_t n);

enum class ScalingKind { StateEnsemble, ProcessEnsemble };

struct ScalingRow {
  uint32_t t = 0;
  double mean = 0;
  double stderr_ = 0;
  double paper_bound = 0;
  double ratio = 0;
};

// State variant: sampled mean of 2^{M_2} per t against the bound above.
// Process variant: sampled mean of q4_overlap per t against the quoted
// closed form.
std::vector<ScalingRow> scaling_experiment(ScalingKind kind, uint32_t n,
                                           uint32_t t_min, uint32_t t_max, uint32_t samples,
                                           const EstimationConfig &cfg);

} // namespace qcert

#endif
