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

#include "qcert/certify.hpp"

#include <algorithm>
#include <cmath>

#include "qcert/parallel.hpp"
#include "qcert/tableau.hpp"

namespace qcert {

namespace {

uint64_t hoeffding_k(double numerator, double epsilon, double delta, double m_squared) {
  double k = numerator * std::log(2.0 / delta) / (epsilon * epsilon * m_squared);
  return static_cast<uint64_t>(std::ceil(k));
}

// Support-restricted sampling table over Xi built from Pauli expectations.
struct XiSampler {
  std::vector<uint64_t> indices; // PauliIndex values on the support
  std::vector<double> expectation; // tr(P psi) per support entry
  std::vector<double> cumulative;  // unnormalized Xi weights
  double m = 0;                    // min |expectation| on the support

  static XiSampler build(const std::vector<double> &e, uint32_t n) {
    XiSampler s;
    double threshold = 1e-12 * static_cast<double>(1ull << n);
    s.m = 2.0;
    double acc = 0;
    for (uint64_t i = 0; i < e.size(); i++) {
      if (std::abs(e[i]) <= threshold) continue;
      s.indices.push_back(i);
      s.expectation.push_back(e[i]);
      acc += e[i] * e[i];
      s.cumulative.push_back(acc);
      s.m = std::min(s.m, std::abs(e[i]));
    }
    return s;
  }
};

EstimationReport run_pauli_sampling(const std::string &protocol, const XiSampler &sampler,
                                    const DensityMatrix &rho_tilde, uint64_t k,
                                    const EstimationConfig &cfg, double denominator_scale) {
  EstimationReport rep;
  rep.protocol = protocol;
  rep.k = k;
  rep.master_seed = cfg.master_seed;
  uint32_t n = rho_tilde.n;
  uint32_t shots = cfg.shots_per_pauli;

  std::vector<double> terms(k);
  std::vector<TrialRecord> trials(cfg.record_trials ? k : 0);
  parallel_for_index(k, cfg.workers, [&](uint64_t i) {
    Rng rng = Rng::stream(cfg.master_seed, i);
    size_t slot = rng.next_discrete(sampler.cumulative);
    PauliString p = index_to_pauli(PauliIndex{sampler.indices[slot]}, n);
    double sum = 0;
    for (uint32_t c = 0; c < shots; c++) sum += one_shot_pauli(rho_tilde, p, rng);
    double denom = sampler.expectation[slot] * denominator_scale;
    double term = (sum / shots) / denom;
    terms[i] = term;
    if (cfg.record_trials) {
      trials[i] = TrialRecord{i, to_text(p), sum / shots, term};
    }
  });

  double total = 0;
  for (double t : terms) total += t; // index order: worker-count independent
  rep.estimate = total / static_cast<double>(k);
  rep.sample_count = k * shots;
  rep.n_cl = 1;
  rep.total_cost = rep.sample_count * rep.n_cl;
  rep.trials = std::move(trials);
  return rep;
}

} // namespace

void EstimationConfig::validate() const {
  if (!(epsilon > 0 && epsilon < 1))
    throw ValidationError("epsilon must be in (0,1)");
  if (!(delta > 0 && delta < 1))
    throw ValidationError("delta must be in (0,1)");
  if (shots_per_pauli == 0)
    throw ValidationError("shots_per_pauli must be positive");
}

SampleComplexityBounds pauli_sample_complexity_bounds(const DenseState &psi, double epsilon, double delta) {
  if (!(epsilon > 0 && epsilon < 1) || !(delta > 0 && delta < 1))
    throw ValidationError("epsilon and delta must be in (0,1)");
  SampleComplexityBounds b;
  double m2 = stabilizer_renyi_entropy(psi, 2.0).value;
  double m0 = stabilizer_renyi_entropy(psi, 0.0).value;
  double lg = std::log(2.0 / delta);
  b.lower = 2.0 / (epsilon * epsilon) * lg * std::exp2(m2);
  b.upper = 64.0 / std::pow(epsilon, 4) * lg * std::exp2(m0);
  return b;
}

EstimationReport pauli_dfe(const DenseState &psi, const DensityMatrix &rho_tilde,
                           const EstimationConfig &cfg) {
  cfg.validate();
  if (psi.n != rho_tilde.n)
    throw DimensionError("target and prepared state sizes differ");
  XiSampler sampler = XiSampler::build(pauli_expectations_all(psi), psi.n);
  uint64_t k = cfg.k_override
                   ? *cfg.k_override
                   : hoeffding_k(2.0, cfg.epsilon, cfg.delta, sampler.m * sampler.m);
  EstimationReport rep = run_pauli_sampling("pauli_dfe", sampler, rho_tilde, k, cfg, 1.0);
  rep.true_value = fidelity(psi, rho_tilde);
  SampleComplexityBounds b = pauli_sample_complexity_bounds(psi, cfg.epsilon, cfg.delta);
  rep.protocol_lower_bound = b.lower;
  rep.protocol_upper_bound = b.upper;
  return rep;
}

EstimationReport pauli_dfe_mixed(const DensityMatrix &rho, const DensityMatrix &rho_tilde,
                                 const EstimationConfig &cfg) {
  cfg.validate();
  if (rho.n != rho_tilde.n)
    throw DimensionError("target and prepared state sizes differ");
  double purity = rho.purity();
  if (purity <= 0)
    throw ValidationError("pauli_dfe_mixed needs Pur(rho) > 0");
  XiSampler sampler = XiSampler::build(pauli_expectations_all(rho), rho.n);
  uint64_t k = cfg.k_override
                   ? *cfg.k_override
                   : hoeffding_k(2.0, cfg.epsilon, cfg.delta, sampler.m * sampler.m);
  EstimationReport rep = run_pauli_sampling("pauli_dfe_mixed", sampler, rho_tilde, k, cfg, 1.0);
  rep.true_value = two_norm_distance(rho, rho_tilde).overlap_phi;
  double lg = std::log(2.0 / cfg.delta);
  rep.protocol_lower_bound = 2.0 / (cfg.epsilon * cfg.epsilon) * lg *
                             std::exp2(stabilizer_renyi_entropy(rho, 2.0).value);
  rep.protocol_upper_bound = 64.0 / std::pow(cfg.epsilon, 4) * lg *
                             std::exp2(stabilizer_renyi_entropy(rho, 0.0).value);
  return rep;
}

EstimationReport pauli_dfe_truncated(const DenseState &psi, const DensityMatrix &rho_tilde,
                                     const EstimationConfig &cfg) {
  cfg.validate();
  if (psi.n != rho_tilde.n)
    throw DimensionError("target and prepared state sizes differ");
  double m0 = stabilizer_renyi_entropy(psi, 0.0).value;
  double theta = cfg.theta.value_or(cfg.epsilon / (2.0 * std::sqrt(2.0)));
  double cut = theta * std::sqrt(std::exp2(-m0));

  std::vector<double> e = pauli_expectations_all(psi);
  double d = static_cast<double>(1ull << psi.n);
  double kept_weight = 0; // (1/d) sum_Q tr^2 = ||psi_cut||_2^2
  for (double v : e)
    if (std::abs(v) >= cut) kept_weight += v * v / d;
  if (kept_weight <= 0)
    throw ValidationError("truncation threshold removed the entire support (theta too large)");
  double norm = std::sqrt(kept_weight);

  std::vector<double> e_cut(e.size(), 0.0);
  for (size_t i = 0; i < e.size(); i++)
    if (std::abs(e[i]) >= cut) e_cut[i] = e[i];
  XiSampler sampler = XiSampler::build(e_cut, psi.n);

  double m_prime = sampler.m / norm; // min |tr(P psi')| over the kept set
  uint64_t k = cfg.k_override
                   ? *cfg.k_override
                   : hoeffding_k(8.0, cfg.epsilon, cfg.delta, m_prime * m_prime);
  // X'_P divides by tr(P psi') = tr(P psi)/norm
  EstimationReport rep =
      run_pauli_sampling("pauli_dfe_truncated", sampler, rho_tilde, k, cfg, 1.0 / norm);
  rep.true_value = fidelity(psi, rho_tilde);
  SampleComplexityBounds b = pauli_sample_complexity_bounds(psi, cfg.epsilon, cfg.delta);
  rep.protocol_lower_bound = b.lower;
  rep.protocol_upper_bound = b.upper;
  return rep;
}

std::vector<std::vector<cplx>> product_stabilizer_observables(const DenseState &single_qubit_state,
                                                              uint32_t n) {
  if (single_qubit_state.n != 1)
    throw ValidationError("product observables need a one-qubit state");
  // V|0> = |phi>; stabilizers are products of {1, V Z V^dag}.
  cplx a = single_qubit_state.amp[0], b = single_qubit_state.amp[1];
  std::vector<cplx> oz = {
      std::norm(a) - std::norm(b), 2.0 * a * std::conj(b),
      2.0 * std::conj(a) * b, std::norm(b) - std::norm(a)};
  uint64_t d = 1ull << n;
  std::vector<std::vector<cplx>> obs;
  for (uint64_t mask = 0; mask < d; mask++) {
    std::vector<cplx> m(d * d, cplx(0, 0));
    for (uint64_t r = 0; r < d; r++)
      for (uint64_t c = 0; c < d; c++) {
        cplx v(1, 0);
        for (uint32_t q = 0; q < n; q++) {
          uint64_t rq = (r >> q) & 1, cq = (c >> q) & 1;
          if ((mask >> q) & 1)
            v *= oz[rq * 2 + cq];
          else if (rq != cq)
            v = 0;
        }
        m[r * d + c] = v;
      }
    obs.push_back(std::move(m));
  }
  return obs;
}

EstimationReport generalized_dfe(const DenseState &psi, const DensityMatrix &rho_tilde,
                                 const std::vector<std::vector<cplx>> &observables,
                                 const EstimationConfig &cfg) {
  cfg.validate();
  if (psi.n != rho_tilde.n)
    throw DimensionError("target and prepared state sizes differ");
  uint64_t d = psi.dim();
  if (observables.size() != d)
    throw ValidationError("need a complete set of d stabilizing observables");

  // commutation check
  for (size_t i = 0; i < observables.size(); i++) {
    for (size_t j = i + 1; j < observables.size(); j++) {
      std::vector<cplx> ab = mat_mul(observables[i], observables[j], d);
      std::vector<cplx> ba = mat_mul(observables[j], observables[i], d);
      for (uint64_t e = 0; e < d * d; e++)
        if (std::abs(ab[e] - ba[e]) > 1e-9)
          throw ValidationError("observables " + std::to_string(i) + " and " + std::to_string(j) +
                                " do not commute");
    }
  }
  // stabilizing check: O_i psi = +-psi
  std::vector<int> signs(d);
  for (size_t i = 0; i < observables.size(); i++) {
    cplx val(0, 0);
    for (uint64_t r = 0; r < d; r++) {
      cplx acc(0, 0);
      for (uint64_t c = 0; c < d; c++) acc += observables[i][r * d + c] * psi.amp[c];
      val += std::conj(psi.amp[r]) * acc;
    }
    double ev = val.real();
    if (std::abs(std::abs(ev) - 1.0) > 1e-9)
      throw ValidationError("observable " + std::to_string(i) + " does not stabilize the target");
    signs[i] = ev > 0 ? +1 : -1;
  }

  // eigendecompositions once; sampling is uniform over the d stabilizers
  std::vector<std::vector<double>> vals(d);
  std::vector<std::vector<cplx>> vecs(d);
  for (uint64_t i = 0; i < d; i++) hermitian_eigen(observables[i], d, vals[i], vecs[i]);

  uint64_t k = cfg.k_override ? *cfg.k_override
                              : hoeffding_k(2.0, cfg.epsilon, cfg.delta, 1.0);
  EstimationReport rep;
  rep.protocol = "generalized_dfe";
  rep.k = k;
  rep.master_seed = cfg.master_seed;
  std::vector<double> terms(k);
  std::vector<TrialRecord> trials(cfg.record_trials ? k : 0);
  parallel_for_index(k, cfg.workers, [&](uint64_t t) {
    Rng rng = Rng::stream(cfg.master_seed, t);
    uint64_t i = rng.next_below(d);
    // Born probabilities of the eigenvectors on rho~
    double u = rng.next_double();
    double acc = 0;
    uint64_t pick = d - 1;
    for (uint64_t v = 0; v < d; v++) {
      cplx p(0, 0);
      for (uint64_t r = 0; r < d; r++)
        for (uint64_t c = 0; c < d; c++)
          p += std::conj(vecs[i][r * d + v]) * rho_tilde.m[r * d + c] * vecs[i][c * d + v];
      acc += p.real();
      if (u < acc) {
        pick = v;
        break;
      }
    }
    double outcome = vals[i][pick];
    terms[t] = outcome / signs[i];
    if (cfg.record_trials) trials[t] = TrialRecord{t, "O" + std::to_string(i), outcome, terms[t]};
  });
  double total = 0;
  for (double v : terms) total += v;
  rep.estimate = total / static_cast<double>(k);
  rep.true_value = fidelity(psi, rho_tilde);
  rep.sample_count = k;
  rep.n_cl = 1;
  rep.total_cost = k;
  rep.trials = std::move(trials);
  double lg = std::log(2.0 / cfg.delta);
  rep.protocol_lower_bound = 2.0 / (cfg.epsilon * cfg.epsilon) * lg;
  rep.protocol_upper_bound = rep.protocol_lower_bound;
  return rep;
}

EstimationReport shadow_fidelity(const Circuit &target, const DensityMatrix &rho_tilde,
                                 const EstimationConfig &cfg) {
  cfg.validate();
  if (target.n != rho_tilde.n)
    throw DimensionError("target circuit and prepared state sizes differ");
  uint32_t n = target.n;
  double dim = static_cast<double>(1ull << n);
  uint64_t k = cfg.shadow_k.value_or(
      static_cast<uint64_t>(std::ceil(20.0 / (cfg.epsilon * cfg.epsilon))));
  uint64_t l = cfg.shadow_l.value_or(
      static_cast<uint64_t>(std::ceil(8.0 * std::log(2.0 / cfg.delta))));
  if (k == 0 || l == 0)
    throw ValidationError("shadow batch sizes must be positive");
  uint64_t snapshots = k * l;

  EstimationReport rep;
  rep.protocol = "shadow_fidelity";
  rep.k = snapshots;
  rep.master_seed = cfg.master_seed;

  std::vector<double> terms(snapshots);
  std::vector<TrialRecord> trials(cfg.record_trials ? snapshots : 0);
  uint64_t ledger_n_cl = 0;
  {
    // cost model per snapshot, independent of the sampled Clifford
    CostLedger probe;
    probe.charge(1ull << target.t_count(), n + target.t_count());
    ledger_n_cl = probe.n_cl;
  }
  parallel_for_index(snapshots, cfg.workers, [&](uint64_t i) {
    Rng rng = Rng::stream(cfg.master_seed, i);
    Circuit c = random_clifford(n, rng);
    DensityMatrix rotated = rho_tilde;
    conjugate_by_circuit(rotated, c);
    uint64_t x = measure_computational(rotated, rng);
    OutcomeProbability p = outcome_probability_with_clifford(target, c, x, 1);
    double term = (dim + 1.0) * p.probability - 1.0;
    terms[i] = term;
    if (cfg.record_trials)
      trials[i] = TrialRecord{i, "C" + std::to_string(i) + ":x=" + format_bit_string(x, n),
                              p.probability, term};
  });

  std::vector<double> batch_means(l);
  for (uint64_t s = 0; s < l; s++) {
    double sum = 0;
    for (uint64_t j = 0; j < k; j++) sum += terms[s * k + j];
    batch_means[s] = sum / static_cast<double>(k);
  }
  std::vector<double> sorted = batch_means;
  std::sort(sorted.begin(), sorted.end());
  double median = (l % 2 == 1) ? sorted[l / 2] : 0.5 * (sorted[l / 2 - 1] + sorted[l / 2]);

  rep.estimate = median;
  rep.true_value = fidelity(simulate(target), rho_tilde);
  rep.sample_count = snapshots;
  rep.n_cl = ledger_n_cl;
  rep.total_cost = rep.sample_count * rep.n_cl;
  rep.trials = std::move(trials);
  return rep;
}

ProcessFidelity entanglement_fidelity_exact(const std::vector<cplx> &u, uint32_t n,
                                            const KrausChannel &ch) {
  if (n > 4)
    throw CapacityError("exact entanglement fidelity limited to 4 qubits");
  if (ch.n != n)
    throw DimensionError("channel width does not match unitary");
  uint64_t d = 1ull << n;
  uint64_t npauli = 1ull << (2 * n);
  std::vector<cplx> ud = mat_adjoint(u, d);

  auto pauli_coeff = [&](const PauliString &p, const std::vector<cplx> &w) {
    static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx lead = i_pow[(p.phase + detail::popcount64(p.x & p.z)) & 3];
    cplx tr(0, 0);
    for (uint64_t j = 0; j < d; j++) {
      double sgn = detail::parity64(p.z & j) ? -1.0 : 1.0;
      tr += (lead * sgn) * w[j * d + (j ^ p.x)];
    }
    return tr.real();
  };

  double f_u = 0;
  for (uint64_t nu = 0; nu < npauli; nu++) {
    PauliString pnu = index_to_pauli(PauliIndex{nu}, n);
    std::vector<cplx> pd = pauli_dense_matrix(pnu);
    std::vector<cplx> upu = mat_mul(mat_mul(u, pd, d), ud, d);
    // E(P_nu)
    std::vector<cplx> ep(d * d, cplx(0, 0));
    for (const auto &a : ch.ops) {
      std::vector<cplx> t = mat_mul(mat_mul(a, pd, d), mat_adjoint(a, d), d);
      for (uint64_t e = 0; e < d * d; e++) ep[e] += t[e];
    }
    for (uint64_t mu = 0; mu < npauli; mu++) {
      PauliString pmu = index_to_pauli(PauliIndex{mu}, n);
      f_u += pauli_coeff(pmu, upu) * pauli_coeff(pmu, ep);
    }
  }
  double d4 = static_cast<double>(d) * d * d * d;
  ProcessFidelity out;
  out.f_u = f_u / d4;
  // F_avg = [d^-1 sum_a |tr(U^dag A_a)|^2 + 1] / (d + 1)
  double s = 0;
  for (const auto &a : ch.ops) {
    cplx t(0, 0);
    for (uint64_t r = 0; r < d; r++)
      for (uint64_t c = 0; c < d; c++) t += std::conj(u[c * d + r]) * a[c * d + r];
    s += std::norm(t);
  }
  out.f_avg = (s / static_cast<double>(d) + 1.0) / (static_cast<double>(d) + 1.0);
  return out;
}

EstimationReport process_fidelity_estimate(const std::vector<cplx> &u, uint32_t n,
                                           const KrausChannel &ch, const EstimationConfig &cfg) {
  cfg.validate();
  if (n > 4)
    throw CapacityError("process estimation limited to 4 qubits");
  uint64_t d = 1ull << n;
  uint64_t npauli = 1ull << (2 * n);
  std::vector<cplx> ud = mat_adjoint(u, d);

  // signed coefficients tr(P_mu U P_nu U^dag)/d for all pairs
  std::vector<double> coeff(npauli * npauli);
  for (uint64_t nu = 0; nu < npauli; nu++) {
    PauliString pnu = index_to_pauli(PauliIndex{nu}, n);
    std::vector<cplx> upu = mat_mul(mat_mul(u, pauli_dense_matrix(pnu), d), ud, d);
    for (uint64_t mu = 0; mu < npauli; mu++) {
      PauliString pmu = index_to_pauli(PauliIndex{mu}, n);
      static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      cplx lead = i_pow[(pmu.phase + detail::popcount64(pmu.x & pmu.z)) & 3];
      cplx tr(0, 0);
      for (uint64_t j = 0; j < d; j++) {
        double sgn = detail::parity64(pmu.z & j) ? -1.0 : 1.0;
        tr += (lead * sgn) * upu[j * d + (j ^ pmu.x)];
      }
      coeff[mu * npauli + nu] = tr.real() / static_cast<double>(d);
    }
  }

  // support of Xi_U with cumulative weights
  std::vector<uint64_t> pair_mu, pair_nu;
  std::vector<double> cumulative;
  double acc = 0, m_u = 2.0;
  for (uint64_t mu = 0; mu < npauli; mu++)
    for (uint64_t nu = 0; nu < npauli; nu++) {
      double c = coeff[mu * npauli + nu];
      if (std::abs(c) <= 1e-11) continue;
      pair_mu.push_back(mu);
      pair_nu.push_back(nu);
      acc += c * c;
      cumulative.push_back(acc);
      m_u = std::min(m_u, std::abs(c));
    }

  // adjoint-channel images of every P_mu: W_mu = sum_a A^dag P_mu A
  std::vector<std::vector<cplx>> w(npauli);
  for (uint64_t mu = 0; mu < npauli; mu++) {
    std::vector<cplx> pm = pauli_dense_matrix(index_to_pauli(PauliIndex{mu}, n));
    std::vector<cplx> sum(d * d, cplx(0, 0));
    for (const auto &a : ch.ops) {
      std::vector<cplx> t = mat_mul(mat_mul(mat_adjoint(a, d), pm, d), a, d);
      for (uint64_t e = 0; e < d * d; e++) sum[e] += t[e];
    }
    w[mu] = std::move(sum);
  }

  uint64_t k = cfg.k_override ? *cfg.k_override
                              : hoeffding_k(2.0, cfg.epsilon, cfg.delta, m_u * m_u);
  EstimationReport rep;
  rep.protocol = "process_fidelity";
  rep.k = k;
  rep.master_seed = cfg.master_seed;
  uint32_t shots = cfg.shots_per_pauli;

  std::vector<double> terms(k);
  std::vector<TrialRecord> trials(cfg.record_trials ? k : 0);
  parallel_for_index(k, cfg.workers, [&](uint64_t i) {
    Rng rng = Rng::stream(cfg.master_seed, i);
    size_t slot = rng.next_discrete(cumulative);
    uint64_t mu = pair_mu[slot], nu = pair_nu[slot];
    PauliString pnu = index_to_pauli(PauliIndex{nu}, n);
    double sum = 0;
    for (uint32_t c = 0; c < shots; c++) {
      auto [eigenstate, lambda] = random_pauli_eigenstate(pnu, rng);
      // one-shot of P_mu after the channel: mean <v|W_mu|v>
      cplx ev(0, 0);
      for (uint64_t r = 0; r < d; r++) {
        if (eigenstate.amp[r] == cplx(0, 0)) continue;
        for (uint64_t cc = 0; cc < d; cc++) {
          if (eigenstate.amp[cc] == cplx(0, 0)) continue;
          ev += std::conj(eigenstate.amp[r]) * w[mu][r * d + cc] * eigenstate.amp[cc];
        }
      }
      double p_plus = 0.5 * (1.0 + ev.real());
      int outcome = rng.next_double() < p_plus ? +1 : -1;
      sum += static_cast<double>(d) * lambda * outcome;
    }
    double term = (sum / shots) / (coeff[mu * npauli + nu] * static_cast<double>(d));
    terms[i] = term;
    if (cfg.record_trials) {
      trials[i] = TrialRecord{
          i,
          to_text(index_to_pauli(PauliIndex{mu}, n)) + "," + to_text(pnu),
          sum / shots, term};
    }
  });
  double total = 0;
  for (double v : terms) total += v;
  rep.estimate = total / static_cast<double>(k);
  rep.true_value = entanglement_fidelity_exact(u, n, ch).f_u;
  rep.sample_count = k * shots;
  rep.n_cl = 1;
  rep.total_cost = rep.sample_count;
  rep.trials = std::move(trials);

  double lg = std::log(2.0 / cfg.delta);
  rep.protocol_lower_bound = 2.0 / (cfg.epsilon * cfg.epsilon) * lg *
                             std::exp2(choi_magic(u, n, 2.0).value);
  rep.protocol_upper_bound = 64.0 / std::pow(cfg.epsilon, 4) * lg *
                             std::exp2(choi_magic(u, n, 0.0).value);
  return rep;
}

Circuit random_doped_circuit(uint32_t n, uint32_t t, Rng &rng) {
  Circuit c = random_clifford(n, rng);
  for (uint32_t i = 0; i < t; i++) {
    c.append(GateKind::T, static_cast<uint32_t>(rng.next_below(n)));
    c.extend(random_clifford(n, rng));
  }
  return c;
}

double f_plus(double d) { return (3 * d * d - 3 * d - 4) / (4 * (d * d - 1)); }
double f_minus(double d) { return (3 * d * d + 3 * d - 4) / (4 * (d * d - 1)); }

double doped_state_exp_m2_bound(uint32_t n, uint32_t t) {
  double d = std::exp2(static_cast<double>(n));
  return (d + 3.0) / (4.0 + (d - 1.0) * std::pow(f_plus(d), static_cast<double>(t)));
}

double doped_circuit_q4_closed_form(uint32_t n, uint32_t t) {
  double d = std::exp2(static_cast<double>(n));
  double fp = std::pow(f_plus(d), static_cast<double>(t));
  double fm = std::pow(f_minus(d), static_cast<double>(t));
  double favg = std::pow(0.5 * (f_plus(d) + f_minus(d)), static_cast<double>(t));
  double bracket = 4.0 * (6.0 - d * d + d * d * d * d) / (d * d * (d * d - 9.0)) +
                   (d * d - 1.0) * ((d + 2.0) * (d + 4.0) * fp / (6.0 * d * (d + 3.0)) +
                                    (d - 2.0) * (d - 4.0) * fm / (6.0 * d * (d - 3.0)) +
                                    (d * d - 4.0) * favg / (3.0 * d * d));
  return 1.0 / bracket;
}

double q4_overlap(const std::vector<cplx> &u, uint32_t n) {
  uint64_t d = 1ull << n;
  uint64_t npauli = 1ull << (2 * n);
  std::vector<cplx> ud = mat_adjoint(u, d);
  double total = 0;
  for (uint64_t nu = 0; nu < npauli; nu++) {
    PauliString pnu = index_to_pauli(PauliIndex{nu}, n);
    std::vector<cplx> upu = mat_mul(mat_mul(u, pauli_dense_matrix(pnu), d), ud, d);
    for (uint64_t mu = 0; mu < npauli; mu++) {
      PauliString pmu = index_to_pauli(PauliIndex{mu}, n);
      static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      cplx lead = i_pow[(pmu.phase + detail::popcount64(pmu.x & pmu.z)) & 3];
      cplx tr(0, 0);
      for (uint64_t j = 0; j < d; j++) {
        double sgn = detail::parity64(pmu.z & j) ? -1.0 : 1.0;
        tr += (lead * sgn) * upu[j * d + (j ^ pmu.x)];
      }
      double t2 = tr.real() * tr.real();
      total += t2 * t2;
    }
  }
  double d4 = static_cast<double>(d) * d * d * d;
  return total / d4;
}

std::vector<ScalingRow> scaling_experiment(ScalingKind kind, uint32_t n,
                                           uint32_t t_min, uint32_t t_max, uint32_t samples,
                                           const EstimationConfig &cfg) {
  cfg.validate();
  if (samples == 0)
    throw ValidationError("scaling experiment needs at least one sample");
  std::vector<ScalingRow> rows;
  for (uint32_t t = t_min; t <= t_max; t++) {
    std::vector<double> values(samples);
    parallel_for_index(samples, cfg.workers, [&](uint64_t s) {
      Rng rng = Rng::stream(cfg.master_seed, static_cast<uint64_t>(t) * 0x10000 + s);
      Circuit c = random_doped_circuit(n, t, rng);
      if (kind == ScalingKind::StateEnsemble) {
        values[s] = exp2_m2(simulate(c));
      } else {
        values[s] = q4_overlap(unitary_of_circuit(c), n);
      }
    });
    double mean = 0;
    for (double v : values) mean += v;
    mean /= samples;
    double var = 0;
    for (double v : values) var += (v - mean) * (v - mean);
    double stderr_ = samples > 1 ? std::sqrt(var / (samples - 1.0) / samples) : 0.0;
    ScalingRow row;
    row.t = t;
    row.mean = mean;
    row.stderr_ = stderr_;
    row.paper_bound = kind == ScalingKind::StateEnsemble ? doped_state_exp_m2_bound(n, t)
                                                           : doped_circuit_q4_closed_form(n, t);
    row.ratio = row.paper_bound != 0 ? mean / row.paper_bound : 0.0;
    rows.push_back(row);
  }
  return rows;
}

} // namespace qcert
