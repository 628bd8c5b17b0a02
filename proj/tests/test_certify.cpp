#include <doctest.h>

#include <cmath>
#include <map>

#include "qcert/certify.hpp"
#include "qcert/report.hpp"
#include "qcert/tableau.hpp"
#include "test_util.hpp"

using namespace qcert;

namespace {

DenseState t_state_power(uint32_t t) {
  Circuit c(t);
  for (uint32_t q = 0; q < t; q++) {
    c.append(GateKind::H, q);
    c.append(GateKind::T, q);
  }
  return simulate(c);
}

Circuit t_state_circuit(uint32_t n) {
  Circuit c(n);
  for (uint32_t q = 0; q < n; q++) {
    c.append(GateKind::H, q);
    c.append(GateKind::T, q);
  }
  return c;
}

DensityMatrix depolarized(const DenseState &psi, double p) {
  return apply_channel(DensityMatrix::from_pure(psi),
                       noise_model({NoiseKind::GlobalDepolarizing, p}, psi.n));
}

struct RunStats {
  double mean = 0;
  double stderr_ = 0;
};

template <typename Fn>
RunStats repeat_runs(int runs, Fn &&fn) {
  std::vector<double> vals(runs);
  for (int r = 0; r < runs; r++) vals[r] = fn(r);
  RunStats s;
  for (double v : vals) s.mean += v;
  s.mean /= runs;
  double var = 0;
  for (double v : vals) var += (v - s.mean) * (v - s.mean);
  s.stderr_ = std::sqrt(var / (runs - 1.0) / runs);
  return s;
}

// All 24 one-qubit Cliffords as circuits, deduplicated by signed images.
std::vector<Circuit> one_qubit_clifford_group() {
  std::vector<Circuit> found;
  std::map<std::string, bool> seen;
  std::vector<Circuit> frontier{Circuit(1)};
  auto key = [](const Circuit &c) {
    return to_text(conjugate_pauli_by_circuit(pauli_from_text("X"), c)) +
           to_text(conjugate_pauli_by_circuit(pauli_from_text("Z"), c));
  };
  seen[key(frontier[0])] = true;
  found.push_back(frontier[0]);
  while (!frontier.empty() && found.size() < 24) {
    std::vector<Circuit> next;
    for (const auto &c : frontier) {
      for (GateKind k : {GateKind::H, GateKind::S}) {
        Circuit ext = c;
        ext.append(k, 0);
        std::string id = key(ext);
        if (!seen[id]) {
          seen[id] = true;
          found.push_back(ext);
          next.push_back(ext);
        }
      }
    }
    frontier = std::move(next);
  }
  return found;
}

} // namespace

TEST_CASE("config validation") {
  EstimationConfig bad;
  bad.epsilon = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad.epsilon = 0.1;
  bad.delta = 1.5;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("sample complexity bounds") {
  Rng rng(91);
  DenseState stab = simulate(random_clifford(3, rng));
  SampleComplexityBounds b = pauli_sample_complexity_bounds(stab, 0.1, 0.05);
  CHECK(b.lower == doctest::Approx(200.0 * std::log(40.0)).epsilon(1e-9));
  CHECK(b.lower == doctest::Approx(737.78).epsilon(1e-4));

  // (4/3)^t lower and (3/2)^t upper growth on T-state powers
  double prev_lower = 0, prev_upper = 0;
  for (uint32_t t = 1; t <= 3; t++) {
    SampleComplexityBounds bt = pauli_sample_complexity_bounds(t_state_power(t), 0.1, 0.05);
    if (t > 1) {
      CHECK(bt.lower / prev_lower == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
      CHECK(bt.upper / prev_upper == doctest::Approx(1.5).epsilon(1e-9));
    }
    prev_lower = bt.lower;
    prev_upper = bt.upper;
  }
}

TEST_CASE("pauli dfe is exact on a noiseless stabilizer target") {
  DenseState zero(2);
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.master_seed = 5;
  EstimationReport rep = pauli_dfe(zero, DensityMatrix::from_pure(zero), cfg);
  CHECK(rep.estimate == 1.0);
  CHECK(rep.true_value == doctest::Approx(1.0));
  CHECK(rep.sample_count == rep.k);
  CHECK(rep.total_cost == rep.sample_count * rep.n_cl);
}

TEST_CASE("pauli dfe hoeffding count") {
  EstimationConfig cfg;
  cfg.epsilon = 0.05;
  cfg.delta = 0.01;
  cfg.record_trials = false;
  DenseState t1 = t_state_power(1);
  EstimationReport rep = pauli_dfe(t1, DensityMatrix::from_pure(t1), cfg);
  // k = 2 ln(200) / (0.0025 * 0.5) ~= 8477.3
  CHECK(rep.k >= 8477);
  CHECK(rep.k <= 8478);
}

TEST_CASE("pauli dfe k doubles per added T") {
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.record_trials = false;
  uint64_t prev = 0;
  for (uint32_t t = 1; t <= 4; t++) {
    DenseState psi = t_state_power(t);
    EstimationReport rep = pauli_dfe(psi, DensityMatrix::from_pure(psi), cfg);
    if (t > 1) {
      double ratio = static_cast<double>(rep.k) / static_cast<double>(prev);
      CHECK(ratio > 1.9);
      CHECK(ratio < 2.1);
    }
    prev = rep.k;
  }
}

TEST_CASE("pauli dfe is unbiased under depolarizing noise") {
  DenseState t1 = t_state_power(1);
  double p = 0.2;
  DensityMatrix noisy = depolarized(t1, p);
  double truth = fidelity(t1, noisy);
  CHECK(truth == doctest::Approx(1.0 - p / 2).epsilon(1e-12));

  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.k_override = 16;
  cfg.record_trials = false;
  RunStats s = repeat_runs(3000, [&](int r) {
    EstimationConfig c = cfg;
    c.master_seed = 1000 + r;
    return pauli_dfe(t1, noisy, c).estimate;
  });
  CHECK(std::abs(s.mean - truth) < 5 * s.stderr_);
}

TEST_CASE("pauli dfe is deterministic for any worker count") {
  DenseState psi = t_state_power(2);
  DensityMatrix noisy = depolarized(psi, 0.1);
  EstimationConfig cfg;
  cfg.epsilon = 0.1;
  cfg.delta = 0.05;
  cfg.master_seed = 77;
  std::string ref;
  for (uint32_t w : {1u, 2u, 3u}) {
    EstimationConfig c = cfg;
    c.workers = w;
    std::string doc = report_to_json(pauli_dfe(psi, noisy, c));
    if (ref.empty())
      ref = doc;
    else
      CHECK(doc == ref);
  }
}

TEST_CASE("mixed-state overlap estimation") {
  // rho = rho~: mean of the estimator is 1
  DenseState t1 = t_state_power(1);
  DensityMatrix rho = depolarized(t1, 0.3);
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.k_override = 16;
  cfg.record_trials = false;
  RunStats s = repeat_runs(1000, [&](int r) {
    EstimationConfig c = cfg;
    c.master_seed = 2000 + r;
    return pauli_dfe_mixed(rho, rho, c).estimate;
  });
  CHECK(std::abs(s.mean - 1.0) < 5 * s.stderr_);

  // rho = I/2 against |0><0|: Xi = {I: 1}, deterministic estimate 1
  DensityMatrix mixed = DensityMatrix::maximally_mixed(1);
  DensityMatrix zero = DensityMatrix::from_pure(DenseState(1));
  EstimationConfig cfg2;
  cfg2.epsilon = 0.2;
  cfg2.delta = 0.1;
  cfg2.master_seed = 3;
  EstimationReport rep = pauli_dfe_mixed(mixed, zero, cfg2);
  CHECK(rep.estimate == 1.0);
  CHECK(rep.true_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("truncated estimator reduces to the plain one without small coefficients") {
  EstimationConfig cfg;
  cfg.epsilon = 0.1;
  cfg.delta = 0.05;
  cfg.master_seed = 11;
  cfg.k_override = 64;

  Rng rng(92);
  DenseState stab = simulate(random_clifford(2, rng));
  DensityMatrix noisy = depolarized(stab, 0.15);
  CHECK(pauli_dfe_truncated(stab, noisy, cfg).estimate ==
        doctest::Approx(pauli_dfe(stab, noisy, cfg).estimate).epsilon(1e-12));

  // T state: the cut (0.1/2sqrt2)sqrt(2/3) ~ 0.029 < 1/sqrt(2) keeps the
  // support, so the same Paulis are drawn; only the norm factor rounds.
  DenseState t1 = t_state_power(1);
  DensityMatrix tn = depolarized(t1, 0.15);
  CHECK(pauli_dfe_truncated(t1, tn, cfg).estimate ==
        doctest::Approx(pauli_dfe(t1, tn, cfg).estimate).epsilon(1e-12));
}

TEST_CASE("truncated estimator bias stays below eps/2") {
  // one tiny X coefficient that the cut removes
  double theta = 0.01; // sin(2 theta) ~ 0.02
  DenseState psi(1);
  psi.amp[0] = std::cos(theta);
  psi.amp[1] = std::sin(theta);
  DensityMatrix exact = DensityMatrix::from_pure(psi);

  EstimationConfig cfg;
  cfg.epsilon = 0.4;
  cfg.delta = 0.1;
  cfg.k_override = 32;
  cfg.record_trials = false;
  RunStats s = repeat_runs(1000, [&](int r) {
    EstimationConfig c = cfg;
    c.master_seed = 4000 + r;
    return pauli_dfe_truncated(psi, exact, c).estimate;
  });
  CHECK(std::abs(s.mean - 1.0) < cfg.epsilon / 2 + 3 * s.stderr_);
}

TEST_CASE("truncation can empty the support when theta is too large") {
  DenseState t1 = t_state_power(1);
  EstimationConfig cfg;
  cfg.epsilon = 0.1;
  cfg.delta = 0.05;
  cfg.theta = 50.0;
  CHECK_THROWS_AS(pauli_dfe_truncated(t1, DensityMatrix::from_pure(t1), cfg), ValidationError);
}

TEST_CASE("generalized dfe with z-type stabilizers is exact") {
  DenseState zero(3);
  auto obs = product_stabilizer_observables(DenseState(1), 3);
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.master_seed = 21;
  EstimationReport rep = generalized_dfe(zero, DensityMatrix::from_pure(zero), obs, cfg);
  CHECK(rep.estimate == 1.0);
  CHECK(rep.k == static_cast<uint64_t>(std::ceil(2.0 * std::log(20.0) / 0.04)));
}

TEST_CASE("generalized dfe sample count does not depend on n") {
  EstimationConfig cfg;
  cfg.epsilon = 0.25;
  cfg.delta = 0.2;
  cfg.master_seed = 22;
  uint64_t k_seen = 0;
  for (uint32_t n = 1; n <= 3; n++) {
    DenseState zero(n);
    auto obs = product_stabilizer_observables(DenseState(1), n);
    EstimationReport rep = generalized_dfe(zero, DensityMatrix::from_pure(zero), obs, cfg);
    if (n == 1) k_seen = rep.k;
    CHECK(rep.k == k_seen);
  }
}

TEST_CASE("generalized dfe unbiased on a depolarized product target") {
  uint32_t n = 2;
  DenseState phi1 = t_state_power(1);
  DenseState target = simulate(t_state_circuit(n));
  double p = 0.25;
  DensityMatrix noisy = depolarized(target, p);
  auto obs = product_stabilizer_observables(phi1, n);

  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.k_override = 16;
  cfg.record_trials = false;
  RunStats s = repeat_runs(1500, [&](int r) {
    EstimationConfig c = cfg;
    c.master_seed = 5000 + r;
    return generalized_dfe(target, noisy, obs, c).estimate;
  });
  double truth = 1.0 - p + p / 4.0;
  CHECK(std::abs(s.mean - truth) < 5 * s.stderr_);
}

TEST_CASE("generalized dfe validates the observable set") {
  DenseState zero(1);
  DensityMatrix rho = DensityMatrix::from_pure(zero);
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;

  std::vector<std::vector<cplx>> noncommuting = {
      pauli_dense_matrix(pauli_from_text("X")), pauli_dense_matrix(pauli_from_text("Z"))};
  CHECK_THROWS_AS(generalized_dfe(zero, rho, noncommuting, cfg), ValidationError);

  std::vector<std::vector<cplx>> nonstabilizing = {
      pauli_dense_matrix(pauli_from_text("I")), pauli_dense_matrix(pauli_from_text("X"))};
  CHECK_THROWS_AS(generalized_dfe(zero, rho, nonstabilizing, cfg), ValidationError);
}

TEST_CASE("shadow estimator is exactly unbiased over the full 1-qubit group") {
  auto group = one_qubit_clifford_group();
  REQUIRE(group.size() == 24);

  Circuit target(1);
  target.append(GateKind::H, 0);
  target.append(GateKind::T, 0);
  DenseState psi = simulate(target);
  DensityMatrix rho = depolarized(t_state_power(1), 0.35);

  double acc = 0;
  for (const auto &c : group) {
    DensityMatrix rotated = rho;
    conjugate_by_circuit(rotated, c);
    for (uint64_t x = 0; x < 2; x++) {
      double px = rotated.at(x, x).real();
      double pt = outcome_probability_with_clifford(target, c, x).probability;
      acc += px * (3.0 * pt - 1.0) / 24.0;
    }
  }
  CHECK(acc == doctest::Approx(fidelity(psi, rho)).epsilon(1e-12));
}

TEST_CASE("shadow fidelity report and accounting") {
  Circuit target = t_state_circuit(2); // t = 2
  DensityMatrix noisy = depolarized(simulate(target), 0.1);
  EstimationConfig cfg;
  cfg.epsilon = 0.25;
  cfg.delta = 0.2;
  cfg.master_seed = 31;
  EstimationReport rep = shadow_fidelity(target, noisy, cfg);

  uint64_t k = static_cast<uint64_t>(std::ceil(20.0 / (0.25 * 0.25)));
  uint64_t l = static_cast<uint64_t>(std::ceil(8.0 * std::log(2.0 / 0.2)));
  CHECK(rep.sample_count == k * l);
  uint64_t nt = 2 + 2;
  CHECK(rep.n_cl == 4ull * nt * nt * nt);
  CHECK(rep.total_cost == rep.sample_count * rep.n_cl);
  // single-snapshot terms lie in [-1, d]
  for (const auto &t : rep.trials) {
    CHECK(t.term >= -1.0 - 1e-12);
    CHECK(t.term <= 4.0 + 1e-12);
  }
  CHECK(std::abs(rep.estimate - rep.true_value) < 0.25);
}

TEST_CASE("shadow fidelity is deterministic for any worker count") {
  Circuit target = t_state_circuit(2);
  DensityMatrix noisy = depolarized(simulate(target), 0.2);
  EstimationConfig cfg;
  cfg.epsilon = 0.4;
  cfg.delta = 0.2;
  cfg.master_seed = 32;
  cfg.shadow_k = 25;
  cfg.shadow_l = 5;
  std::string ref;
  for (uint32_t w : {1u, 2u, 4u}) {
    EstimationConfig c = cfg;
    c.workers = w;
    std::string doc = report_to_json(shadow_fidelity(target, noisy, c));
    if (ref.empty())
      ref = doc;
    else
      CHECK(doc == ref);
  }
}

TEST_CASE("entanglement fidelity exact values") {
  Rng rng(93);
  Circuit c = testutil::random_doped_gate_circuit(2, 15, 2, rng);
  auto u = unitary_of_circuit(c);

  ProcessFidelity noiseless = entanglement_fidelity_exact(u, 2, unitary_channel(u, 2));
  CHECK(noiseless.f_u == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(noiseless.f_avg == doctest::Approx(1.0).epsilon(1e-9));

  double p = 0.3;
  KrausChannel noisy = compose(noise_model({NoiseKind::GlobalDepolarizing, p}, 2),
                               unitary_channel(u, 2));
  ProcessFidelity dep = entanglement_fidelity_exact(u, 2, noisy);
  CHECK(dep.f_u == doctest::Approx(1.0 - p + p / 16.0).epsilon(1e-9));
  CHECK(dep.f_avg == doctest::Approx((4.0 * dep.f_u + 1.0) / 5.0).epsilon(1e-9));

  Circuit tc(1);
  tc.append(GateKind::T, 0);
  auto ut = unitary_of_circuit(tc);
  ProcessFidelity tid = entanglement_fidelity_exact(ut, 1, identity_channel(1));
  CHECK(tid.f_u == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-9));
}

TEST_CASE("process estimation is exact for noiseless cliffords") {
  Rng rng(94);
  Circuit c = random_clifford(2, rng);
  auto u = unitary_of_circuit(c);
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.master_seed = 41;
  EstimationReport rep = process_fidelity_estimate(u, 2, unitary_channel(u, 2), cfg);
  // every one-shot outcome is deterministic; the value is 1 up to rounding
  // in the dense tr(P U P' U^dag) coefficients
  CHECK(rep.estimate == doctest::Approx(1.0).epsilon(1e-12));
  for (uint64_t seed : {7ull, 8ull, 9ull}) {
    EstimationConfig c2 = cfg;
    c2.master_seed = seed;
    CHECK(process_fidelity_estimate(u, 2, unitary_channel(u, 2), c2).estimate ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(rep.true_value == doctest::Approx(1.0).epsilon(1e-9));
  // lower bound for a Clifford target: 2^{M_2} = 1
  CHECK(rep.protocol_lower_bound ==
        doctest::Approx(2.0 / 0.04 * std::log(20.0)).epsilon(1e-9));
}

TEST_CASE("process estimation is unbiased for a depolarized T gate") {
  Circuit tc(1);
  tc.append(GateKind::T, 0);
  auto u = unitary_of_circuit(tc);
  double p = 0.3;
  KrausChannel ch = compose(noise_model({NoiseKind::GlobalDepolarizing, p}, 1),
                            unitary_channel(u, 1));
  double truth = entanglement_fidelity_exact(u, 1, ch).f_u;
  CHECK(truth == doctest::Approx(1.0 - p + p / 4.0).epsilon(1e-9));

  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.k_override = 16;
  cfg.record_trials = false;
  RunStats s = repeat_runs(2000, [&](int r) {
    EstimationConfig c = cfg;
    c.master_seed = 6000 + r;
    return process_fidelity_estimate(u, 1, ch, c).estimate;
  });
  CHECK(std::abs(s.mean - truth) < 5 * s.stderr_);
}

TEST_CASE("sample-complexity sandwich on doped targets") {
  // Doped-circuit states have coefficient magnitudes 2^{-j/2} >= 2^{-t/2},
  // well above the truncation cut, so the Hoeffding k of both estimator
  // variants sits inside the bound bracket.
  Rng rng(96);
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.record_trials = false;
  for (int trial = 0; trial < 25; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(3));
    uint32_t t = static_cast<uint32_t>(rng.next_below(4));
    DenseState psi = simulate(random_doped_circuit(n, t, rng));
    DensityMatrix rho = DensityMatrix::from_pure(psi);
    SampleComplexityBounds b = pauli_sample_complexity_bounds(psi, cfg.epsilon, cfg.delta);
    uint64_t k_plain = pauli_dfe(psi, rho, cfg).k;
    uint64_t k_trunc = pauli_dfe_truncated(psi, rho, cfg).k;
    CHECK(static_cast<double>(k_plain) >= b.lower - 1.0);
    CHECK(static_cast<double>(k_plain) <= b.upper + 1.0);
    CHECK(static_cast<double>(k_trunc) <= b.upper + 1.0);
  }
}

TEST_CASE("doped circuit ensemble") {
  Rng rng(95);
  for (uint32_t t = 0; t <= 3; t++) {
    Circuit c = random_doped_circuit(3, t, rng);
    CHECK(c.t_count() == t);
    CHECK(c.n == 3);
  }
}

TEST_CASE("scaling closed forms") {
  CHECK(f_plus(8.0) == doctest::Approx(164.0 / 252.0).epsilon(1e-12));
  CHECK(f_minus(8.0) == doctest::Approx(212.0 / 252.0).epsilon(1e-12));
  CHECK(doped_state_exp_m2_bound(3, 0) == doctest::Approx(1.0).epsilon(1e-12));
  // n=6 value quoted for f_+
  CHECK(f_plus(64.0) == doctest::Approx(12092.0 / 16380.0).epsilon(1e-12));
  // the printed closed form for the process ensemble, frozen at d=8, t=0
  CHECK(doped_circuit_q4_closed_form(3, 0) ==
        doctest::Approx(10560.0 / 474084.0).epsilon(1e-12));
}

TEST_CASE("state scaling rows at small n") {
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.master_seed = 51;
  auto rows = scaling_experiment(ScalingKind::StateEnsemble, 2, 0, 1, 400, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rows[0].paper_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rows[0].ratio == doctest::Approx(1.0).epsilon(1e-12));
  // exact t=1 ensemble mean of 2^{M_2}: (1 + 4d/3)/(d+1) at d=4
  double want = (1.0 + 16.0 / 3.0) / 5.0;
  CHECK(std::abs(rows[1].mean - want) < 4 * rows[1].stderr_);
  CHECK(rows[1].mean >= rows[1].paper_bound - 2 * rows[1].stderr_);
}

TEST_CASE("process scaling rows: exact t=0 and t=1 ensemble values") {
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.master_seed = 52;
  auto rows = scaling_experiment(ScalingKind::ProcessEnsemble, 2, 0, 2, 300, cfg);
  REQUIRE(rows.size() == 3);
  // every Clifford gives tr(Q U Q U) = d^2 exactly
  CHECK(rows[0].mean == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(rows[0].stderr_ == doctest::Approx(0.0).epsilon(1e-9));
  // one T: 3/4 d^2 for every circuit in the ensemble
  CHECK(rows[1].mean == doctest::Approx(12.0).epsilon(1e-12));
  // two T: hand-derived pair-splitting average
  double d = 4.0, dd = d * d;
  double px = dd / (2.0 * (dd - 1.0));
  double e_single = 1.0 - px / 2.0;
  double e_pair = (6.0 * (dd / 4.0) + 1.0) / (4.0 * (dd - 1.0));
  double e2 = (1.0 - px) * e_single + px * e_pair;
  double want = 1.0 + (dd - 1.0) * e2;
  CHECK(std::abs(rows[2].mean - want) < 5 * rows[2].stderr_);
}

TEST_CASE("scaling is deterministic for any worker count") {
  EstimationConfig cfg;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.master_seed = 53;
  std::string ref;
  for (uint32_t w : {1u, 2u}) {
    EstimationConfig c = cfg;
    c.workers = w;
    auto rows = scaling_experiment(ScalingKind::StateEnsemble, 3, 0, 2, 50, c);
    std::string csv = scaling_to_csv(rows);
    if (ref.empty())
      ref = csv;
    else
      CHECK(csv == ref);
  }
}
