#include <doctest.h>

#include <array>
#include <cmath>
#include <map>

#include "qcert/tableau.hpp"
#include "qcert/dense.hpp"
#include "test_util.hpp"

using namespace qcert;
using testutil::random_clifford_gate_circuit;

namespace {
PauliString P(const std::string &text) { return pauli_from_text(text); }

// Signed images of (X, Z) under conjugation identify a 1-qubit Clifford.
std::string one_qubit_class(const Circuit &c) {
  return to_text(conjugate_pauli_by_circuit(P("X"), c)) + "/" +
         to_text(conjugate_pauli_by_circuit(P("Z"), c));
}
} // namespace

TEST_CASE("textbook conjugations") {
  StabilizerTableau t(1);
  t.apply(Gate::one_qubit(GateKind::H, 0));
  CHECK(t.expectation(P("X")) == 1); // H|0> = |+>
  t.apply(Gate::one_qubit(GateKind::S, 0));
  CHECK(t.expectation(P("Y")) == 1); // S|+> = |+i>

  StabilizerTableau bell(2);
  bell.apply(Gate::one_qubit(GateKind::H, 0));
  bell.apply(Gate::two_qubit(GateKind::CX, 0, 1));
  CHECK(bell.expectation(P("XX")) == 1);
  CHECK(bell.expectation(P("ZZ")) == 1);
  CHECK(bell.expectation(P("ZI")) == 0);
  CHECK(bell.invariants_hold());
}

TEST_CASE("expectation requires a Hermitian Pauli") {
  StabilizerTableau t(1);
  CHECK_THROWS_AS(t.expectation(P("+iZ")), ValidationError);
}

TEST_CASE("deterministic and random measurements") {
  Rng rng(31);
  StabilizerTableau zero(1);
  CHECK(zero.measure_z(0, rng) == 0);

  StabilizerTableau one(1, 1);
  CHECK(one.measure_z(0, rng) == 1);

  int ones = 0;
  const int shots = 10000;
  for (int i = 0; i < shots; i++) {
    StabilizerTableau plus(1);
    plus.apply(Gate::one_qubit(GateKind::H, 0));
    ones += plus.measure_z(0, rng);
  }
  double sigma = 0.5 * std::sqrt(shots);
  CHECK(std::abs(ones - shots / 2) < 3 * sigma);

  for (int i = 0; i < 200; i++) {
    StabilizerTableau bell(2);
    bell.apply(Gate::one_qubit(GateKind::H, 0));
    bell.apply(Gate::two_qubit(GateKind::CX, 0, 1));
    int a = bell.measure_z(0, rng);
    int b = bell.measure_z(1, rng);
    CHECK(a == b);
    CHECK(bell.invariants_hold());
  }
}

TEST_CASE("measurement collapse keeps the phase state consistent") {
  Rng rng(32);
  for (int trial = 0; trial < 60; trial++) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.next_below(3));
    StabilizerTableau t(n);
    t.apply(random_clifford_gate_circuit(n, 20, rng));
    for (int m = 0; m < 3; m++) {
      uint32_t q = static_cast<uint32_t>(rng.next_below(n));
      int outcome = t.measure_z(q, rng);
      CHECK(t.invariants_hold());
      // the CH companion agrees with the collapsed tableau on expectations
      auto sv = t.phase_state().to_statevector();
      DenseState psi;
      psi.n = n;
      psi.amp = sv;
      CHECK(std::abs(psi.norm2() - 1.0) < 1e-9);
      PauliString zq(n, 0, 1ull << q, 0);
      CHECK(std::abs(pauli_expectation(psi, zq) - (outcome ? -1.0 : 1.0)) < 1e-9);
    }
  }
}

TEST_CASE("tableau expectations match the dense oracle") {
  Rng rng(33);
  for (int trial = 0; trial < 200; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(5));
    Circuit c = random_clifford_gate_circuit(n, 30, rng);
    StabilizerTableau t = StabilizerTableau::from_circuit(c);
    DenseState psi = simulate(c);
    for (uint64_t i = 0; i < (1ull << (2 * n)); i++) {
      PauliString p = index_to_pauli(PauliIndex{i}, n);
      CHECK(std::abs(static_cast<double>(t.expectation(p)) - pauli_expectation(psi, p)) < 1e-9);
    }
  }
}

TEST_CASE("inner product examples") {
  StabilizerTableau zero(1);
  StabilizerTableau one(1, 1);

  StabInnerProduct same = inner_product(zero, zero);
  CHECK(same.b);
  CHECK(same.p == 0);
  CHECK(same.m == 0);

  StabilizerTableau plus(1);
  plus.apply(Gate::one_qubit(GateKind::H, 0));
  StabInnerProduct zp = inner_product(zero, plus);
  CHECK(zp.b);
  CHECK(zp.p == 1);
  CHECK(zp.m == 0);

  // <1| S H |0> = i/sqrt(2)
  StabilizerTableau sh(1);
  sh.apply(Gate::one_qubit(GateKind::H, 0));
  sh.apply(Gate::one_qubit(GateKind::S, 0));
  StabInnerProduct ip = inner_product(one, sh);
  CHECK(ip.b);
  CHECK(ip.p == 1);
  CHECK(ip.m == 2);

  CHECK(!inner_product(zero, one).b);
}

TEST_CASE("inner product matches dense overlaps on random pairs") {
  Rng rng(34);
  for (int trial = 0; trial < 200; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(5));
    Circuit c1 = random_clifford_gate_circuit(n, 25, rng);
    Circuit c2 = random_clifford_gate_circuit(n, 25, rng);
    StabilizerTableau t1 = StabilizerTableau::from_circuit(c1);
    StabilizerTableau t2 = StabilizerTableau::from_circuit(c2);
    StabInnerProduct ip = inner_product(t1, t2);
    std::complex<double> want(0, 0);
    DenseState s1 = simulate(c1), s2 = simulate(c2);
    for (uint64_t i = 0; i < s1.dim(); i++) want += std::conj(s1.amp[i]) * s2.amp[i];
    CHECK(std::abs(ip.value() - want) < 1e-12);
    CHECK(std::abs(ip.value()) <= 1.0 + 1e-12);
  }
}

TEST_CASE("self inner product is always one") {
  Rng rng(39);
  for (int trial = 0; trial < 30; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(5));
    StabilizerTableau t =
        StabilizerTableau::from_circuit(random_clifford_gate_circuit(n, 25, rng));
    StabInnerProduct ip = inner_product(t, t);
    CHECK(ip.b);
    CHECK(ip.p == 0);
    CHECK(ip.m == 0);
  }
}

TEST_CASE("dimension errors") {
  StabilizerTableau a(2), b(3);
  CHECK_THROWS_AS(inner_product(a, b), DimensionError);
  Rng rng(40);
  CHECK_THROWS_AS(a.measure_z(2, rng), DimensionError);
  CHECK_THROWS_AS(a.expectation(pauli_from_text("XXX")), DimensionError);
  CHECK_THROWS_AS(a.apply(Gate::one_qubit(GateKind::T, 0)), ValidationError);
}

TEST_CASE("random_clifford hits all 24 one-qubit classes uniformly") {
  Rng rng(35);
  std::map<std::string, int> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; i++) counts[one_qubit_class(random_clifford(1, rng))]++;
  CHECK(counts.size() == 24);
  double expect = draws / 24.0;
  double sigma = std::sqrt(draws * (1.0 / 24) * (23.0 / 24));
  for (const auto &[cls, c] : counts) CHECK(std::abs(c - expect) < 3 * sigma + 1);
}

TEST_CASE("random_clifford orbit of Z is uniform over signed Paulis") {
  Rng rng(36);
  std::map<std::string, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; i++)
    counts[to_text(conjugate_pauli_by_circuit(P("Z"), random_clifford(1, rng)))]++;
  CHECK(counts.size() == 6);
  double expect = draws / 6.0;
  double sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
  for (const auto &[cls, c] : counts) CHECK(std::abs(c - expect) < 3 * sigma + 1);
}

TEST_CASE("random_clifford tableaux satisfy the invariants") {
  Rng rng(37);
  for (int i = 0; i < 1000; i++) {
    StabilizerTableau t = random_stabilizer_state(6, rng);
    CHECK(t.invariants_hold());
  }
}

TEST_CASE("random_clifford matches the dense oracle") {
  Rng rng(38);
  for (int i = 0; i < 50; i++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(4));
    Circuit c = random_clifford(n, rng);
    StabilizerTableau t = StabilizerTableau::from_circuit(c);
    DenseState psi = simulate(c);
    for (uint64_t j = 0; j < (1ull << (2 * n)); j++) {
      PauliString p = index_to_pauli(PauliIndex{j}, n);
      CHECK(std::abs(static_cast<double>(t.expectation(p)) - pauli_expectation(psi, p)) < 1e-9);
    }
  }
}
