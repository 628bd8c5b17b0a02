#include <doctest.h>

#include <complex>

#include "qcert/chform.hpp"
#include "qcert/dense.hpp"
#include "test_util.hpp"

using namespace qcert;
using testutil::max_amp_diff;
using testutil::random_clifford_gate_circuit;

namespace {
std::complex<double> dense_overlap(const std::vector<std::complex<double>> &a,
                                   const std::vector<std::complex<double>> &b) {
  std::complex<double> s(0, 0);
  for (size_t i = 0; i < a.size(); i++) s += std::conj(a[i]) * b[i];
  return s;
}
} // namespace

TEST_CASE("basis state amplitudes") {
  ChForm phi(3, 0b101);
  CHECK(phi.amplitude(0b101).value() == std::complex<double>(1, 0));
  CHECK(phi.amplitude(0b001).zero);
}

TEST_CASE("single gates against dense kernels") {
  ChForm phi(1);
  phi.h(0);
  CHECK(std::abs(phi.amplitude(0).value() - 0.70710678118654752) < 1e-15);
  CHECK(std::abs(phi.amplitude(1).value() - 0.70710678118654752) < 1e-15);
  phi.s(0);
  CHECK(std::abs(phi.amplitude(1).value() - std::complex<double>(0, 0.70710678118654752)) < 1e-15);
  phi.h(0);
  // HS|+> = ((1+i)|0> + (1-i)|1>)/2
  CHECK(std::abs(phi.amplitude(0).value() - std::complex<double>(0.5, 0.5)) < 1e-15);
  CHECK(std::abs(phi.amplitude(1).value() - std::complex<double>(0.5, -0.5)) < 1e-15);
}

TEST_CASE("statevector matches dense simulation on random circuits") {
  Rng rng(21);
  for (int trial = 0; trial < 300; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(5));
    Circuit c = random_clifford_gate_circuit(n, 30, rng);
    ChForm phi(n);
    phi.apply(c);
    DenseState ref = simulate(c);
    CHECK(max_amp_diff(phi.to_statevector(), ref.amp) < 1e-12);
  }
}

TEST_CASE("apply_inverse undoes a circuit") {
  Rng rng(22);
  for (int trial = 0; trial < 50; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(5));
    Circuit c = random_clifford_gate_circuit(n, 25, rng);
    uint64_t basis = rng.next_below(1ull << n);
    ChForm phi(n, basis);
    phi.apply(c);
    phi.apply_inverse(c);
    StabScalar amp = phi.amplitude(basis);
    CHECK(!amp.zero);
    CHECK(std::abs(amp.value() - std::complex<double>(1, 0)) < 1e-12);
  }
}

TEST_CASE("overlap matches dense inner product") {
  Rng rng(23);
  for (int trial = 0; trial < 200; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(5));
    Circuit c1 = random_clifford_gate_circuit(n, 25, rng);
    Circuit c2 = random_clifford_gate_circuit(n, 25, rng);
    ChForm a(n), b(n);
    a.apply(c1);
    b.apply(c2);
    std::complex<double> got = ChForm::overlap(a, b).value();
    std::complex<double> want = dense_overlap(simulate(c1).amp, simulate(c2).amp);
    CHECK(std::abs(got - want) < 1e-12);
  }
}

TEST_CASE("overlap of a state with itself is one") {
  Rng rng(24);
  for (int trial = 0; trial < 50; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(6));
    ChForm a(n);
    a.apply(random_clifford_gate_circuit(n, 30, rng));
    StabScalar s = ChForm::overlap(a, a);
    CHECK(!s.zero);
    CHECK(s.p == 0);
    CHECK(s.e == 0);
  }
}

TEST_CASE("pauli projection postselects a Bell pair") {
  ChForm bell(2);
  bell.h(0);
  bell.cx(0, 1);
  bell.project_pauli(pauli_from_text("ZI"));
  // (1+Z_0)/2 acting on the Bell state leaves |00>/sqrt(2)
  CHECK(std::abs(bell.amplitude(0b00).value() - 0.70710678118654752) < 1e-15);
  CHECK(bell.amplitude(0b11).zero);
}

TEST_CASE("projection onto an orthogonal outcome zeroes the state") {
  ChForm zero(1);
  PauliString minus_z = pauli_from_text("-Z");
  zero.project_pauli(minus_z);
  CHECK(zero.is_zero());
}

TEST_CASE("amplitudes are exact scalars with even denominators") {
  Rng rng(25);
  for (int trial = 0; trial < 100; trial++) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.next_below(4));
    ChForm phi(n);
    phi.apply(random_clifford_gate_circuit(n, 30, rng));
    uint64_t x = rng.next_below(1ull << n);
    StabScalar amp = phi.amplitude(x);
    if (!amp.zero) {
      CHECK(amp.p <= 0);
      CHECK(amp.p >= -2 * static_cast<int32_t>(n));
    }
  }
}
