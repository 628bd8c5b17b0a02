#include <doctest.h>

#include "qcert/pauli.hpp"
#include "qcert/rng.hpp"

using namespace qcert;

namespace {
PauliString P(const std::string &text) { return pauli_from_text(text); }

std::vector<std::complex<double>> dense_mul(const std::vector<std::complex<double>> &a,
                                            const std::vector<std::complex<double>> &b,
                                            uint64_t d) {
  std::vector<std::complex<double>> out(d * d, {0, 0});
  for (uint64_t r = 0; r < d; r++)
    for (uint64_t k = 0; k < d; k++)
      for (uint64_t c = 0; c < d; c++) out[r * d + c] += a[r * d + k] * b[k * d + c];
  return out;
}
} // namespace

TEST_CASE("single qubit products") {
  CHECK(multiply(P("X"), P("Z")) == P("-iY"));
  CHECK(multiply(P("Z"), P("X")) == P("+iY"));
  CHECK(multiply(P("X"), P("X")) == P("I"));
  CHECK(multiply(P("Y"), P("Y")) == P("I"));
  CHECK(multiply(P("X"), P("Y")) == P("+iZ"));
}

TEST_CASE("two qubit product example") {
  CHECK(multiply(P("XZ"), P("ZZ")) == P("-iYI"));
}

TEST_CASE("size mismatch raises") {
  CHECK_THROWS_AS(multiply(P("X"), P("XX")), DimensionError);
  CHECK_THROWS_AS(commutes(P("X"), P("XX")), DimensionError);
}

TEST_CASE("commutation examples") {
  CHECK(!commutes(P("X"), P("Y")));
  CHECK(commutes(P("XX"), P("ZZ")));
  CHECK(commutes(P("XIZ"), P("XIZ")));
}

TEST_CASE("index ordering convention") {
  CHECK(index_to_pauli(PauliIndex{0}, 1) == P("I"));
  CHECK(index_to_pauli(PauliIndex{1}, 1) == P("X"));
  CHECK(index_to_pauli(PauliIndex{2}, 1) == P("Y"));
  CHECK(index_to_pauli(PauliIndex{3}, 1) == P("Z"));
  // qubit 0 is the least significant digit
  CHECK(index_to_pauli(PauliIndex{4}, 2) == P("IX"));
  CHECK_THROWS_AS(index_to_pauli(PauliIndex{16}, 2), std::out_of_range);
}

TEST_CASE("index round trip at n=4") {
  for (uint64_t i = 0; i < 256; i++) {
    PauliString p = index_to_pauli(PauliIndex{i}, 4);
    CHECK(pauli_to_index(p).value == i);
  }
}

TEST_CASE("text round trip") {
  for (const char *s : {"+XIZ", "-YY", "+iZI", "-iXYZI", "+I"}) {
    CHECK(to_text(pauli_from_text(s)) == s);
  }
  CHECK_THROWS_AS(pauli_from_text("XQ"), ParseError);
}

TEST_CASE("associativity on random triples") {
  Rng rng(7);
  for (int trial = 0; trial < 10000; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(8));
    auto rand_pauli = [&] {
      uint64_t mask = (1ull << n) - 1;
      return PauliString(n, rng.next_u64() & mask, rng.next_u64() & mask,
                         static_cast<uint8_t>(rng.next_below(4)));
    };
    PauliString a = rand_pauli(), b = rand_pauli(), c = rand_pauli();
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("commutation matches product phases") {
  Rng rng(8);
  for (int trial = 0; trial < 2000; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(6));
    uint64_t mask = (1ull << n) - 1;
    PauliString a(n, rng.next_u64() & mask, rng.next_u64() & mask, 0);
    PauliString b(n, rng.next_u64() & mask, rng.next_u64() & mask, 0);
    PauliString ab = multiply(a, b), ba = multiply(b, a);
    CHECK(ab.x == ba.x);
    CHECK(ab.z == ba.z);
    if (commutes(a, b)) {
      CHECK(ab.phase == ba.phase);
    } else {
      CHECK(((ab.phase + 2) & 3) == ba.phase);
    }
  }
}

TEST_CASE("product agrees with dense matrices up to n=3") {
  for (uint32_t n = 1; n <= 3; n++) {
    uint64_t d = 1ull << n;
    uint64_t count = 1ull << (2 * n);
    for (uint64_t i = 0; i < count; i++) {
      for (uint64_t j = 0; j < count; j++) {
        PauliString a = index_to_pauli(PauliIndex{i}, n);
        PauliString b = index_to_pauli(PauliIndex{j}, n);
        auto prod = pauli_dense_matrix(multiply(a, b));
        auto ref = dense_mul(pauli_dense_matrix(a), pauli_dense_matrix(b), d);
        for (uint64_t e = 0; e < d * d; e++) CHECK(std::abs(prod[e] - ref[e]) < 1e-12);
      }
    }
  }
}

TEST_CASE("group closure keeps phase in Z4 and bits in range") {
  Rng rng(9);
  for (int trial = 0; trial < 1000; trial++) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(8));
    uint64_t mask = (1ull << n) - 1;
    PauliString a(n, rng.next_u64() & mask, rng.next_u64() & mask,
                  static_cast<uint8_t>(rng.next_below(4)));
    PauliString b(n, rng.next_u64() & mask, rng.next_u64() & mask,
                  static_cast<uint8_t>(rng.next_below(4)));
    PauliString c = multiply(a, b);
    CHECK(c.n == n);
    CHECK((c.x & ~mask) == 0);
    CHECK((c.z & ~mask) == 0);
    CHECK(c.phase < 4);
  }
}
