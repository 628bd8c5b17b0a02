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

#include "qcert/doped.hpp"

#include <cmath>

#include "qcert/parallel.hpp"

namespace qcert {

DopedLimits &doped_limits() {
  static DopedLimits limits;
  return limits;
}

GadgetizedCircuit gadgetize(const Circuit &u) {
  GadgetizedCircuit g;
  g.n = u.n;
  g.t = u.t_count();
  g.clifford = Circuit(u.n + g.t);
  uint32_t k = 0;
  for (const auto &gate : u.gates) {
    if (is_clifford(gate.kind)) {
      g.clifford.append(gate);
    } else {
      g.clifford.append(GateKind::CX, gate.q0, u.n + k);
      g.ancilla_sign.push_back(gate.kind == GateKind::T ? +1 : -1);
      k++;
    }
  }
  return g;
}

namespace {

// Exact accumulator over Z[w], w = exp(i pi/4), with a shared power of
// sqrt(2): value = (c[0] + c[1] w + c[2] w^2 + c[3] w^3) * 2^(-halves/2).
struct RootEightSum {
  __int128 c[4] = {0, 0, 0, 0};
  int32_t halves = 0; // exponent of the common 2^(-1/2) factor

  static void times_omega(__int128 v[4]) {
    __int128 t = v[3];
    v[3] = v[2];
    v[2] = v[1];
    v[1] = v[0];
    v[0] = -t; // w^4 = -1
  }

  static void times_sqrt2(__int128 v[4]) {
    // sqrt(2) = w - w^3
    __int128 a[4] = {v[0], v[1], v[2], v[3]};
    __int128 b[4] = {v[0], v[1], v[2], v[3]};
    times_omega(a);
    times_omega(b);
    times_omega(b);
    times_omega(b);
    for (int i = 0; i < 4; i++) v[i] = a[i] - b[i];
  }

  void add_scalar(const StabScalar &s, uint32_t extra_eighth_phase) {
    if (s.zero) return;
    int32_t h = -s.p; // value = w^e * 2^(-h/2)
    __int128 v[4] = {1, 0, 0, 0};
    uint32_t e = (s.e + extra_eighth_phase) & 7;
    for (uint32_t i = 0; i < e; i++) times_omega(v);
    if (h > halves) {
      // rescale the accumulated total to the finer denominator
      int32_t diff = h - halves;
      for (int32_t i = 0; i < diff; i++) times_sqrt2(c);
      halves = h;
    } else if (h < halves) {
      int32_t diff = halves - h;
      for (int32_t i = 0; i < diff; i++) times_sqrt2(v);
    }
    for (int i = 0; i < 4; i++) c[i] += v[i];
  }

  void add(const RootEightSum &o) {
    __int128 v[4] = {o.c[0], o.c[1], o.c[2], o.c[3]};
    int32_t h = o.halves;
    if (h > halves) {
      int32_t diff = h - halves;
      for (int32_t i = 0; i < diff; i++) times_sqrt2(c);
      halves = h;
    } else if (h < halves) {
      int32_t diff = halves - h;
      for (int32_t i = 0; i < diff; i++) times_sqrt2(v);
    }
    for (int i = 0; i < 4; i++) c[i] += v[i];
  }

  // |value|^2 = (A + sqrt(2) B) * 2^(-halves) with integer A, B.
  double norm_squared() const {
    long double a0 = static_cast<long double>(c[0]);
    long double a1 = static_cast<long double>(c[1]);
    long double a2 = static_cast<long double>(c[2]);
    long double a3 = static_cast<long double>(c[3]);
    long double A = a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3;
    long double B = a0 * (a1 - a3) + a2 * (a1 + a3);
    long double v = (A + 1.41421356237309504880L * B) * std::exp2l(-static_cast<long double>(halves));
    return static_cast<double>(v);
  }
};

OutcomeProbability gadget_probability(const GadgetizedCircuit &g, uint64_t x, uint32_t workers) {
  uint32_t n = g.n, t = g.t;
  uint32_t total_qubits = n + t;
  if (t > doped_limits().t)
    throw CapacityError("t-count " + std::to_string(t) + " exceeds limit " +
                        std::to_string(doped_limits().t));
  if (total_qubits > 64)
    throw DimensionError("gadgetized circuit exceeds 64 qubits");
  if (n < 64 && (x >> n) != 0)
    throw DimensionError("outcome string wider than the register");

  // chi = C^dag |x, 0^t>; then <x,0^t|C|0^n,y> = conj(<0^n,y|chi>)
  ChForm chi(total_qubits, x);
  chi.apply_inverse(g.clifford);

  OutcomeProbability out;
  uint64_t terms = 1ull << t;
  out.ledger.charge(terms, total_qubits);

  const uint64_t chunk = 1024;
  uint64_t chunk_count = (terms + chunk - 1) / chunk;
  std::vector<RootEightSum> partial(chunk_count);
  parallel_for_chunks(terms, chunk, workers, [&](uint64_t ci, uint64_t begin, uint64_t end) {
    RootEightSum acc;
    for (uint64_t y = begin; y < end; y++) {
      StabScalar a = chi.amplitude(y << n).conj();
      if (a.zero) continue;
      uint32_t phase = 0; // signed Hamming phase e^{i pi s(y)/4}
      uint64_t yy = y;
      for (uint32_t k = 0; k < t; k++) {
        if (yy & 1) phase += (g.ancilla_sign[k] > 0) ? 1 : 7;
        yy >>= 1;
      }
      acc.add_scalar(a, phase & 7);
    }
    partial[ci] = acc;
  });

  RootEightSum total;
  for (const auto &p : partial) total.add(p);
  out.probability = total.norm_squared();
  return out;
}

} // namespace

OutcomeProbability outcome_probability(const Circuit &u, uint64_t x, uint32_t workers) {
  return gadget_probability(gadgetize(u), x, workers);
}

OutcomeProbability outcome_probability_with_clifford(const Circuit &u, const Circuit &clifford,
                                                     uint64_t x, uint32_t workers) {
  if (clifford.n != u.n)
    throw DimensionError("clifford layer width does not match circuit");
  if (!clifford.clifford_only())
    throw ValidationError("composition layer must be Clifford");
  GadgetizedCircuit g = gadgetize(u);
  for (const auto &gate : clifford.gates) g.clifford.append(gate);
  return gadget_probability(g, x, workers);
}

uint64_t parse_bit_string(const std::string &s) {
  if (s.size() > 64)
    throw ParseError("bit string too long");
  uint64_t x = 0;
  for (size_t q = 0; q < s.size(); q++) {
    if (s[q] == '1')
      x |= 1ull << q;
    else if (s[q] != '0')
      throw ParseError("bit string must contain only 0/1");
  }
  return x;
}

std::string format_bit_string(uint64_t x, uint32_t n) {
  std::string s(n, '0');
  for (uint32_t q = 0; q < n; q++)
    if ((x >> q) & 1) s[q] = '1';
  return s;
}

} // namespace qcert
