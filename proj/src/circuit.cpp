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

#include "qcert/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcert {

const char *gate_name(GateKind k) {
  switch (k) {
  case GateKind::H: return "H";
  case GateKind::S: return "S";
  case GateKind::Sdg: return "SDG";
  case GateKind::X: return "X";
  case GateKind::Y: return "Y";
  case GateKind::Z: return "Z";
  case GateKind::CX: return "CX";
  case GateKind::CZ: return "CZ";
  case GateKind::Swap: return "SWAP";
  case GateKind::T: return "T";
  case GateKind::Tdg: return "TDG";
  }
  throw ValidationError("unknown gate kind");
}

GateKind gate_kind_from_name(const std::string &name) {
  std::string u = name;
  std::transform(u.begin(), u.end(), u.begin(), ::toupper);
  if (u == "H") return GateKind::H;
  if (u == "S") return GateKind::S;
  if (u == "SDG") return GateKind::Sdg;
  if (u == "X") return GateKind::X;
  if (u == "Y") return GateKind::Y;
  if (u == "Z") return GateKind::Z;
  if (u == "CX") return GateKind::CX;
  if (u == "CZ") return GateKind::CZ;
  if (u == "SWAP") return GateKind::Swap;
  if (u == "T") return GateKind::T;
  if (u == "TDG") return GateKind::Tdg;
  throw ParseError("unknown gate name '" + name + "'");
}

std::vector<Gate> inverse_gates(const Gate &g) {
  switch (g.kind) {
  case GateKind::S: return {Gate::one_qubit(GateKind::Sdg, g.q0)};
  case GateKind::Sdg: return {Gate::one_qubit(GateKind::S, g.q0)};
  case GateKind::T: return {Gate::one_qubit(GateKind::Tdg, g.q0)};
  case GateKind::Tdg: return {Gate::one_qubit(GateKind::T, g.q0)};
  default: return {g}; // H, X, Y, Z, CX, CZ, SWAP are involutions
  }
}

void validate_gate(const Gate &g, uint32_t n) {
  if (g.q0 >= n)
    throw DimensionError("gate qubit " + std::to_string(g.q0) + " out of range for n=" + std::to_string(n));
  if (is_two_qubit(g.kind)) {
    if (g.q1 >= n)
      throw DimensionError("gate qubit " + std::to_string(g.q1) + " out of range for n=" + std::to_string(n));
    if (g.q0 == g.q1)
      throw DimensionError("two-qubit gate needs distinct qubits");
  }
}

void Circuit::append(const Gate &g) {
  validate_gate(g, n);
  gates.push_back(g);
}

void Circuit::extend(const Circuit &other) {
  if (other.n != n)
    throw DimensionError("cannot extend circuit: qubit counts differ");
  for (const auto &g : other.gates) gates.push_back(g);
}

uint32_t Circuit::t_count() const {
  uint32_t t = 0;
  for (const auto &g : gates)
    if (!is_clifford(g.kind)) t++;
  return t;
}

Circuit Circuit::inverse() const {
  Circuit inv(n);
  for (auto it = gates.rbegin(); it != gates.rend(); ++it)
    for (const auto &g : inverse_gates(*it)) inv.gates.push_back(g);
  return inv;
}

std::string emit_circuit_json(const Circuit &c) {
  nlohmann::ordered_json doc;
  doc["n"] = c.n;
  doc["gates"] = nlohmann::ordered_json::array();
  for (const auto &g : c.gates) {
    nlohmann::ordered_json rec;
    rec["g"] = gate_name(g.kind);
    if (is_two_qubit(g.kind))
      rec["q"] = {g.q0, g.q1};
    else
      rec["q"] = {g.q0};
    doc["gates"].push_back(rec);
  }
  if (c.label) doc["label"] = *c.label;
  if (c.seed) doc["seed"] = *c.seed;
  return doc.dump(2) + "\n";
}

Circuit parse_circuit_json(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("invalid circuit JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("gates"))
    throw ParseError("circuit JSON must contain 'n' and 'gates'");
  Circuit c;
  try {
    c.n = doc.at("n").get<uint32_t>();
    for (const auto &rec : doc.at("gates")) {
      GateKind kind = gate_kind_from_name(rec.at("g").get<std::string>());
      auto qs = rec.at("q").get<std::vector<uint32_t>>();
      size_t want = is_two_qubit(kind) ? 2 : 1;
      if (qs.size() != want)
        throw ParseError(std::string("gate ") + gate_name(kind) + " expects " + std::to_string(want) + " qubit(s)");
      Gate g{kind, qs[0], qs.size() > 1 ? qs[1] : 0};
      validate_gate(g, c.n);
      c.gates.push_back(g);
    }
    if (doc.contains("label")) c.label = doc.at("label").get<std::string>();
    if (doc.contains("seed")) c.seed = doc.at("seed").get<uint64_t>();
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("invalid circuit JSON: ") + e.what());
  } catch (const DimensionError &e) {
    throw ParseError(std::string("invalid circuit: ") + e.what());
  }
  return c;
}

Circuit load_circuit_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open circuit file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit_json(ss.str());
}

void save_circuit_file(const Circuit &c, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw ParseError("cannot write circuit file '" + path + "'");
  out << emit_circuit_json(c);
}

} // namespace qcert
