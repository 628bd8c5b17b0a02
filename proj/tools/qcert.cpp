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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qcert/certify.hpp"
#include "qcert/doped.hpp"
#include "qcert/magic.hpp"
#include "qcert/report.hpp"
#include "qcert/tableau.hpp"

namespace fs = std::filesystem;
using namespace qcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitValidation = 4;

using Config = std::map<std::string, std::string>;

std::string cfg_get(const Config &c, const std::string &key, const std::string &fallback = "") {
  auto it = c.find(key);
  return it == c.end() ? fallback : it->second;
}

double cfg_double(const Config &c, const std::string &key, double fallback) {
  auto it = c.find(key);
  return it == c.end() ? fallback : std::stod(it->second);
}

uint64_t cfg_u64(const Config &c, const std::string &key, uint64_t fallback) {
  auto it = c.find(key);
  return it == c.end() ? fallback : std::stoull(it->second);
}

NoiseSpec parse_noise(const std::string &text) {
  if (text.empty() || text == "none") return {NoiseKind::None, 0};
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  double value = colon == std::string::npos ? 0.0 : std::stod(text.substr(colon + 1));
  if (kind == "depolarizing") return {NoiseKind::GlobalDepolarizing, value};
  if (kind == "local") return {NoiseKind::LocalDepolarizing, value};
  if (kind == "rotation") return {NoiseKind::CoherentOverrotation, value};
  throw ValidationError("unknown noise spec '" + text + "'");
}

void apply_limits(const Config &cfg) {
  uint64_t t_limit = cfg_u64(cfg, "t_limit", doped_limits().t);
  doped_limits().t = static_cast<uint32_t>(t_limit);
  uint64_t dense = cfg_u64(cfg, "dense_limit", dense_limits().pure);
  dense_limits().pure = static_cast<uint32_t>(dense);
  dense_limits().mixed = std::min<uint32_t>(dense_limits().mixed, dense_limits().pure);
}

EstimationConfig estimation_config(const Config &cfg) {
  EstimationConfig e;
  e.epsilon = cfg_double(cfg, "epsilon", 0.1);
  e.delta = cfg_double(cfg, "delta", 0.05);
  e.master_seed = cfg_u64(cfg, "seed", 1);
  e.shots_per_pauli = static_cast<uint32_t>(cfg_u64(cfg, "shots", 1));
  e.workers = static_cast<uint32_t>(cfg_u64(cfg, "workers", 0));
  if (cfg.count("k")) e.k_override = cfg_u64(cfg, "k", 0);
  if (cfg.count("theta")) e.theta = cfg_double(cfg, "theta", 0);
  if (cfg.count("shadow_k")) e.shadow_k = cfg_u64(cfg, "shadow_k", 0);
  if (cfg.count("shadow_l")) e.shadow_l = cfg_u64(cfg, "shadow_l", 0);
  e.validate();
  return e;
}

void emit_run_outputs(const Config &cfg, const std::string &subcommand,
                      const EstimationReport &rep) {
  std::string out_dir = cfg_get(cfg, "out");
  RunManifest manifest;
  manifest.subcommand = subcommand;
  manifest.config = cfg;
  manifest.master_seed = cfg_u64(cfg, "seed", 1);
  manifest.timestamp = current_timestamp_utc();
  if (out_dir.empty()) {
    std::cout << report_to_json(rep);
    return;
  }
  fs::create_directories(out_dir);
  write_text_file(out_dir + "/report.json", report_to_json(rep));
  write_text_file(out_dir + "/trials.jsonl", trials_to_jsonl(rep));
  write_text_file(out_dir + "/trials.csv", trials_to_csv(rep));
  write_text_file(out_dir + "/manifest.json", manifest.to_json());
  std::cout << subcommand << ": estimate=" << rep.estimate << " true=" << rep.true_value
            << " N=" << rep.sample_count << " N_cl=" << rep.n_cl
            << " total=" << rep.total_cost << " -> " << out_dir << "\n";
}

DensityMatrix prepared_state(const Circuit &target, const NoiseSpec &noise) {
  DenseState psi = simulate(target);
  DensityMatrix rho = DensityMatrix::from_pure(psi);
  if (noise.kind == NoiseKind::None) return rho;
  return apply_channel(rho, noise_model(noise, target.n));
}

int run_simulate(const Config &cfg) {
  apply_limits(cfg);
  Circuit c = load_circuit_file(cfg_get(cfg, "circuit"));
  uint64_t x = parse_bit_string(cfg_get(cfg, "x", std::string(c.n, '0')));
  uint32_t workers = static_cast<uint32_t>(cfg_u64(cfg, "workers", 0));
  OutcomeProbability p = outcome_probability(c, x, workers);
  std::printf("probability %.17g\n", p.probability);
  std::printf("terms %llu\n", static_cast<unsigned long long>(p.ledger.terms));
  std::printf("n_cl %llu\n", static_cast<unsigned long long>(p.ledger.n_cl));
  return kExitOk;
}

int run_magic(const Config &cfg) {
  apply_limits(cfg);
  Circuit c = load_circuit_file(cfg_get(cfg, "circuit"));
  DenseState psi = simulate(c);
  double nullity = stabilizer_nullity(psi);
  std::vector<MagicRow> rows;
  std::string alphas = cfg_get(cfg, "alpha", "0,1,2");
  size_t pos = 0;
  while (pos < alphas.size()) {
    size_t comma = alphas.find(',', pos);
    std::string tok = alphas.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
    double alpha = std::stod(tok);
    MagicReport rep = stabilizer_renyi_entropy(psi, alpha);
    rows.push_back({alpha, rep.value, rep.support, nullity});
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  std::string csv = magic_to_csv(rows);
  std::string out = cfg_get(cfg, "out");
  if (out.empty())
    std::cout << csv;
  else
    write_text_file(out, csv);
  return kExitOk;
}

int run_dfe(const Config &cfg) {
  apply_limits(cfg);
  Circuit target = load_circuit_file(cfg_get(cfg, "target"));
  DensityMatrix rho = prepared_state(target, parse_noise(cfg_get(cfg, "noise", "none")));
  EstimationConfig ecfg = estimation_config(cfg);
  std::string mode = cfg_get(cfg, "mode", "plain");
  EstimationReport rep;
  if (mode == "plain")
    rep = pauli_dfe(simulate(target), rho, ecfg);
  else if (mode == "truncated")
    rep = pauli_dfe_truncated(simulate(target), rho, ecfg);
  else if (mode == "mixed") {
    // mixed-state overlap Phi(rho, rho~): the target is the circuit state
    // degraded by --target-noise
    DensityMatrix rho_target =
        prepared_state(target, parse_noise(cfg_get(cfg, "target_noise", "none")));
    rep = pauli_dfe_mixed(rho_target, rho, ecfg);
  } else
    throw ValidationError("dfe mode must be plain, truncated or mixed");
  emit_run_outputs(cfg, "dfe", rep);
  return kExitOk;
}

int run_sfe(const Config &cfg) {
  apply_limits(cfg);
  Circuit target = load_circuit_file(cfg_get(cfg, "target"));
  DensityMatrix rho = prepared_state(target, parse_noise(cfg_get(cfg, "noise", "none")));
  EstimationConfig ecfg = estimation_config(cfg);
  EstimationReport rep = shadow_fidelity(target, rho, ecfg);
  emit_run_outputs(cfg, "sfe", rep);
  return kExitOk;
}

int run_process(const Config &cfg) {
  apply_limits(cfg);
  Circuit target = load_circuit_file(cfg_get(cfg, "target"));
  auto u = unitary_of_circuit(target);
  NoiseSpec noise = parse_noise(cfg_get(cfg, "noise", "none"));
  KrausChannel ch = unitary_channel(u, target.n);
  if (noise.kind != NoiseKind::None)
    ch = compose(noise_model(noise, target.n), ch);
  EstimationConfig ecfg = estimation_config(cfg);
  EstimationReport rep = process_fidelity_estimate(u, target.n, ch, ecfg);
  emit_run_outputs(cfg, "process", rep);
  return kExitOk;
}

int run_scaling(const Config &cfg) {
  apply_limits(cfg);
  std::string kind_name = cfg_get(cfg, "kind", "state");
  ScalingKind kind;
  if (kind_name == "state")
    kind = ScalingKind::StateEnsemble;
  else if (kind_name == "process")
    kind = ScalingKind::ProcessEnsemble;
  else
    throw ValidationError("scaling kind must be state or process");
  uint32_t n = static_cast<uint32_t>(cfg_u64(cfg, "n", 4));
  uint32_t t_min = static_cast<uint32_t>(cfg_u64(cfg, "t_min", 0));
  uint32_t t_max = static_cast<uint32_t>(cfg_u64(cfg, "t_max", 4));
  uint32_t samples = static_cast<uint32_t>(cfg_u64(cfg, "samples", 100));
  EstimationConfig ecfg = estimation_config(cfg);
  auto rows = scaling_experiment(kind, n, t_min, t_max, samples, ecfg);
  std::string csv = scaling_to_csv(rows);

  std::string out_dir = cfg_get(cfg, "out");
  RunManifest manifest;
  manifest.subcommand = "scaling";
  manifest.config = cfg;
  manifest.master_seed = ecfg.master_seed;
  manifest.timestamp = current_timestamp_utc();
  if (out_dir.empty()) {
    std::cout << csv;
  } else {
    fs::create_directories(out_dir);
    write_text_file(out_dir + "/scaling.csv", csv);
    write_text_file(out_dir + "/manifest.json", manifest.to_json());
    std::cout << "scaling: " << rows.size() << " rows -> " << out_dir << "\n";
  }
  return kExitOk;
}

int dispatch(const std::string &subcommand, const Config &cfg) {
  if (subcommand == "simulate") return run_simulate(cfg);
  if (subcommand == "magic") return run_magic(cfg);
  if (subcommand == "dfe") return run_dfe(cfg);
  if (subcommand == "sfe") return run_sfe(cfg);
  if (subcommand == "process") return run_process(cfg);
  if (subcommand == "scaling") return run_scaling(cfg);
  throw ValidationError("unknown subcommand in manifest: " + subcommand);
}

void add_common_flags(CLI::App *cmd, Config &cfg) {
  auto bind = [&cfg](const std::string &key) {
    return [&cfg, key](const std::string &v) { cfg[key] = v; };
  };
  cmd->add_option_function<std::string>("--epsilon", bind("epsilon"), "additive accuracy");
  cmd->add_option_function<std::string>("--delta", bind("delta"), "failure probability");
  cmd->add_option_function<std::string>("--seed", bind("seed"), "master seed");
  cmd->add_option_function<std::string>("--workers", bind("workers"),
                                        "worker threads (results never depend on this)");
  cmd->add_option_function<std::string>("--t-limit", bind("t_limit"), "max T count");
  cmd->add_option_function<std::string>("--dense-limit", bind("dense_limit"),
                                        "max dense-simulation qubits");
  cmd->add_option_function<std::string>("--out", bind("out"), "output directory or file");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Clifford+T simulation and fidelity-certification toolkit"};
  app.require_subcommand(1);

  Config cfg;
  auto bind = [&cfg](const std::string &key) {
    return [&cfg, key](const std::string &v) { cfg[key] = v; };
  };

  auto *simulate_cmd = app.add_subcommand("simulate", "exact outcome probability of a circuit");
  simulate_cmd->add_option_function<std::string>("circuit", bind("circuit"), "circuit JSON file")
      ->required();
  simulate_cmd->add_option_function<std::string>("--x", bind("x"),
                                                 "outcome bit string, qubit 0 leftmost");
  add_common_flags(simulate_cmd, cfg);

  auto *magic_cmd = app.add_subcommand("magic", "stabilizer Renyi entropies of a circuit state");
  magic_cmd->add_option_function<std::string>("circuit", bind("circuit"), "circuit JSON file")
      ->required();
  magic_cmd->add_option_function<std::string>("--alpha", bind("alpha"),
                                              "comma-separated Renyi orders (default 0,1,2)");
  add_common_flags(magic_cmd, cfg);

  auto *dfe_cmd = app.add_subcommand("dfe", "Pauli direct fidelity estimation");
  dfe_cmd->add_option_function<std::string>("target", bind("target"), "target circuit JSON")
      ->required();
  dfe_cmd->add_option_function<std::string>("--noise", bind("noise"),
                                            "none | depolarizing:p | local:p | rotation:angle");
  dfe_cmd->add_option_function<std::string>("--mode", bind("mode"), "plain | truncated | mixed");
  dfe_cmd->add_option_function<std::string>("--target-noise", bind("target_noise"),
                                            "noise defining a mixed target (mode=mixed)");
  dfe_cmd->add_option_function<std::string>("--k", bind("k"), "override sample count");
  dfe_cmd->add_option_function<std::string>("--shots", bind("shots"), "one-shot copies per Pauli");
  dfe_cmd->add_option_function<std::string>("--theta", bind("theta"), "truncation knob");
  add_common_flags(dfe_cmd, cfg);

  auto *sfe_cmd = app.add_subcommand("sfe", "shadow fidelity estimation");
  sfe_cmd->add_option_function<std::string>("target", bind("target"), "target circuit JSON")
      ->required();
  sfe_cmd->add_option_function<std::string>("--noise", bind("noise"), "noise spec");
  sfe_cmd->add_option_function<std::string>("--k", bind("shadow_k"), "snapshots per batch");
  sfe_cmd->add_option_function<std::string>("--l", bind("shadow_l"), "median batches");
  add_common_flags(sfe_cmd, cfg);

  auto *process_cmd = app.add_subcommand("process", "entanglement fidelity estimation");
  process_cmd->add_option_function<std::string>("target", bind("target"), "target circuit JSON")
      ->required();
  process_cmd->add_option_function<std::string>("--noise", bind("noise"), "noise spec");
  process_cmd->add_option_function<std::string>("--k", bind("k"), "override sample count");
  add_common_flags(process_cmd, cfg);

  auto *scaling_cmd = app.add_subcommand("scaling", "doped-ensemble scaling sweep");
  scaling_cmd->add_option_function<std::string>("--kind", bind("kind"), "state | process");
  scaling_cmd->add_option_function<std::string>("--n", bind("n"), "qubits");
  scaling_cmd->add_option_function<std::string>("--t-min", bind("t_min"), "first T count");
  scaling_cmd->add_option_function<std::string>("--t-max", bind("t_max"), "last T count");
  scaling_cmd->add_option_function<std::string>("--samples", bind("samples"), "states per t");
  add_common_flags(scaling_cmd, cfg);

  auto *rerun_cmd = app.add_subcommand("rerun", "reproduce a run from its manifest");
  std::string manifest_path;
  rerun_cmd->add_option("manifest", manifest_path, "manifest JSON file")->required();
  rerun_cmd->add_option_function<std::string>("--out", bind("out"), "override output directory");
  rerun_cmd->add_option_function<std::string>("--workers", bind("workers"),
                                              "override worker count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (simulate_cmd->parsed()) return run_simulate(cfg);
    if (magic_cmd->parsed()) return run_magic(cfg);
    if (dfe_cmd->parsed()) return run_dfe(cfg);
    if (sfe_cmd->parsed()) return run_sfe(cfg);
    if (process_cmd->parsed()) return run_process(cfg);
    if (scaling_cmd->parsed()) return run_scaling(cfg);
    if (rerun_cmd->parsed()) {
      RunManifest manifest = RunManifest::from_json(read_text_file(manifest_path));
      Config merged = manifest.config;
      for (const auto &[k, v] : cfg) merged[k] = v; // explicit overrides win
      return dispatch(manifest.subcommand, merged);
    }
  } catch (const CapacityError &e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ValidationError &e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionError &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
