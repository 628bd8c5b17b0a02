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

#include "qcert/report.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcert {

namespace {

// Shortest round-trip decimal form so documents are byte-stable.
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    for (int prec = 1; prec < 17; prec++) {
      char shorter[64];
      std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
      if (std::strtod(shorter, nullptr) == v) return shorter;
    }
  }
  return buf;
}

} // namespace

std::string current_timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["subcommand"] = subcommand;
  nlohmann::ordered_json cfg;
  for (const auto &[k, v] : config) cfg[k] = v;
  doc["config"] = cfg;
  doc["master_seed"] = master_seed;
  doc["version"] = version;
  doc["timestamp"] = timestamp;
  return doc.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    RunManifest m;
    m.subcommand = doc.at("subcommand").get<std::string>();
    for (const auto &[k, v] : doc.at("config").items()) m.config[k] = v.get<std::string>();
    m.master_seed = doc.at("master_seed").get<uint64_t>();
    m.version = doc.at("version").get<std::string>();
    if (doc.contains("timestamp")) m.timestamp = doc.at("timestamp").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("invalid manifest: ") + e.what());
  }
}

std::string report_to_json(const EstimationReport &rep) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"protocol\": \"" << rep.protocol << "\",\n";
  out << "  \"estimate\": " << fmt_double(rep.estimate) << ",\n";
  out << "  \"true_value\": " << fmt_double(rep.true_value) << ",\n";
  out << "  \"k\": " << rep.k << ",\n";
  out << "  \"sample_count\": " << rep.sample_count << ",\n";
  out << "  \"n_cl\": " << rep.n_cl << ",\n";
  out << "  \"total_cost\": " << rep.total_cost << ",\n";
  out << "  \"protocol_lower_bound\": " << fmt_double(rep.protocol_lower_bound) << ",\n";
  out << "  \"protocol_upper_bound\": " << fmt_double(rep.protocol_upper_bound) << ",\n";
  out << "  \"master_seed\": " << rep.master_seed << ",\n";
  out << "  \"trial_count\": " << rep.trials.size() << "\n";
  out << "}\n";
  return out.str();
}

std::string trials_to_jsonl(const EstimationReport &rep) {
  std::ostringstream out;
  for (const auto &t : rep.trials) {
    nlohmann::ordered_json rec;
    rec["trial"] = t.trial;
    rec["sampled"] = t.sampled;
    rec["outcome"] = t.outcome;
    rec["term"] = t.term;
    out << rec.dump() << "\n";
  }
  return out.str();
}

std::string trials_to_csv(const EstimationReport &rep) {
  std::ostringstream out;
  out << "trial,sampled,outcome,term\n";
  for (const auto &t : rep.trials)
    out << t.trial << "," << t.sampled << "," << fmt_double(t.outcome) << ","
        << fmt_double(t.term) << "\n";
  return out.str();
}

std::string scaling_to_csv(const std::vector<ScalingRow> &rows) {
  std::ostringstream out;
  out << "t,mean_exp_m2,stderr,paper_bound,ratio\n";
  for (const auto &r : rows)
    out << r.t << "," << fmt_double(r.mean) << "," << fmt_double(r.stderr_) << ","
        << fmt_double(r.paper_bound) << "," << fmt_double(r.ratio) << "\n";
  return out.str();
}

std::string magic_to_csv(const std::vector<MagicRow> &rows) {
  std::ostringstream out;
  out << "alpha,M_alpha,support,nullity\n";
  for (const auto &r : rows)
    out << fmt_double(r.alpha) << "," << fmt_double(r.m_alpha) << "," << r.support << ","
        << fmt_double(r.nullity) << "\n";
  return out.str();
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ParseError("cannot write file '" + path + "'");
  out << content;
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot read file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace qcert
