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

#ifndef QCERT_REPORT_HPP
#define QCERT_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "qcert/certify.hpp"

namespace qcert {

inline constexpr const char *kArtifactVersion = "0.1.0";

// Everything needed to reproduce a run bit-exactly: the subcommand and its
// fully resolved configuration. The timestamp is informational only and is
// the one field excluded from reproducibility comparisons.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> config; // resolved flags, stringified
  uint64_t master_seed = 0;
  std::string version = kArtifactVersion;
  std::string timestamp; // ISO-8601, UTC

  std::string to_json() const;
  static RunManifest from_json(const std::string &text);
};

std::string current_timestamp_utc();

// Deterministic report document: same inputs give byte-identical output for
// any worker count. Trials go to a separate JSONL/CSV stream.
std::string report_to_json(const EstimationReport &rep);
std::string trials_to_jsonl(const EstimationReport &rep);
std::string trials_to_csv(const EstimationReport &rep);

std::string scaling_to_csv(const std::vector<ScalingRow> &rows);

struct MagicRow {
  double alpha = 0;
  double m_alpha = 0;
  int64_t support = 0;
  double nullity = 0;
};
std::string magic_to_csv(const std::vector<MagicRow> &rows);

void write_text_file(const std::string &path, const std::string &content);
std::string read_text_file(const std::string &path);

} // namespace qcert

#endif
