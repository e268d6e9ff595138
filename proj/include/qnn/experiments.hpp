// Copyright 2026 The qnn-entropy Authors
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

// Seeded Monte Carlo sweeps over QNN architectures.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnn/analysis.hpp"
#include "qnn/circuit.hpp"
#include "qnn/csv.hpp"

namespace qnn {

enum class ExperimentKind {
  BondProfile,
  ReuploadCompare,
  ScalingLtilde,
  Speed,
  Expressibility,
  CnotCheck,
  HaarTable,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

/// Unset optionals take per-experiment defaults (see README).
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::BondProfile;
  std::vector<std::size_t> n_values;
  std::optional<std::size_t> l_max;     // default 2n
  std::vector<std::size_t> l_values;    // explicit depth grid, overrides l_max
  std::optional<std::size_t> samples;
  std::uint64_t seed = 1;
  BlockKind feature = BlockKind::CZZ;
  BlockKind variational = BlockKind::C2;
  Topology topology = Topology::Linear;
  ReuploadMode mode = ReuploadMode::Alternated;
  double epsilon = 1e-9;
  std::size_t chi_max = 1024;
  std::size_t bins = 75;
  std::size_t pairs = 5000;
  std::size_t repetitions = 1;
  double threshold = 0.5;                // entangling-speed fit cut on s_tilde
  std::optional<double> s_tilde_stop;    // speed: stop once mean s_tilde exceeds this
  SpeedModel speed_model = SpeedModel::Affine;
  std::string output_path;
};

struct ExperimentResult {
  std::vector<ResultRecord> records;
  bool flagged = false;               // some point did not converge
  std::vector<std::string> messages;  // human-readable notes on flagged rows
};

/// Throws ConfigError naming the first invalid field.
void validate(const ExperimentConfig &config);

/// Runs one experiment. Output depends only on the config (including seed),
/// not on the number of worker threads.
ExperimentResult run(const ExperimentConfig &config);

/// Reads `key = value` lines; '#' starts a comment. Throws ConfigError on
/// malformed lines and Error when the file cannot be read.
std::map<std::string, std::string> read_key_values(const std::string &path);

/// Overlays key/value settings on `base`. Unknown keys and bad values throw
/// ConfigError.
ExperimentConfig apply_key_values(ExperimentConfig base,
                                  const std::map<std::string, std::string> &values);

/// Parses "4,6,8", "2..20" or a mix such as "2..6,8".
std::vector<std::size_t> parse_count_list(std::string_view text);

/// Seed for sample `index` of stream `stream` at register size n.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index,
                          std::uint64_t n);

} // namespace qnn
