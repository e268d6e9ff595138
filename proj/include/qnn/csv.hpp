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

// CSV persistence for experiment results.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnn {

inline constexpr std::string_view kCsvHeader =
    "experiment,n,L,bond,metric,mean,stderr,samples,seed,chi_max,epsilon,max_discarded";

/// One aggregate row. `bond` is -1 for scalar metrics; `n` is 0 for rows
/// pooled over register sizes and `layers` is 0 for depth-independent rows.
struct ResultRecord {
  std::string experiment;
  long long n = 0;
  long long layers = 0;
  long long bond = -1;
  std::string metric;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t chi_max = 0;
  double epsilon = 0.0;
  double max_discarded = 0.0;

  friend bool operator==(const ResultRecord &, const ResultRecord &) = default;
};

/// Header line plus one line per record; reals use 12 significant digits.
std::string format_csv(std::span<const ResultRecord> records);

/// Writes format_csv(records) to `path`. Throws Error naming the path on
/// I/O failure.
void emit_csv(std::span<const ResultRecord> records, const std::string &path);

/// Parses text produced by format_csv. Throws InvalidArgument on a header
/// mismatch or a malformed row.
std::vector<ResultRecord> parse_csv(std::string_view text);

} // namespace qnn
