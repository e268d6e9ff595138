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

#include "qnn/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qnn/errors.hpp"

namespace qnn {

namespace {

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string &line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

} // namespace

std::string format_csv(std::span<const ResultRecord> records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto &r : records) {
    out += r.experiment + ',' + std::to_string(r.n) + ',' + std::to_string(r.layers) + ',' +
           std::to_string(r.bond) + ',' + r.metric + ',' + real(r.mean) + ',' + real(r.std_error) +
           ',' + std::to_string(r.samples) + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.chi_max) + ',' + real(r.epsilon) + ',' + real(r.max_discarded) + '\n';
  }
  return out;
}

void emit_csv(std::span<const ResultRecord> records, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot open '" + path + "' for writing");
  }
  out << format_csv(records);
  out.flush();
  if (!out) {
    throw Error("failed writing '" + path + "'");
  }
}

std::vector<ResultRecord> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw InvalidArgument("parse_csv: unexpected header");
  }
  std::vector<ResultRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 12) {
      throw InvalidArgument("parse_csv: line " + std::to_string(line_no) + " has " +
                            std::to_string(f.size()) + " fields");
    }
    try {
      ResultRecord r;
      r.experiment = f[0];
      r.n = std::stoll(f[1]);
      r.layers = std::stoll(f[2]);
      r.bond = std::stoll(f[3]);
      r.metric = f[4];
      r.mean = std::stod(f[5]);
      r.std_error = std::stod(f[6]);
      r.samples = std::stoull(f[7]);
      r.seed = std::stoull(f[8]);
      r.chi_max = std::stoull(f[9]);
      r.epsilon = std::stod(f[10]);
      r.max_discarded = std::stod(f[11]);
      records.push_back(std::move(r));
    } catch (const std::logic_error &) {
      throw InvalidArgument("parse_csv: malformed number on line " + std::to_string(line_no));
    }
  }
  return records;
}

} // namespace qnn
