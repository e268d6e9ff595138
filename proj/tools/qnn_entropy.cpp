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

// qnn-entropy: batch driver for the entanglement experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qnn/csv.hpp"
#include "qnn/errors.hpp"
#include "qnn/experiments.hpp"
#include "qnn/gf2.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitFlagged = 3;

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw qnn::ConfigError("circuit", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Compares the CNOT networks in two circuit text files over GF(2).
int compare_circuits(const std::string &circuit, const std::string &reference) {
  const auto a = qnn::parse_circuit_text(slurp(circuit));
  const auto b = qnn::parse_circuit_text(slurp(reference));
  std::size_t n = 2;
  for (const auto *ops : {&a, &b}) {
    for (const auto &g : *ops) {
      n = std::max(n, std::size_t(g.qubits[0]) + 1);
      if (g.arity() == 2) n = std::max(n, std::size_t(g.qubits[1]) + 1);
    }
  }
  const bool equal = qnn::cnot_network_matrix(a, n) == qnn::cnot_network_matrix(b, n);
  std::printf("%s n=%zu\n", equal ? "PASS" : "FAIL", n);
  return equal ? kExitOk : kExitFlagged;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Entanglement experiments on tensor-network QNN simulations"};
  std::string experiment;
  std::string config_path;
  std::string n_text, layers_text, feature, variational, topology, mode, out;
  std::optional<std::size_t> l_max, samples, chi_max, bins, pairs, repetitions, seed;
  std::optional<double> epsilon, threshold, s_tilde_stop;
  std::string circuit_path, reference_path, speed_model;

  app.add_option("experiment", experiment,
                 "bond-profile | reupload-compare | scaling-ltilde | speed | expressibility | "
                 "cnot-check | haar-table")
      ->required();
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--n", n_text, "register sizes, e.g. 4,6,8 or 2..20");
  app.add_option("--lmax", l_max, "deepest layer count (default 2n)");
  app.add_option("--layers", layers_text, "explicit depth grid, e.g. 1,2,4,8");
  app.add_option("--samples", samples, "Monte Carlo samples per cell");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--feature", feature, "feature block: C1 | C2 | C3 | CZZ");
  app.add_option("--variational", variational, "variational block: C1 | C2 | C3 | CZZ");
  app.add_option("--topology", topology, "linear | circular | full");
  app.add_option("--mode", mode, "alternated | sequential");
  app.add_option("--chi-max", chi_max, "bond dimension cap");
  app.add_option("--epsilon", epsilon, "relative singular value cutoff");
  app.add_option("--bins", bins, "expressibility histogram bins");
  app.add_option("--pairs", pairs, "expressibility state pairs per repetition");
  app.add_option("--repetitions", repetitions, "expressibility repetitions");
  app.add_option("--threshold", threshold, "speed fit cut on normalized entropy");
  app.add_option("--s-tilde-stop", s_tilde_stop, "speed: stop once the mean exceeds this");
  app.add_option("--speed-model", speed_model, "speed fit: affine | origin");
  app.add_option("--circuit", circuit_path, "cnot-check: circuit text file to compare");
  app.add_option("--reference", reference_path, "cnot-check: reference circuit text file");
  app.add_option("--out", out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto kind = qnn::parse_experiment_kind(experiment);
    if (!kind) throw qnn::ConfigError("experiment", "unknown experiment '" + experiment + "'");

    if (*kind == qnn::ExperimentKind::CnotCheck && !circuit_path.empty()) {
      if (reference_path.empty()) throw qnn::ConfigError("reference", "required with --circuit");
      return compare_circuits(circuit_path, reference_path);
    }

    std::map<std::string, std::string> values;
    if (!config_path.empty()) values = qnn::read_key_values(config_path);
    auto set = [&](const char *key, const auto &opt) {
      if (opt) values[key] = std::to_string(*opt);
    };
    auto set_text = [&](const char *key, const std::string &text) {
      if (!text.empty()) values[key] = text;
    };
    set_text("n", n_text);
    set_text("layers", layers_text);
    set_text("feature", feature);
    set_text("variational", variational);
    set_text("topology", topology);
    set_text("mode", mode);
    set_text("out", out);
    set_text("speed_model", speed_model);
    set("lmax", l_max);
    set("samples", samples);
    set("seed", seed);
    set("chi_max", chi_max);
    set("bins", bins);
    set("pairs", pairs);
    set("repetitions", repetitions);
    if (epsilon) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", *epsilon);
      values["epsilon"] = buf;
    }
    if (threshold) values["threshold"] = std::to_string(*threshold);
    if (s_tilde_stop) values["s_tilde_stop"] = std::to_string(*s_tilde_stop);

    qnn::ExperimentConfig base;
    base.experiment = *kind;
    auto config = qnn::apply_key_values(base, values);
    if (config.experiment != *kind) {
      throw qnn::ConfigError("experiment", "config file names a different experiment");
    }
    if (config.output_path.empty()) throw qnn::ConfigError("out", "an output path is required");
    qnn::validate(config);

    const auto result = qnn::run(config);
    qnn::emit_csv(result.records, config.output_path);
    for (const auto &m : result.messages) std::fprintf(stderr, "warning: %s\n", m.c_str());
    return result.flagged ? kExitFlagged : kExitOk;
  } catch (const qnn::ConfigError &e) {
    std::fprintf(stderr, "config error [%s]: %s\n", e.field().c_str(), e.what());
    return kExitConfig;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
}
