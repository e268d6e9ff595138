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

#include "qnn/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "qnn/analysis.hpp"
#include "qnn/errors.hpp"
#include "qnn/gf2.hpp"
#include "qnn/haar.hpp"
#include "qnn/parallel.hpp"

namespace qnn {

namespace {

constexpr std::uint64_t kSampleStream = 1;
constexpr std::uint64_t kPairStreamBase = 1000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::size_t> default_n_values(ExperimentKind kind) {
  switch (kind) {
  case ExperimentKind::ScalingLtilde: return {4, 6, 8, 10, 12};
  case ExperimentKind::Speed: return {8, 12, 16};
  case ExperimentKind::CnotCheck: return parse_count_list("2..20");
  case ExperimentKind::HaarTable: return parse_count_list("2..16");
  default: return {8};
  }
}

std::size_t sample_count(const ExperimentConfig &c, std::size_t n) {
  if (c.samples) return *c.samples;
  switch (c.experiment) {
  case ExperimentKind::ReuploadCompare: return 1000;
  case ExperimentKind::Speed: return n <= 20 ? 1000 : 20;
  default: return 100;
  }
}

std::vector<std::size_t> depth_grid(const ExperimentConfig &c, std::size_t n) {
  if (!c.l_values.empty()) {
    std::set<std::size_t> unique(c.l_values.begin(), c.l_values.end());
    return {unique.begin(), unique.end()};
  }
  const std::size_t l_max = c.l_max.value_or(2 * n);
  std::vector<std::size_t> grid(l_max);
  for (std::size_t l = 0; l < l_max; ++l) grid[l] = l + 1;
  return grid;
}

QnnSpec make_spec(const ExperimentConfig &c, std::size_t n, std::size_t layers,
                  ReuploadMode mode = ReuploadMode::Alternated) {
  QnnSpec spec;
  spec.n = n;
  spec.layers = layers;
  spec.feature = c.feature;
  spec.variational = c.variational;
  spec.topology = c.topology;
  spec.mode = mode;
  spec.policy.epsilon = c.epsilon;
  spec.policy.chi_max = c.chi_max;
  return spec;
}

struct RecordFactory {
  const ExperimentConfig &config;

  ResultRecord operator()(std::size_t n, long long layers, long long bond, std::string metric,
                          Estimate e, std::size_t samples, double max_discarded = 0.0) const {
    ResultRecord r;
    r.experiment = std::string(to_string(config.experiment));
    r.n = static_cast<long long>(n);
    r.layers = layers;
    r.bond = bond;
    r.metric = std::move(metric);
    r.mean = e.mean;
    r.std_error = e.std_error;
    r.samples = samples;
    r.seed = config.seed;
    r.chi_max = config.chi_max;
    r.epsilon = config.epsilon;
    r.max_discarded = max_discarded;
    return r;
  }
};

// Profiles of one alternated sample at every depth of the grid.
struct SampleTrace {
  std::vector<EntanglementProfile> profiles;
  std::vector<double> discarded; // cumulative
};

SampleTrace trace_sample(const QnnSpec &deepest, std::uint64_t seed,
                         const std::vector<std::size_t> &grid) {
  const ParamVector params = sample_params(deepest, seed);
  SampleTrace trace;
  if (deepest.mode == ReuploadMode::Sequential) {
    // no shared prefix across depths: rebuild with the leading weight layers
    for (std::size_t target : grid) {
      QnnSpec spec = deepest;
      spec.layers = target;
      ParamVector prefix = params;
      prefix.weights.resize(target);
      MpsState state = MpsState::zero(spec.n, spec.policy);
      const double d = apply_gates(state, build_qnn(spec, prefix));
      trace.profiles.push_back(state.entanglement_profile());
      trace.discarded.push_back(d);
    }
    return trace;
  }
  LayerwiseRun run(deepest, params);
  for (std::size_t target : grid) {
    while (run.layers_applied() < target) run.advance();
    trace.profiles.push_back(run.state().entanglement_profile());
    trace.discarded.push_back(run.discarded_weight());
  }
  return trace;
}

std::vector<SampleTrace> trace_samples(const ExperimentConfig &c, std::size_t n,
                                       const std::vector<std::size_t> &grid) {
  const std::size_t m = sample_count(c, n);
  const QnnSpec deepest = make_spec(c, n, grid.back(), c.mode);
  std::vector<SampleTrace> traces(m);
  parallel_for(m, [&](std::size_t i) {
    traces[i] = trace_sample(deepest, derive_seed(c.seed, kSampleStream, i, n), grid);
  });
  return traces;
}

double max_discarded_at(const std::vector<SampleTrace> &traces, std::size_t g) {
  double worst = 0.0;
  for (const auto &t : traces) worst = std::max(worst, t.discarded[g]);
  return worst;
}

void append_haar_rows(const RecordFactory &record, std::size_t n, bool per_bond,
                      std::vector<ResultRecord> &out) {
  const HaarProfile haar = haar_profile(n);
  if (per_bond) {
    for (std::size_t b = 1; b < n; ++b) {
      out.push_back(record(n, 0, static_cast<long long>(b), "haar_entropy",
                           {haar.entropies[b - 1], 0.0}, 0));
    }
  }
  out.push_back(record(n, 0, -1, "haar_total", {haar.total, 0.0}, 0));
}

ExperimentResult run_bond_profile(const ExperimentConfig &c) {
  ExperimentResult result;
  const RecordFactory record{c};
  for (std::size_t n : c.n_values) {
    const auto grid = depth_grid(c, n);
    const auto traces = trace_samples(c, n, grid);
    const std::size_t m = traces.size();
    std::vector<double> values(m);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const auto layers = static_cast<long long>(grid[g]);
      const double worst = max_discarded_at(traces, g);
      for (std::size_t b = 1; b < n; ++b) {
        for (std::size_t i = 0; i < m; ++i) values[i] = traces[i].profiles[g].entropies[b - 1];
        result.records.push_back(record(n, layers, static_cast<long long>(b), "entropy",
                                        mean_and_error(values), m, worst));
      }
      for (std::size_t i = 0; i < m; ++i) values[i] = traces[i].profiles[g].total();
      result.records.push_back(
          record(n, layers, -1, "total_entropy", mean_and_error(values), m, worst));
    }
    append_haar_rows(record, n, true, result.records);
  }
  return result;
}

ExperimentResult run_scaling_ltilde(const ExperimentConfig &c) {
  ExperimentResult result;
  const RecordFactory record{c};
  for (std::size_t n : c.n_values) {
    const auto grid = depth_grid(c, n);
    const auto traces = trace_samples(c, n, grid);
    const std::size_t m = traces.size();
    AggregatedSeries series;
    series.n = n;
    series.samples = m;
    std::vector<double> values(m);
    double worst = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      for (std::size_t i = 0; i < m; ++i) values[i] = traces[i].profiles[g].total();
      const Estimate e = mean_and_error(values);
      worst = max_discarded_at(traces, g);
      series.points.push_back({grid[g], e.mean, e.std_error});
      result.records.push_back(
          record(n, static_cast<long long>(grid[g]), -1, "total_entropy", e, m, worst));
    }
    const double haar_total = haar_profile(n).total;
    append_haar_rows(record, n, false, result.records);
    try {
      const std::size_t ltilde = entangling_layers(series, haar_total);
      result.records.push_back(record(n, static_cast<long long>(ltilde), -1, "ltilde",
                                      {static_cast<double>(ltilde), 0.0}, m, worst));
    } catch (const NotConvergedError &e) {
      result.flagged = true;
      result.messages.push_back(e.what());
      result.records.push_back(record(n, static_cast<long long>(grid.back()), -1,
                                      "ltilde_not_converged", {-1.0, 0.0}, m, worst));
    }
  }
  return result;
}

ExperimentResult run_reupload_compare(const ExperimentConfig &c) {
  ExperimentResult result;
  const RecordFactory record{c};
  for (std::size_t n : c.n_values) {
    const auto grid = depth_grid(c, n);
    const std::size_t m = sample_count(c, n);
    const std::size_t bond = n / 2;
    const QnnSpec deepest = make_spec(c, n, grid.back());
    // alt[g][i], seq[g][i]
    std::vector<std::vector<double>> alt(grid.size(), std::vector<double>(m));
    std::vector<std::vector<double>> seq(grid.size(), std::vector<double>(m));
    std::vector<std::vector<double>> discarded(grid.size(), std::vector<double>(m));
    parallel_for(m, [&](std::size_t i) {
      const std::uint64_t seed = derive_seed(c.seed, kSampleStream, i, n);
      const ParamVector params = sample_params(deepest, seed);
      LayerwiseRun run(deepest, params);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        while (run.layers_applied() < grid[g]) run.advance();
        alt[g][i] = run.state().bond_entropy(bond);

        QnnSpec sequential = make_spec(c, n, grid[g], ReuploadMode::Sequential);
        ParamVector prefix = params;
        prefix.weights.resize(grid[g]);
        const auto gates = build_qnn(sequential, prefix);
        MpsState state = MpsState::zero(n, sequential.policy);
        const double d = apply_gates(state, gates);
        seq[g][i] = state.bond_entropy(bond);
        discarded[g][i] = std::max(run.discarded_weight(), d);
      }
    });
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const auto layers = static_cast<long long>(grid[g]);
      const double worst = *std::max_element(discarded[g].begin(), discarded[g].end());
      const auto b = static_cast<long long>(bond);
      result.records.push_back(record(n, layers, b, "s_alt", mean_and_error(alt[g]), m, worst));
      result.records.push_back(record(n, layers, b, "s_seq", mean_and_error(seq[g]), m, worst));
      result.records.push_back(
          record(n, layers, -1, "delta_s_bar", delta_s_bar_paired(alt[g], seq[g]), m, worst));
    }
  }
  return result;
}

// Fit with errors from the spread of per-sample projections. Points of one n
// share trajectories, so the pointwise covariance would understate the error.
struct SpeedSeries {
  std::size_t n = 0;
  std::vector<SpeedPoint> points;
  std::vector<std::vector<double>> per_sample; // [point][sample]
};

SpeedFit fit_series(std::span<const SpeedSeries> series, const ExperimentConfig &c) {
  std::vector<SpeedPoint> points;
  for (const auto &s : series) points.insert(points.end(), s.points.begin(), s.points.end());
  SpeedFit fit = fit_entangling_speed(points, c.threshold, c.speed_model);
  const auto coef = speed_fit_coefficients(points, c.threshold, c.speed_model);
  double var_slope = 0.0, var_offset = 0.0;
  std::size_t base = 0;
  for (const auto &s : series) {
    const std::size_t m = s.per_sample.empty() ? 0 : s.per_sample.front().size();
    std::vector<double> slope(m, 0.0), offset(m, 0.0);
    for (std::size_t k = 0; k < s.points.size(); ++k)
      for (std::size_t i = 0; i < m; ++i) {
        slope[i] += coef.slope[base + k] * s.per_sample[k][i];
        offset[i] += coef.offset[base + k] * s.per_sample[k][i];
      }
    base += s.points.size();
    if (m < 2) continue;
    const double es = mean_and_error(slope).std_error, eo = mean_and_error(offset).std_error;
    var_slope += es * es;
    var_offset += eo * eo;
  }
  fit.v_s_error = std::sqrt(var_slope);
  fit.offset_error = std::sqrt(var_offset);
  return fit;
}

ExperimentResult run_speed(const ExperimentConfig &c) {
  ExperimentResult result;
  const RecordFactory record{c};
  const double stop = c.s_tilde_stop.value_or(c.threshold);
  std::vector<SpeedSeries> all;

  for (std::size_t n : c.n_values) {
    const auto grid = depth_grid(c, n);
    const std::size_t m = sample_count(c, n);
    const QnnSpec deepest = make_spec(c, n, grid.back());
    const double normalizer = haar_max(n);
    std::vector<LayerwiseRun> runs;
    runs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      runs.emplace_back(deepest, sample_params(deepest, derive_seed(c.seed, kSampleStream, i, n)));
    }
    SpeedSeries series{n, {}, {}};
    for (std::size_t target : grid) {
      std::vector<double> s_tilde(m);
      parallel_for(m, [&](std::size_t i) {
        while (runs[i].layers_applied() < target) runs[i].advance();
        s_tilde[i] = runs[i].state().entanglement_profile().max() / normalizer;
      });
      const Estimate e = mean_and_error(s_tilde);
      double worst = 0.0;
      for (const auto &r : runs) worst = std::max(worst, r.discarded_weight());
      result.records.push_back(
          record(n, static_cast<long long>(target), -1, "s_tilde", e, m, worst));
      const double x = static_cast<double>(target) / static_cast<double>(n);
      const double weight = e.std_error > 0.0 ? 1.0 / (e.std_error * e.std_error) : 1.0;
      series.points.push_back({x, e.mean, weight});
      series.per_sample.push_back(std::move(s_tilde));
      if (e.mean > stop) break;
    }
    all.push_back(std::move(series));
  }

  auto emit_fit = [&](std::size_t n, std::span<const SpeedSeries> series, std::size_t m) {
    try {
      const SpeedFit fit = fit_series(series, c);
      result.records.push_back(record(n, 0, -1, "v_s", {fit.v_s, fit.v_s_error}, m));
      result.records.push_back(record(n, 0, -1, "v_s_offset", {fit.offset, fit.offset_error}, m));
      result.records.push_back(record(n, 0, -1, "v_s_points",
                                      {static_cast<double>(fit.points_used), 0.0}, m));
    } catch (const InsufficientDataError &e) {
      result.messages.push_back("n=" + std::to_string(n) + ": " + e.what());
      if (n == 0) result.flagged = true;
    }
  };
  for (std::size_t k = 0; k < all.size(); ++k)
    emit_fit(all[k].n, std::span(all).subspan(k, 1), sample_count(c, all[k].n));
  emit_fit(0, all, c.samples.value_or(0));
  return result;
}

ExperimentResult run_expressibility(const ExperimentConfig &c) {
  ExperimentResult result;
  const RecordFactory record{c};
  for (std::size_t n : c.n_values) {
    const auto grid = depth_grid(c, n);
    const QnnSpec deepest = make_spec(c, n, grid.back());
    const std::uint64_t dim = std::uint64_t{1} << n;
    // kl[g][rep]
    std::vector<std::vector<double>> kl(grid.size(), std::vector<double>(c.repetitions));
    std::vector<double> worst(grid.size(), 0.0);
    for (std::size_t rep = 0; rep < c.repetitions; ++rep) {
      std::vector<std::vector<double>> fidelity(grid.size(), std::vector<double>(c.pairs));
      std::vector<std::vector<double>> discarded(grid.size(), std::vector<double>(c.pairs));
      const std::uint64_t stream_a = kPairStreamBase + 2 * rep;
      parallel_for(c.pairs, [&](std::size_t j) {
        LayerwiseRun a(deepest, sample_params(deepest, derive_seed(c.seed, stream_a, j, n)));
        LayerwiseRun b(deepest, sample_params(deepest, derive_seed(c.seed, stream_a + 1, j, n)));
        for (std::size_t g = 0; g < grid.size(); ++g) {
          while (a.layers_applied() < grid[g]) {
            a.advance();
            b.advance();
          }
          fidelity[g][j] = std::min(1.0, std::norm(a.state().overlap(b.state())));
          discarded[g][j] = std::max(a.discarded_weight(), b.discarded_weight());
        }
      });
      for (std::size_t g = 0; g < grid.size(); ++g) {
        kl[g][rep] = expressibility(fidelity[g], dim, c.bins);
        worst[g] = std::max(worst[g], *std::max_element(discarded[g].begin(), discarded[g].end()));
      }
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
      result.records.push_back(record(n, static_cast<long long>(grid[g]), -1, "expressibility",
                                      mean_and_error(kl[g]), c.pairs, worst[g]));
    }
  }
  return result;
}

ExperimentResult run_cnot_check(const ExperimentConfig &c) {
  ExperimentResult result;
  const RecordFactory record{c};
  for (std::size_t n : c.n_values) {
    const CnotIdentityCheck check = check_full_equals_reversed_linear(n);
    result.records.push_back(
        record(n, 0, -1, "cnot_identity_gf2", {check.gf2_equal ? 1.0 : 0.0, 0.0}, 1));
    if (check.dense_checked) {
      result.records.push_back(
          record(n, 0, -1, "cnot_identity_dense", {check.dense_equal ? 1.0 : 0.0, 0.0}, 1));
    }
    if (!check.passed()) {
      result.flagged = true;
      result.messages.push_back("cnot identity failed at n=" + std::to_string(n));
    }
  }
  return result;
}

ExperimentResult run_haar_table(const ExperimentConfig &c) {
  ExperimentResult result;
  const RecordFactory record{c};
  for (std::size_t n : c.n_values) {
    append_haar_rows(record, n, true, result.records);
    result.records.push_back(record(n, 0, -1, "haar_max", {haar_max(n), 0.0}, 0));
    if (n >= 4 && n % 2 == 0) {
      result.records.push_back(record(n, 0, -1, "haar_average", {haar_average(n), 0.0}, 0));
    }
  }
  return result;
}

std::string normalize_key(std::string key) {
  for (auto &ch : key) {
    ch = ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return key;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::size_t parse_count(const std::string &field, const std::string &text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error &) {
    throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  }
}

double parse_real(const std::string &field, const std::string &text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error &) {
    throw ConfigError(field, "expected a number, got '" + text + "'");
  }
}

} // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
  case ExperimentKind::BondProfile: return "bond-profile";
  case ExperimentKind::ReuploadCompare: return "reupload-compare";
  case ExperimentKind::ScalingLtilde: return "scaling-ltilde";
  case ExperimentKind::Speed: return "speed";
  case ExperimentKind::Expressibility: return "expressibility";
  case ExperimentKind::CnotCheck: return "cnot-check";
  case ExperimentKind::HaarTable: return "haar-table";
  }
  return "?";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
  for (auto k : {ExperimentKind::BondProfile, ExperimentKind::ReuploadCompare,
                 ExperimentKind::ScalingLtilde, ExperimentKind::Speed,
                 ExperimentKind::Expressibility, ExperimentKind::CnotCheck,
                 ExperimentKind::HaarTable}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index,
                          std::uint64_t n) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ index);
  return splitmix64(h ^ n);
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item =
        trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                : comma - start));
    if (!item.empty()) {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(parse_count("n", item));
      } else {
        const std::size_t lo = parse_count("n", trim(item.substr(0, dots)));
        const std::size_t hi = parse_count("n", trim(item.substr(dots + 2)));
        if (hi < lo) throw ConfigError("n", "empty range '" + item + "'");
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
      }
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void validate(const ExperimentConfig &c) {
  const bool simulates = c.experiment != ExperimentKind::CnotCheck &&
                         c.experiment != ExperimentKind::HaarTable;
  for (std::size_t n : c.n_values) {
    if (n < 2) throw ConfigError("n", "register sizes must be >= 2");
    if (c.experiment == ExperimentKind::HaarTable && n > 62)
      throw ConfigError("n", "haar-table supports n <= 62");
    if (c.experiment == ExperimentKind::CnotCheck && n > kMaxGf2Qubits)
      throw ConfigError("n", "cnot-check supports n <= 64");
  }
  if (c.l_max && *c.l_max < 1) throw ConfigError("lmax", "must be >= 1");
  for (std::size_t l : c.l_values) {
    if (l < 1) throw ConfigError("layers", "depths must be >= 1");
  }
  if (c.samples && *c.samples < 1) throw ConfigError("samples", "must be >= 1");
  if (simulates && c.experiment == ExperimentKind::ReuploadCompare && c.samples && *c.samples < 2)
    throw ConfigError("samples", "reupload-compare needs at least 2 samples");
  if (!(c.epsilon >= 0.0 && c.epsilon < 1.0)) throw ConfigError("epsilon", "must lie in [0, 1)");
  if (c.chi_max < 1) throw ConfigError("chi_max", "must be >= 1");
  if (c.bins < 2) throw ConfigError("bins", "must be >= 2");
  if (c.pairs < 1) throw ConfigError("pairs", "must be >= 1");
  if (c.repetitions < 1) throw ConfigError("repetitions", "must be >= 1");
  if (!(c.threshold > 0.0)) throw ConfigError("threshold", "must be positive");
  if (c.s_tilde_stop && !(*c.s_tilde_stop > 0.0))
    throw ConfigError("s_tilde_stop", "must be positive");
  if ((c.experiment == ExperimentKind::Speed || c.experiment == ExperimentKind::Expressibility) &&
      c.mode != ReuploadMode::Alternated) {
    throw ConfigError("mode", std::string(to_string(c.experiment)) + " runs alternated circuits only");
  }
  if (c.experiment == ExperimentKind::Expressibility) {
    for (std::size_t n : c.n_values) {
      if (n > 62) throw ConfigError("n", "expressibility supports n <= 62");
    }
  }
}

ExperimentResult run(const ExperimentConfig &config) {
  ExperimentConfig c = config;
  if (c.n_values.empty()) c.n_values = default_n_values(c.experiment);
  validate(c);
  switch (c.experiment) {
  case ExperimentKind::BondProfile: return run_bond_profile(c);
  case ExperimentKind::ReuploadCompare: return run_reupload_compare(c);
  case ExperimentKind::ScalingLtilde: return run_scaling_ltilde(c);
  case ExperimentKind::Speed: return run_speed(c);
  case ExperimentKind::Expressibility: return run_expressibility(c);
  case ExperimentKind::CnotCheck: return run_cnot_check(c);
  case ExperimentKind::HaarTable: return run_haar_table(c);
  }
  return {};
}

std::map<std::string, std::string> read_key_values(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot read config file '" + path + "'");
  }
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected key=value");
    }
    values[normalize_key(trim(body.substr(0, eq)))] = trim(body.substr(eq + 1));
  }
  return values;
}

ExperimentConfig apply_key_values(ExperimentConfig c,
                                  const std::map<std::string, std::string> &values) {
  for (const auto &[raw_key, value] : values) {
    const std::string key = normalize_key(raw_key);
    if (key == "experiment") {
      const auto kind = parse_experiment_kind(value);
      if (!kind) throw ConfigError(key, "unknown experiment '" + value + "'");
      c.experiment = *kind;
    } else if (key == "n" || key == "n_values") {
      c.n_values = parse_count_list(value);
    } else if (key == "lmax" || key == "l_max") {
      c.l_max = parse_count(key, value);
    } else if (key == "layers" || key == "l_values") {
      c.l_values = parse_count_list(value);
    } else if (key == "samples") {
      c.samples = parse_count(key, value);
    } else if (key == "seed") {
      try {
        c.seed = std::stoull(value);
      } catch (const std::logic_error &) {
        throw ConfigError(key, "expected an unsigned integer, got '" + value + "'");
      }
    } else if (key == "feature" || key == "variational") {
      const auto kind = parse_block_kind(value);
      if (!kind) throw ConfigError(key, "unknown block '" + value + "'");
      (key == "feature" ? c.feature : c.variational) = *kind;
    } else if (key == "topology") {
      const auto t = parse_topology(value);
      if (!t) throw ConfigError(key, "unknown topology '" + value + "'");
      c.topology = *t;
    } else if (key == "mode") {
      const auto m = parse_reupload_mode(value);
      if (!m) throw ConfigError(key, "unknown mode '" + value + "'");
      c.mode = *m;
    } else if (key == "epsilon") {
      c.epsilon = parse_real(key, value);
    } else if (key == "chi_max") {
      c.chi_max = parse_count(key, value);
    } else if (key == "bins") {
      c.bins = parse_count(key, value);
    } else if (key == "pairs") {
      c.pairs = parse_count(key, value);
    } else if (key == "repetitions") {
      c.repetitions = parse_count(key, value);
    } else if (key == "threshold") {
      c.threshold = parse_real(key, value);
    } else if (key == "s_tilde_stop") {
      c.s_tilde_stop = parse_real(key, value);
    } else if (key == "speed_model") {
      std::string v = value;
      for (auto &ch : v) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (v == "affine") {
        c.speed_model = SpeedModel::Affine;
      } else if (v == "origin" || v == "through_origin") {
        c.speed_model = SpeedModel::ThroughOrigin;
      } else {
        throw ConfigError(key, "expected affine or origin, got '" + value + "'");
      }
    } else if (key == "out" || key == "output_path") {
      c.output_path = value;
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  return c;
}

} // namespace qnn
