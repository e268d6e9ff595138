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

#include "qnn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnn/errors.hpp"
#include "qnn/haar.hpp"

namespace qnn {

Estimate mean_and_error(std::span<const double> values) {
  Estimate e;
  if (values.empty()) {
    return e;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) {
    return e;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  const double m = static_cast<double>(values.size());
  e.std_error = std::sqrt(ss / (m - 1.0) / m);
  return e;
}

double delta_s_bar(double s_alt, double s_seq) {
  const double mid = 0.5 * (s_alt + s_seq);
  if (mid == 0.0) {
    throw UndefinedMetricError("delta_s_bar: both entropies are zero");
  }
  return (s_alt - s_seq) / mid;
}

Estimate delta_s_bar_paired(std::span<const double> alt, std::span<const double> seq) {
  if (alt.size() != seq.size() || alt.empty()) {
    throw InvalidArgument("delta_s_bar_paired: need equally sized, non-empty samples");
  }
  const Estimate a = mean_and_error(alt);
  const Estimate s = mean_and_error(seq);
  Estimate out;
  out.mean = delta_s_bar(a.mean, s.mean);
  const std::size_t m = alt.size();
  if (m < 2) {
    return out;
  }
  double cov = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cov += (alt[i] - a.mean) * (seq[i] - s.mean);
  }
  const double dm = static_cast<double>(m);
  cov /= (dm - 1.0) * dm; // covariance of the two means
  const double sum = a.mean + s.mean;
  const double d_alt = 4.0 * s.mean / (sum * sum);
  const double d_seq = -4.0 * a.mean / (sum * sum);
  const double var = d_alt * d_alt * a.std_error * a.std_error +
                     d_seq * d_seq * s.std_error * s.std_error + 2.0 * d_alt * d_seq * cov;
  out.std_error = std::sqrt(std::max(var, 0.0));
  return out;
}

double total_entanglement(const EntanglementProfile &p) { return p.total(); }

double normalized_entropy(const EntanglementProfile &p, std::size_t n) {
  return p.max() / haar_max(n);
}

std::size_t entangling_layers(const AggregatedSeries &series, double haar_total, double fraction) {
  if (series.points.empty()) {
    throw InvalidArgument("entangling_layers: empty series");
  }
  const double target = fraction * haar_total;
  for (const auto &pt : series.points) {
    if (pt.mean >= target) {
      return pt.layers;
    }
  }
  throw NotConvergedError("entangling_layers: n=" + std::to_string(series.n) + " never reaches " +
                          std::to_string(fraction) + " of the Haar total up to L=" +
                          std::to_string(series.points.back().layers));
}

SpeedFit fit_entangling_speed(std::span<const SpeedPoint> points, double threshold,
                              SpeedModel model) {
  // weighted sums over the usable points
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t used = 0;
  for (const auto &p : points) {
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) {
      throw InvalidArgument("fit_entangling_speed: weights must be positive and finite");
    }
    if (p.s_tilde > threshold) continue;
    const double x = p.layers_over_n;
    sw += p.weight;
    sx += p.weight * x;
    sy += p.weight * p.s_tilde;
    sxx += p.weight * x * x;
    sxy += p.weight * x * p.s_tilde;
    ++used;
  }
  const bool affine = model == SpeedModel::Affine;
  const double det = affine ? sw * sxx - sx * sx : sxx;
  if (used < 2 || !(det > 1e-12 * std::max(1.0, sw * sxx))) {
    throw InsufficientDataError("fit_entangling_speed: need at least 2 distinct points with "
                                "s_tilde <= " + std::to_string(threshold) + ", got " +
                                std::to_string(used));
  }
  SpeedFit fit;
  fit.threshold = threshold;
  fit.points_used = used;
  fit.model = model;
  if (affine) {
    fit.v_s = (sw * sxy - sx * sy) / det;
    fit.offset = (sxx * sy - sx * sxy) / det;
  } else {
    fit.v_s = sxy / sxx;
  }
  double chi2 = 0.0;
  for (const auto &p : points) {
    if (p.s_tilde > threshold) continue;
    const double r = p.s_tilde - fit.v_s * p.layers_over_n - fit.offset;
    chi2 += p.weight * r * r;
  }
  const std::size_t params = affine ? 2 : 1;
  const double scale =
      used > params ? std::max(1.0, chi2 / static_cast<double>(used - params)) : 1.0;
  if (affine) {
    fit.v_s_error = std::sqrt(scale * sw / det);
    fit.offset_error = std::sqrt(scale * sxx / det);
  } else {
    fit.v_s_error = std::sqrt(scale / sxx);
  }
  return fit;
}

SpeedCoefficients speed_fit_coefficients(std::span<const SpeedPoint> points, double threshold,
                                         SpeedModel model) {
  // validates and rejects degenerate point sets
  (void)fit_entangling_speed(points, threshold, model);
  double sw = 0.0, sx = 0.0, sxx = 0.0;
  for (const auto &p : points) {
    if (p.s_tilde > threshold) continue;
    sw += p.weight;
    sx += p.weight * p.layers_over_n;
    sxx += p.weight * p.layers_over_n * p.layers_over_n;
  }
  const bool affine = model == SpeedModel::Affine;
  const double det = affine ? sw * sxx - sx * sx : sxx;
  SpeedCoefficients c{std::vector<double>(points.size(), 0.0),
                      std::vector<double>(points.size(), 0.0)};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto &p = points[i];
    if (p.s_tilde > threshold) continue;
    const double x = p.layers_over_n;
    if (affine) {
      c.slope[i] = p.weight * (sw * x - sx) / det;
      c.offset[i] = p.weight * (sxx - sx * x) / det;
    } else {
      c.slope[i] = p.weight * x / det;
    }
  }
  return c;
}

double expressibility(std::span<const double> fidelities, std::uint64_t dim, std::size_t bins) {
  if (bins < 2) {
    throw InvalidArgument("expressibility: need at least 2 bins");
  }
  if (dim < 2) {
    throw InvalidArgument("expressibility: dimension must be >= 2");
  }
  if (fidelities.empty()) {
    throw InvalidArgument("expressibility: no fidelity samples");
  }
  std::vector<std::size_t> counts(bins, 0);
  for (double f : fidelities) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw InvalidArgument("expressibility: fidelity " + std::to_string(f) + " outside [0, 1]");
    }
    const auto k = std::min(static_cast<std::size_t>(f * static_cast<double>(bins)), bins - 1);
    ++counts[k];
  }
  // Haar bin masses in log space: (1-a)^(N-1) - (1-b)^(N-1) underflows for
  // the upper bins once N is large.
  const double power = static_cast<double>(dim - 1);
  const double total = static_cast<double>(fidelities.size());
  double kl = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    if (counts[k] == 0) continue;
    const double lo = static_cast<double>(k) / static_cast<double>(bins);
    const double hi = static_cast<double>(k + 1) / static_cast<double>(bins);
    const double log_tail_lo = power * std::log1p(-lo);
    double log_mass = log_tail_lo;
    if (k + 1 < bins) {
      const double ratio = std::exp(power * (std::log1p(-hi) - std::log1p(-lo)));
      log_mass += std::log1p(-ratio);
    }
    const double p = static_cast<double>(counts[k]) / total;
    kl += p * (std::log(p) - log_mass);
  }
  return std::max(kl, 0.0);
}

} // namespace qnn
