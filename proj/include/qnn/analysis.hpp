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

// Scalar metrics derived from entanglement profiles and fidelity samples.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qnn/mps.hpp"

namespace qnn {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean and standard error of the mean (0 for fewer than 2 values).
Estimate mean_and_error(std::span<const double> values);

/// (s_alt - s_seq) / ((s_alt + s_seq) / 2). Throws UndefinedMetricError when
/// the denominator vanishes.
double delta_s_bar(double s_alt, double s_seq);

/// delta_s_bar of the two sample means, with a delta-method standard error
/// that accounts for the pairing of alt[i] with seq[i].
Estimate delta_s_bar_paired(std::span<const double> alt, std::span<const double> seq);

/// Sum of the internal bond entropies.
double total_entanglement(const EntanglementProfile &p);

/// Profile maximum over haar_max(n).
double normalized_entropy(const EntanglementProfile &p, std::size_t n);

struct SeriesPoint {
  std::size_t layers = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Scalar metric against depth for one register size, sorted by layers.
struct AggregatedSeries {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::vector<SeriesPoint> points;
};

inline constexpr double kEntanglingFraction = 0.9;

/// Smallest sampled depth whose mean total entropy reaches
/// fraction * haar_total. Throws NotConvergedError if none does.
std::size_t entangling_layers(const AggregatedSeries &series, double haar_total,
                              double fraction = kEntanglingFraction);

struct SpeedPoint {
  double layers_over_n = 0.0;
  double s_tilde = 0.0;
  double weight = 1.0;
};

enum class SpeedModel {
  Affine,        // s_tilde = v_s * (L / n) + offset
  ThroughOrigin, // s_tilde = v_s * (L / n)
};

struct SpeedFit {
  double v_s = 0.0;
  double v_s_error = 0.0;
  double offset = 0.0; // zero for ThroughOrigin
  double offset_error = 0.0;
  std::size_t points_used = 0;
  double threshold = 0.5;
  SpeedModel model = SpeedModel::Affine;
};

inline constexpr double kSpeedThreshold = 0.5;

/// Weighted least squares on the points with s_tilde <= threshold. The
/// affine model absorbs the entropy the first feature map already creates,
/// so v_s is the growth rate of the early linear regime. Errors come from the
/// weighted covariance, inflated by the reduced chi-square when it exceeds 1.
/// Throws InsufficientDataError with fewer than 2 usable points (or when all
/// usable points share one abscissa under the affine model).
SpeedFit fit_entangling_speed(std::span<const SpeedPoint> points,
                              double threshold = kSpeedThreshold,
                              SpeedModel model = SpeedModel::Affine);

/// Per-point weights that reproduce the fit as linear functionals of the
/// inputs: v_s = sum slope[i] * s_tilde[i], offset = sum offset[i] *
/// s_tilde[i]. Points above the threshold get zero. When the points are means
/// over the same trajectories at several depths they are correlated, and the
/// variance of these projections over samples is the honest fit error.
struct SpeedCoefficients {
  std::vector<double> slope;
  std::vector<double> offset;
};

SpeedCoefficients speed_fit_coefficients(std::span<const SpeedPoint> points,
                                         double threshold = kSpeedThreshold,
                                         SpeedModel model = SpeedModel::Affine);

inline constexpr std::size_t kDefaultExpressibilityBins = 75;

/// KL divergence between the binned fidelity histogram and the Haar fidelity
/// distribution for Hilbert dimension `dim`, using equal-width bins on [0, 1].
double expressibility(std::span<const double> fidelities, std::uint64_t dim,
                      std::size_t bins = kDefaultExpressibilityBins);

} // namespace qnn
