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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qnn/analysis.hpp"
#include "qnn/errors.hpp"
#include "qnn/haar.hpp"

namespace qnn {
namespace {

const double kLn2 = std::numbers::ln2;

TEST(MeanAndError, Basics) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto e = mean_and_error(v);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(mean_and_error(std::vector<double>{7.0}).std_error, 0.0);
}

TEST(DeltaSBar, Formula) {
  EXPECT_EQ(delta_s_bar(0.7, 0.7), 0.0);
  EXPECT_DOUBLE_EQ(delta_s_bar(1.5, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(delta_s_bar(0.5, 1.5), -delta_s_bar(1.5, 0.5));
  EXPECT_THROW(delta_s_bar(0.0, 0.0), UndefinedMetricError);
}

TEST(DeltaSBar, Bounded) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const double d = delta_s_bar(u(rng), u(rng));
    EXPECT_GE(d, -2.0);
    EXPECT_LE(d, 2.0);
  }
  EXPECT_EQ(delta_s_bar(1.0, 0.0), 2.0);
}

TEST(DeltaSBar, PairedErrorMatchesReplication) {
  // Correlated pairs: the delta-method error should match the spread of the
  // statistic over independent replications.
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  const std::size_t m = 400;
  std::vector<double> stats;
  double reported = 0.0;
  for (int rep = 0; rep < 400; ++rep) {
    std::vector<double> a(m), b(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double common = g(rng);
      a[i] = 1.2 + 0.3 * common + 0.1 * g(rng);
      b[i] = 1.0 + 0.3 * common + 0.1 * g(rng);
    }
    const auto e = delta_s_bar_paired(a, b);
    stats.push_back(e.mean);
    reported += e.std_error;
  }
  reported /= 400;
  const auto spread = mean_and_error(stats);
  const double sd = spread.std_error * std::sqrt(400.0);
  EXPECT_NEAR(reported / sd, 1.0, 0.1);
}

TEST(DeltaSBar, PairedRejectsMismatch) {
  const std::vector<double> a{1.0, 2.0}, b{1.0};
  EXPECT_THROW(delta_s_bar_paired(a, b), InvalidArgument);
}

TEST(Total, Sums) {
  EXPECT_EQ(total_entanglement({{0.0, 0.0, 0.0}}), 0.0);
  EXPECT_NEAR(total_entanglement({{kLn2, 0.0, kLn2}}), 2 * kLn2, 1e-15);
  const auto h = haar_profile(8);
  EXPECT_NEAR(total_entanglement({h.entropies}), h.total, 1e-12);
  const EntanglementProfile p{{0.1, 0.7, 0.3, 0.2}};
  const EntanglementProfile r{{0.2, 0.3, 0.7, 0.1}};
  EXPECT_DOUBLE_EQ(total_entanglement(p), total_entanglement(r));
}

TEST(Normalized, Definition) {
  EXPECT_EQ(normalized_entropy({{0.0, 0.0, 0.0}}, 4), 0.0);
  const auto h = haar_profile(10);
  EXPECT_NEAR(normalized_entropy({h.entropies}, 10), 1.0, 1e-12);
}

AggregatedSeries series(std::size_t n, std::vector<double> means) {
  AggregatedSeries s;
  s.n = n;
  s.samples = 100;
  for (std::size_t l = 0; l < means.size(); ++l) s.points.push_back({l + 1, means[l], 0.01});
  return s;
}

TEST(EntanglingLayers, Crossing) {
  EXPECT_EQ(entangling_layers(series(6, {9.5, 9.9}), 10.0), 1u);
  EXPECT_EQ(entangling_layers(series(6, {1, 2, 3, 4, 5, 6, 9.2, 9.5}), 10.0), 7u);
  EXPECT_EQ(entangling_layers(series(6, {1, 9.0}), 10.0), 2u); // boundary counts
  EXPECT_THROW(entangling_layers(series(6, {1, 2, 3}), 10.0), NotConvergedError);
  EXPECT_THROW(entangling_layers(AggregatedSeries{}, 10.0), InvalidArgument);
}

TEST(Speed, NoiselessLine) {
  std::vector<SpeedPoint> pts;
  for (int l = 1; l <= 10; ++l) pts.push_back({l / 16.0, 1.8 * l / 16.0, 1.0});
  for (auto model : {SpeedModel::Affine, SpeedModel::ThroughOrigin}) {
    const auto fit = fit_entangling_speed(pts, 0.5, model);
    EXPECT_NEAR(fit.v_s, 1.8, 1e-12);
    EXPECT_NEAR(fit.offset, 0.0, 1e-12);
    EXPECT_EQ(fit.points_used, 4u); // 1.8 l / 16 <= 0.5 for l <= 4
  }
}

TEST(Speed, AffineRecoversOffset) {
  std::vector<SpeedPoint> pts;
  for (int l = 1; l <= 6; ++l) pts.push_back({l / 12.0, 0.15 + 0.6 * l / 12.0, 2.0});
  const auto fit = fit_entangling_speed(pts);
  EXPECT_NEAR(fit.v_s, 0.6, 1e-12);
  EXPECT_NEAR(fit.offset, 0.15, 1e-12);
}

TEST(Speed, ScaleConsistent) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 0.01);
  std::vector<SpeedPoint> pts, scaled;
  for (int l = 1; l <= 8; ++l) {
    const double x = l / 10.0, y = 0.1 + 0.5 * x + g(rng);
    pts.push_back({x, y, 1.0 + l});
    scaled.push_back({3.0 * x, y, 1.0 + l});
  }
  for (auto model : {SpeedModel::Affine, SpeedModel::ThroughOrigin}) {
    const auto a = fit_entangling_speed(pts, 0.5, model);
    const auto b = fit_entangling_speed(scaled, 0.5, model);
    EXPECT_NEAR(b.v_s, a.v_s / 3.0, 1e-12);
    EXPECT_NEAR(b.v_s_error, a.v_s_error / 3.0, 1e-12);
  }
}

TEST(Speed, WeightedLeastSquaresOracle) {
  // closed-form normal equations computed independently
  const std::vector<SpeedPoint> pts{{0.1, 0.2, 4.0}, {0.2, 0.33, 1.0}, {0.3, 0.41, 2.0},
                                    {0.4, 0.49, 0.5}, {0.5, 0.7, 1.0}};
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  for (const auto &p : pts) {
    if (p.s_tilde > 0.5) continue;
    const Eigen::Vector2d row(p.layers_over_n, 1.0);
    a += p.weight * row * row.transpose();
    rhs += p.weight * p.s_tilde * row;
  }
  const Eigen::Vector2d beta = a.ldlt().solve(rhs);
  double chi2 = 0.0;
  for (const auto &p : pts) {
    if (p.s_tilde > 0.5) continue;
    const double r = p.s_tilde - beta(0) * p.layers_over_n - beta(1);
    chi2 += p.weight * r * r;
  }
  const Eigen::Matrix2d cov = a.inverse() * std::max(1.0, chi2 / 2.0);
  const auto fit = fit_entangling_speed(pts);
  EXPECT_EQ(fit.points_used, 4u);
  EXPECT_NEAR(fit.v_s, beta(0), 1e-12);
  EXPECT_NEAR(fit.offset, beta(1), 1e-12);
  EXPECT_NEAR(fit.v_s_error, std::sqrt(cov(0, 0)), 1e-12);
  EXPECT_NEAR(fit.offset_error, std::sqrt(cov(1, 1)), 1e-12);
}

TEST(Speed, CoefficientsReproduceFit) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<SpeedPoint> pts;
  for (int l = 1; l <= 9; ++l) pts.push_back({l / 8.0, 0.08 * l + 0.05 * u(rng), 1.0 + u(rng)});
  for (auto model : {SpeedModel::Affine, SpeedModel::ThroughOrigin}) {
    const auto fit = fit_entangling_speed(pts, 0.5, model);
    const auto c = speed_fit_coefficients(pts, 0.5, model);
    double slope = 0.0, offset = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      slope += c.slope[i] * pts[i].s_tilde;
      offset += c.offset[i] * pts[i].s_tilde;
      if (pts[i].s_tilde > 0.5) EXPECT_EQ(c.slope[i], 0.0);
    }
    EXPECT_NEAR(slope, fit.v_s, 1e-12);
    EXPECT_NEAR(offset, fit.offset, 1e-12);
  }
}

// Trajectories with their own slopes make the points of one curve
// correlated. The spread of per-trajectory projections then tracks the
// replication spread of v_s, while the pointwise covariance understates it.
TEST(Speed, ProjectionErrorTracksCorrelatedReplication) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 1.0);
  constexpr int kTraj = 100, kReps = 400, kPoints = 12;
  std::vector<double> fits, projected, pointwise;
  for (int rep = 0; rep < kReps; ++rep) {
    std::vector<std::vector<double>> y(kPoints, std::vector<double>(kTraj));
    for (int t = 0; t < kTraj; ++t) {
      const double slope = 0.6 + 0.15 * g(rng), offset = 0.1 + 0.005 * g(rng);
      for (int k = 0; k < kPoints; ++k)
        y[k][t] = offset + slope * (k + 1) / 16.0 + 0.005 * g(rng);
    }
    std::vector<SpeedPoint> pts;
    for (int k = 0; k < kPoints; ++k) {
      const auto e = mean_and_error(y[k]);
      pts.push_back({(k + 1) / 16.0, e.mean, 1.0 / (e.std_error * e.std_error)});
    }
    const auto fit = fit_entangling_speed(pts);
    const auto c = speed_fit_coefficients(pts);
    std::vector<double> proj(kTraj, 0.0);
    for (int k = 0; k < kPoints; ++k)
      for (int t = 0; t < kTraj; ++t) proj[t] += c.slope[k] * y[k][t];
    fits.push_back(fit.v_s);
    projected.push_back(mean_and_error(proj).std_error);
    pointwise.push_back(fit.v_s_error);
  }
  const double spread = mean_and_error(fits).std_error * std::sqrt(static_cast<double>(kReps));
  EXPECT_NEAR(mean_and_error(projected).mean / spread, 1.0, 0.1);
  EXPECT_LT(mean_and_error(pointwise).mean, 0.6 * spread);
}

TEST(Speed, InsufficientData) {
  const std::vector<SpeedPoint> one{{0.1, 0.2, 1.0}, {0.2, 0.8, 1.0}};
  EXPECT_THROW(fit_entangling_speed(one), InsufficientDataError);
  const std::vector<SpeedPoint> same_x{{0.1, 0.2, 1.0}, {0.1, 0.3, 1.0}};
  EXPECT_THROW(fit_entangling_speed(same_x), InsufficientDataError);
  EXPECT_NO_THROW(fit_entangling_speed(same_x, 0.5, SpeedModel::ThroughOrigin));
  const std::vector<SpeedPoint> bad{{0.1, 0.2, 0.0}, {0.2, 0.3, 1.0}};
  EXPECT_THROW(fit_entangling_speed(bad), InvalidArgument);
}

// Inverse CDF sampling of the Haar fidelity law: F = 1 - (1-u)^(1/(N-1)).
std::vector<double> haar_fidelities(std::uint64_t dim, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u;
  std::vector<double> f(count);
  for (auto &x : f) x = 1.0 - std::pow(1.0 - u(rng), 1.0 / static_cast<double>(dim - 1));
  return f;
}

TEST(Expressibility, HaarSelfConsistency) {
  for (std::uint64_t dim : {4ull, 256ull, 1ull << 20}) {
    EXPECT_LT(expressibility(haar_fidelities(dim, 10000, dim), dim, 75), 0.05) << dim;
  }
}

TEST(Expressibility, DegenerateHistogram) {
  const std::uint64_t dim = 256;
  const std::vector<double> ones(5000, 1.0);
  const double log_last_bin_mass = static_cast<double>(dim - 1) * std::log(1.0 / 75.0);
  const double kl = expressibility(ones, dim, 75);
  EXPECT_GE(kl, -log_last_bin_mass - 1e-9);
  EXPECT_TRUE(std::isfinite(kl));
  // far beyond where a naive (1-f)^(N-1) underflows
  EXPECT_TRUE(std::isfinite(expressibility(ones, 1ull << 40, 75)));
}

TEST(Expressibility, NonNegativeAndValidated) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> f(300);
    for (auto &x : f) x = std::pow(u(rng), 1.0 + t);
    EXPECT_GE(expressibility(f, 16, 20), 0.0);
  }
  EXPECT_THROW(expressibility(std::vector<double>{0.5, 1.1}, 16, 75), InvalidArgument);
  EXPECT_THROW(expressibility(std::vector<double>{0.5}, 16, 1), InvalidArgument);
  EXPECT_THROW(expressibility(std::vector<double>{}, 16, 75), InvalidArgument);
}

} // namespace
} // namespace qnn
