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

// Reference values for Haar-random pure states.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qnn/linalg.hpp"

namespace qnn {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr std::uint64_t kHarmonicExactThreshold = 1'000'000;

/// H_k = sum_{j=1}^k 1/j. Summed exactly for k <= exact_threshold, otherwise
/// log k + gamma + 1/(2k), which overestimates by at most 1/(8 k^2).
double harmonic(std::uint64_t k, std::uint64_t exact_threshold = kHarmonicExactThreshold);

/// Expected entanglement entropy (nats) of an n_a | n_b cut of a Haar-random
/// state: H_{d_a d_b} - H_{d_b} - (d_a - 1) / (2 d_b), with the arguments
/// swapped when n_a > n_b.
double page_entropy(std::size_t n_a, std::size_t n_b,
                    std::uint64_t exact_threshold = kHarmonicExactThreshold);

struct HaarProfile {
  std::size_t n = 0;
  std::vector<double> entropies; // bond i at index i - 1
  double total = 0.0;
  double max_value = 0.0;
};

/// page_entropy across every bond of an n-qubit chain (2 <= n <= 62).
HaarProfile haar_profile(std::size_t n);

/// Largest expected bond entropy: exact for n <= 30, (n/2) log 2 - 1/2 above.
double haar_max(std::size_t n);

/// Closed-form average of page_entropy over cut sizes n_a = 1..n/2:
/// (1/2)(n/2 + 1) log 2 - 4/(3n). Even n >= 4 only.
double haar_average(std::size_t n);

/// Normalized vector of 2^n i.i.d. standard complex Gaussians, i.e. a
/// Haar-random pure state. n <= 14.
std::vector<Complex> sample_haar_state(std::size_t n, std::uint64_t seed);

/// Density of |<a|b>|^2 for independent Haar states in dimension N:
/// (N - 1)(1 - f)^(N - 2).
double haar_fidelity_pdf(double f, std::uint64_t dim);

/// Integral of haar_fidelity_pdf over [0, f]: 1 - (1 - f)^(N - 1).
double haar_fidelity_cdf(double f, std::uint64_t dim);

} // namespace qnn
