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

#include "qnn/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qnn/errors.hpp"
#include "qnn/mps.hpp"

namespace qnn {

namespace {

// Sum of 1/j for j in (from, to], smallest terms first.
double reciprocal_sum(std::uint64_t from, std::uint64_t to) {
  long double sum = 0.0L;
  long double carry = 0.0L;
  for (std::uint64_t j = to; j > from; --j) {
    const long double y = 1.0L / static_cast<long double>(j) - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(sum);
}

} // namespace

double harmonic(std::uint64_t k, std::uint64_t exact_threshold) {
  if (k == 0) {
    throw InvalidArgument("harmonic: k must be >= 1");
  }
  if (k <= exact_threshold) {
    return reciprocal_sum(0, k);
  }
  const double x = static_cast<double>(k);
  return std::log(x) + kEulerGamma + 0.5 / x;
}

double page_entropy(std::size_t n_a, std::size_t n_b, std::uint64_t exact_threshold) {
  if (n_a > n_b) {
    std::swap(n_a, n_b);
  }
  if (n_a + n_b > 62) {
    throw InvalidArgument("page_entropy: at most 62 qubits supported");
  }
  const std::uint64_t d_a = std::uint64_t{1} << n_a;
  const std::uint64_t d_b = std::uint64_t{1} << n_b;
  const std::uint64_t d = d_a * d_b;
  const double correction = static_cast<double>(d_a - 1) / (2.0 * static_cast<double>(d_b));
  if (d <= exact_threshold) {
    // Direct sum avoids the cancellation in H_d - H_{d_b}.
    return reciprocal_sum(d_b, d) - correction;
  }
  return harmonic(d, exact_threshold) - harmonic(d_b, exact_threshold) - correction;
}

HaarProfile haar_profile(std::size_t n) {
  if (n < 2 || n > 62) {
    throw InvalidArgument("haar_profile: n must lie in [2, 62], got " + std::to_string(n));
  }
  HaarProfile p;
  p.n = n;
  p.entropies.resize(n - 1);
  // The profile is mirror-symmetric; evaluate each cut size once.
  for (std::size_t i = 1; i <= n / 2; ++i) {
    const double s = page_entropy(i, n - i);
    p.entropies[i - 1] = s;
    p.entropies[n - i - 1] = s;
  }
  for (double s : p.entropies) {
    p.total += s;
    p.max_value = std::max(p.max_value, s);
  }
  return p;
}

double haar_max(std::size_t n) {
  if (n < 2) {
    throw InvalidArgument("haar_max: n must be >= 2");
  }
  if (n <= 30) {
    return page_entropy(n / 2, n - n / 2);
  }
  return 0.5 * static_cast<double>(n) * std::numbers::ln2 - 0.5;
}

double haar_average(std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    throw InvalidArgument("haar_average: only even n >= 4 is supported, got " + std::to_string(n));
  }
  const double x = static_cast<double>(n);
  return 0.5 * (x / 2.0 + 1.0) * std::numbers::ln2 - 4.0 / (3.0 * x);
}

std::vector<Complex> sample_haar_state(std::size_t n, std::uint64_t seed) {
  if (n > kMaxDenseQubits) {
    throw CapacityError("sample_haar_state: " + std::to_string(n) + " qubits exceeds the limit of " +
                        std::to_string(kMaxDenseQubits));
  }
  std::mt19937_64 rng(seed);
  auto uniform_open = [&rng] {
    // (0, 1]: never zero, so the logarithm below is finite.
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  };
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> psi(dim);
  double norm2 = 0.0;
  for (auto &amp : psi) {
    // Box-Muller: one uniform pair gives one complex Gaussian.
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double phi = 2.0 * std::numbers::pi * uniform_open();
    amp = std::polar(r, phi);
    norm2 += std::norm(amp);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto &amp : psi) {
    amp *= inv;
  }
  return psi;
}

double haar_fidelity_pdf(double f, std::uint64_t dim) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw InvalidArgument("haar_fidelity_pdf: fidelity must lie in [0, 1]");
  }
  if (dim < 2) {
    throw InvalidArgument("haar_fidelity_pdf: dimension must be >= 2");
  }
  const double nm1 = static_cast<double>(dim - 1);
  return nm1 * std::pow(1.0 - f, nm1 - 1.0);
}

double haar_fidelity_cdf(double f, std::uint64_t dim) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw InvalidArgument("haar_fidelity_cdf: fidelity must lie in [0, 1]");
  }
  if (dim < 2) {
    throw InvalidArgument("haar_fidelity_cdf: dimension must be >= 2");
  }
  return 1.0 - std::pow(1.0 - f, static_cast<double>(dim - 1));
}

} // namespace qnn
