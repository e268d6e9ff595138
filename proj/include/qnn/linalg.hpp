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

// Dense complex linear algebra used by the MPS engine.

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qnn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Singular values at or below this magnitude are treated as exact zeros.
inline constexpr double kZeroClamp = 1e-14;

/// Thin SVD, a = left * diag(singular_values) * right_adjoint.
struct SvdResult {
  ComplexMatrix left;          // rows x k, orthonormal columns
  RealVector singular_values;  // k = min(rows, cols), descending, >= 0
  ComplexMatrix right_adjoint; // k x cols, orthonormal rows
};

/// Truncation controls shared by the SVD helpers and the MPS engine.
struct TruncationPolicy {
  double epsilon = 1e-9;       // drop sigma_k / sigma_0 < epsilon
  std::size_t chi_max = 1024;  // hard cap on kept values
};

struct TruncatedSvd {
  SvdResult kept;
  double discarded_weight = 0.0; // sum of squared dropped singular values
};

/// Computes the thin SVD. Throws DecompositionError when LAPACK fails to
/// converge and InvalidArgument for empty or non-finite input. Values below
/// kZeroClamp are clamped to zero.
SvdResult svd(const ComplexMatrix &a);

/// Keeps the leading k singular triplets, where k is the number of values with
/// sigma_k >= epsilon * sigma_0, capped at chi_max. Clamped zeros are always
/// dropped. Throws DegenerateStateError when every value is zero.
TruncatedSvd truncate_spectrum(const SvdResult &s, double epsilon, std::size_t chi_max);

inline TruncatedSvd truncate_spectrum(const SvdResult &s, const TruncationPolicy &policy) {
  return truncate_spectrum(s, policy.epsilon, policy.chi_max);
}

/// Max elementwise |u^dagger u - I|.
double unitarity_defect(const ComplexMatrix &u);

} // namespace qnn
