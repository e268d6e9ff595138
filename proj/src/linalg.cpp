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

#include "qnn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qnn/errors.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qnn {

namespace {

// LAPACK overwrites its input, so `work` is taken by value.
bool lapack_svd(ComplexMatrix work, SvdResult &out, bool divide_and_conquer) {
  const lapack_int m = static_cast<lapack_int>(work.rows());
  const lapack_int n = static_cast<lapack_int>(work.cols());
  const lapack_int k = std::min(m, n);
  out.left.resize(m, k);
  out.singular_values.resize(k);
  out.right_adjoint.resize(k, n);
  lapack_int info = 0;
  if (divide_and_conquer) {
    info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, out.singular_values.data(),
                          out.left.data(), m, out.right_adjoint.data(), k);
  } else {
    std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(k - 1, 1)));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, work.data(), m,
                          out.singular_values.data(), out.left.data(), m,
                          out.right_adjoint.data(), k, superb.data());
  }
  return info == 0;
}

} // namespace

SvdResult svd(const ComplexMatrix &a) {
  if (a.size() == 0) {
    throw InvalidArgument("svd: empty matrix");
  }
  if (!a.allFinite()) {
    throw InvalidArgument("svd: non-finite entries");
  }
  SvdResult out;
  // zgesdd occasionally fails on nearly rank-deficient input; zgesvd is slower
  // but more robust.
  if (!lapack_svd(a, out, true) && !lapack_svd(a, out, false)) {
    throw DecompositionError("svd: LAPACK did not converge on a " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()) + " matrix");
  }
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values[i] <= kZeroClamp) {
      out.singular_values[i] = 0.0;
    }
  }
  return out;
}

TruncatedSvd truncate_spectrum(const SvdResult &s, double epsilon, std::size_t chi_max) {
  if (epsilon < 0.0) {
    throw InvalidArgument("truncate_spectrum: epsilon must be >= 0");
  }
  if (chi_max < 1) {
    throw InvalidArgument("truncate_spectrum: chi_max must be >= 1");
  }
  const auto &sigma = s.singular_values;
  const Eigen::Index total = sigma.size();
  if (total == 0 || sigma[0] <= kZeroClamp) {
    throw DegenerateStateError("truncate_spectrum: all singular values are zero");
  }
  const double cutoff = epsilon * sigma[0];
  Eigen::Index keep = 0;
  while (keep < total && sigma[keep] > kZeroClamp && sigma[keep] >= cutoff) {
    ++keep;
  }
  keep = std::min<Eigen::Index>(keep, static_cast<Eigen::Index>(chi_max));

  TruncatedSvd out;
  out.discarded_weight = sigma.tail(total - keep).squaredNorm();
  if (keep == total) {
    out.kept = s;
    return out;
  }
  out.kept.left = s.left.leftCols(keep);
  out.kept.singular_values = sigma.head(keep);
  out.kept.right_adjoint = s.right_adjoint.topRows(keep);
  return out;
}

double unitarity_defect(const ComplexMatrix &u) {
  if (u.rows() != u.cols()) {
    return INFINITY;
  }
  const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

} // namespace qnn
