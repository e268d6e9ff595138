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

#include "qnn/mps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnn/errors.hpp"

namespace qnn {

namespace {

constexpr double kSpectrumNormTolerance = 1e-8;

Gate2q swap_gate() {
  Gate2q s = Gate2q::Zero();
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

// Reinterprets a chi_left x (2 chi_right) matrix as its (2 chi_left) x
// chi_right grouping. Column-major storage makes this a pure reshape.
ComplexMatrix to_left_grouped(ComplexMatrix m, Eigen::Index chi_left, Eigen::Index chi_right) {
  return Eigen::Map<ComplexMatrix>(m.data(), 2 * chi_left, chi_right);
}

} // namespace

double EntanglementProfile::total() const {
  double sum = 0.0;
  for (double s : entropies) {
    sum += s;
  }
  return sum;
}

double EntanglementProfile::max() const {
  return entropies.empty() ? 0.0 : *std::max_element(entropies.begin(), entropies.end());
}

double schmidt_entropy(const RealVector &lambda) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double p = lambda[i] * lambda[i];
    if (p >= 1e-30) {
      s -= p * std::log(p);
    }
  }
  return s;
}

MpsState MpsState::zero(std::size_t n, TruncationPolicy policy) {
  if (n < 2) {
    throw InvalidArgument("MpsState::zero: need at least 2 qubits, got " + std::to_string(n));
  }
  if (policy.epsilon < 0.0 || policy.chi_max < 1) {
    throw InvalidArgument("MpsState::zero: invalid truncation policy");
  }
  MpsState state;
  state.policy_ = policy;
  state.sites_.resize(n);
  for (auto &site : state.sites_) {
    site.left = 1;
    site.right = 1;
    site.tensor = ComplexMatrix::Zero(2, 1);
    site.tensor(0, 0) = 1.0;
  }
  state.spectra_.assign(n - 1, RealVector::Ones(1));
  state.center_ = 0;
  return state;
}

void MpsState::check_qubit(std::size_t q) const {
  if (q >= sites_.size()) {
    throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                          std::to_string(sites_.size()) + " qubits");
  }
}

std::size_t MpsState::bond_dimension(std::size_t bond) const {
  if (bond < 1 || bond >= sites_.size()) {
    throw InvalidArgument("bond index " + std::to_string(bond) + " out of range");
  }
  return static_cast<std::size_t>(sites_[bond].left);
}

std::size_t MpsState::max_bond_dimension() const {
  Eigen::Index chi = 1;
  for (const auto &site : sites_) {
    chi = std::max(chi, site.right);
  }
  return static_cast<std::size_t>(chi);
}

const RealVector &MpsState::bond_spectrum(std::size_t bond) const {
  if (bond < 1 || bond >= sites_.size()) {
    throw InvalidArgument("bond index " + std::to_string(bond) + " out of range");
  }
  return spectra_[bond - 1];
}

void MpsState::set_spectrum(std::size_t storage_index, const RealVector &normalized) {
  spectra_[storage_index] = normalized;
}

void MpsState::apply_1q(const Gate1q &u, std::size_t q) {
  check_qubit(q);
  if (unitarity_defect(u) > kUnitarityTolerance) {
    throw UnitarityError("apply_1q: gate is not unitary");
  }
  Site &site = sites_[q];
  const Eigen::Index chi_l = site.left;
  // Row block s of the left-grouped matrix is the slice M(., s, .).
  ComplexMatrix upper = site.tensor.topRows(chi_l);
  ComplexMatrix lower = site.tensor.bottomRows(chi_l);
  site.tensor.topRows(chi_l) = u(0, 0) * upper + u(0, 1) * lower;
  site.tensor.bottomRows(chi_l) = u(1, 0) * upper + u(1, 1) * lower;
}

void MpsState::move_center_right() {
  const std::size_t c = center_;
  Site &here = sites_[c];
  Site &next = sites_[c + 1];
  const TruncatedSvd t = truncate_spectrum(svd(here.tensor), policy_);
  const double kept_norm = t.kept.singular_values.norm();
  discarded_total_ += t.discarded_weight;
  const RealVector lambda = t.kept.singular_values / kept_norm;
  const Eigen::Index k = lambda.size();

  here.tensor = t.kept.left;
  here.right = k;
  const ComplexMatrix carry = lambda.asDiagonal() * t.kept.right_adjoint; // k x chi
  Eigen::Map<const ComplexMatrix> next_right(next.tensor.data(), next.left, 2 * next.right);
  ComplexMatrix merged = carry * next_right; // k x 2 chi_r
  next.tensor = to_left_grouped(std::move(merged), k, next.right);
  next.left = k;
  set_spectrum(c, lambda);
  ++center_;
}

void MpsState::move_center_left() {
  const std::size_t c = center_;
  Site &here = sites_[c];
  Site &prev = sites_[c - 1];
  Eigen::Map<const ComplexMatrix> here_right(here.tensor.data(), here.left, 2 * here.right);
  const TruncatedSvd t = truncate_spectrum(svd(here_right), policy_);
  const double kept_norm = t.kept.singular_values.norm();
  discarded_total_ += t.discarded_weight;
  const RealVector lambda = t.kept.singular_values / kept_norm;
  const Eigen::Index k = lambda.size();

  here.tensor = to_left_grouped(t.kept.right_adjoint, k, here.right);
  here.left = k;
  const ComplexMatrix carry = t.kept.left * lambda.asDiagonal(); // chi x k
  prev.tensor = prev.tensor * carry;
  prev.right = k;
  set_spectrum(c - 1, lambda);
  --center_;
}

void MpsState::move_center_to(std::size_t target) {
  while (center_ < target) {
    move_center_right();
  }
  while (center_ > target) {
    move_center_left();
  }
}

double MpsState::update_pair(const Gate2q &u, std::size_t q, bool center_right) {
  if (center_ != q && center_ != q + 1) {
    move_center_to(center_ < q ? q : q + 1);
  }
  Site &a = sites_[q];
  Site &b = sites_[q + 1];
  const Eigen::Index chi_l = a.left;
  const Eigen::Index chi_r = b.right;

  Eigen::Map<const ComplexMatrix> b_right(b.tensor.data(), b.left, 2 * b.right);
  // theta(a + chi_l s1, s2 + 2 b)
  ComplexMatrix theta = a.tensor * b_right;
  for (Eigen::Index col = 0; col < chi_r; ++col) {
    for (Eigen::Index row = 0; row < chi_l; ++row) {
      const Complex v00 = theta(row, 2 * col);
      const Complex v01 = theta(row, 2 * col + 1);
      const Complex v10 = theta(row + chi_l, 2 * col);
      const Complex v11 = theta(row + chi_l, 2 * col + 1);
      for (int out = 0; out < 4; ++out) {
        const Complex value = u(out, 0) * v00 + u(out, 1) * v01 + u(out, 2) * v10 + u(out, 3) * v11;
        theta(row + chi_l * (out >> 1), 2 * col + (out & 1)) = value;
      }
    }
  }

  const TruncatedSvd t = truncate_spectrum(svd(theta), policy_);
  const double kept_norm = t.kept.singular_values.norm();
  const RealVector lambda = t.kept.singular_values / kept_norm;
  const Eigen::Index k = lambda.size();

  if (center_right) {
    a.tensor = t.kept.left;
    ComplexMatrix right = lambda.asDiagonal() * t.kept.right_adjoint;
    b.tensor = to_left_grouped(std::move(right), k, chi_r);
    center_ = q + 1;
  } else {
    a.tensor = t.kept.left * lambda.asDiagonal();
    b.tensor = to_left_grouped(t.kept.right_adjoint, k, chi_r);
    center_ = q;
  }
  a.right = k;
  b.left = k;
  set_spectrum(q, lambda);
  discarded_total_ += t.discarded_weight;
  return t.discarded_weight;
}

double MpsState::apply_2q_adjacent(const Gate2q &u, std::size_t q) {
  check_qubit(q);
  check_qubit(q + 1);
  if (unitarity_defect(u) > kUnitarityTolerance) {
    throw UnitarityError("apply_2q_adjacent: gate is not unitary");
  }
  // Leave the center on the far side of the direction it is travelling.
  return update_pair(u, q, center_ <= q);
}

double MpsState::apply_2q(const Gate2q &u, std::size_t qa, std::size_t qb) {
  check_qubit(qa);
  check_qubit(qb);
  if (qa == qb) {
    throw InvalidArgument("apply_2q: qubits must differ");
  }
  if (unitarity_defect(u) > kUnitarityTolerance) {
    throw UnitarityError("apply_2q: gate is not unitary");
  }
  static const Gate2q kSwap = swap_gate();
  const std::size_t lo = std::min(qa, qb);
  const std::size_t hi = std::max(qa, qb);
  const Gate2q oriented = qa < qb ? u : Gate2q(kSwap * u * kSwap);
  if (hi == lo + 1) {
    return apply_2q_adjacent(oriented, lo);
  }
  // Walk the content of `hi` down to lo + 1, act, and walk it back.
  double discarded = 0.0;
  for (std::size_t k = hi - 1; k > lo; --k) {
    discarded += update_pair(kSwap, k, false);
  }
  discarded += update_pair(oriented, lo, true);
  for (std::size_t k = lo + 1; k < hi; ++k) {
    discarded += update_pair(kSwap, k, true);
  }
  return discarded;
}

double MpsState::bond_entropy(std::size_t bond) const {
  const RealVector &lambda = bond_spectrum(bond);
  const double weight = lambda.squaredNorm();
  if (std::abs(weight - 1.0) > kSpectrumNormTolerance) {
    throw ConsistencyError("bond " + std::to_string(bond) + " spectrum has weight " +
                           std::to_string(weight));
  }
  return schmidt_entropy(lambda);
}

EntanglementProfile MpsState::entanglement_profile() const {
  EntanglementProfile profile;
  profile.entropies.reserve(sites_.size() - 1);
  for (std::size_t bond = 1; bond < sites_.size(); ++bond) {
    profile.entropies.push_back(bond_entropy(bond));
  }
  return profile;
}

Complex MpsState::overlap(const MpsState &other) const {
  if (other.size() != size()) {
    throw InvalidArgument("overlap: register sizes differ (" + std::to_string(size()) + " vs " +
                          std::to_string(other.size()) + ")");
  }
  ComplexMatrix env = ComplexMatrix::Ones(1, 1);
  for (std::size_t k = 0; k < sites_.size(); ++k) {
    const Site &a = sites_[k];
    const Site &b = other.sites_[k];
    ComplexMatrix next = ComplexMatrix::Zero(a.right, b.right);
    for (Eigen::Index s = 0; s < 2; ++s) {
      const auto a_s = a.tensor.middleRows(s * a.left, a.left);
      const auto b_s = b.tensor.middleRows(s * b.left, b.left);
      next.noalias() += a_s.adjoint() * (env * b_s);
    }
    env = std::move(next);
  }
  return env(0, 0);
}

double MpsState::norm_squared() const { return overlap(*this).real(); }

std::vector<Complex> MpsState::to_dense() const {
  if (sites_.size() > kMaxDenseQubits) {
    throw CapacityError("to_dense: " + std::to_string(sites_.size()) + " qubits exceeds the limit of " +
                        std::to_string(kMaxDenseQubits));
  }
  ComplexMatrix partial = ComplexMatrix::Ones(1, 1); // rows: prefix label, cols: open bond
  for (const Site &site : sites_) {
    const ComplexMatrix zero = partial * site.tensor.topRows(site.left);
    const ComplexMatrix one = partial * site.tensor.bottomRows(site.left);
    ComplexMatrix next(2 * partial.rows(), site.right);
    for (Eigen::Index r = 0; r < partial.rows(); ++r) {
      next.row(2 * r) = zero.row(r);
      next.row(2 * r + 1) = one.row(r);
    }
    partial = std::move(next);
  }
  return std::vector<Complex>(partial.data(), partial.data() + partial.size());
}

} // namespace qnn
