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

// Matrix product state of an n-qubit register.
//
// Site k holds a rank-3 tensor M[k](a, s, b) with a in [0, chi_left),
// s in {0, 1} and b in [0, chi_right). It is stored column-major as the
// (2 chi_left) x chi_right matrix with row a + chi_left * s, so the same
// buffer read as a chi_left x (2 chi_right) matrix has column s + 2 b.
// Both groupings are free reinterpretations of one buffer.
//
// The state is kept in mixed canonical form: sites left of the
// orthogonality center are left-isometric, sites right of it are
// right-isometric. Bond i (1 <= i <= n-1) separates qubits [0, i) from
// [i, n) and stores its normalized Schmidt spectrum, which is refreshed by
// every SVD that crosses it.
//
// Dense amplitudes use qubit 0 as the most significant bit of the index.

#pragma once

#include <cstddef>
#include <vector>

#include "qnn/linalg.hpp"

namespace qnn {

using Gate1q = Eigen::Matrix2cd;
/// Two-qubit gate in the basis |s_a s_b> with index 2 * s_a + s_b.
using Gate2q = Eigen::Matrix4cd;

/// Largest register `to_dense` accepts.
inline constexpr std::size_t kMaxDenseQubits = 14;

/// Tolerance for the gate unitarity check.
inline constexpr double kUnitarityTolerance = 1e-10;

/// Per-bond entanglement entropies S(e_1), ..., S(e_{n-1}) in nats.
struct EntanglementProfile {
  std::vector<double> entropies;

  double total() const;
  double max() const;
};

class MpsState {
public:
  /// |0...0> on n >= 2 qubits.
  static MpsState zero(std::size_t n, TruncationPolicy policy = {});

  std::size_t size() const { return sites_.size(); }
  const TruncationPolicy &policy() const { return policy_; }
  std::size_t ortho_center() const { return center_; }

  /// Dimension of bond i, 1 <= i <= n-1.
  std::size_t bond_dimension(std::size_t bond) const;
  std::size_t max_bond_dimension() const;
  /// Normalized Schmidt values of bond i, descending.
  const RealVector &bond_spectrum(std::size_t bond) const;

  void apply_1q(const Gate1q &u, std::size_t q);

  /// Applies u to (q, q+1) and returns the discarded weight of the truncation.
  double apply_2q_adjacent(const Gate2q &u, std::size_t q);

  /// Applies u to (qa, qb) in that order, routing with SWAPs when the qubits
  /// are not neighbours. Returns the total discarded weight.
  double apply_2q(const Gate2q &u, std::size_t qa, std::size_t qb);

  /// -sum lambda^2 log lambda^2 over the stored spectrum of bond i.
  double bond_entropy(std::size_t bond) const;
  EntanglementProfile entanglement_profile() const;

  /// <this|other>.
  Complex overlap(const MpsState &other) const;
  double norm_squared() const;

  /// Amplitudes of all 2^n basis states. Throws CapacityError above
  /// kMaxDenseQubits.
  std::vector<Complex> to_dense() const;

  /// Sum of discarded weights over the lifetime of the state.
  double total_discarded_weight() const { return discarded_total_; }

private:
  struct Site {
    Eigen::Index left = 1;
    Eigen::Index right = 1;
    ComplexMatrix tensor; // (2 * left) x right
  };

  MpsState() = default;

  void check_qubit(std::size_t q) const;
  void move_center_to(std::size_t target);
  void move_center_right();
  void move_center_left();
  double update_pair(const Gate2q &u, std::size_t q, bool center_right);
  void set_spectrum(std::size_t storage_index, const RealVector &normalized);

  std::vector<Site> sites_;
  std::vector<RealVector> spectra_; // spectra_[i - 1] belongs to bond i
  std::size_t center_ = 0;
  TruncationPolicy policy_;
  double discarded_total_ = 0.0;
};

/// Von Neumann entropy -sum p log p of a Schmidt spectrum, skipping
/// p = lambda^2 below 1e-30.
double schmidt_entropy(const RealVector &lambda);

} // namespace qnn
