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

// Exact equivalence checks for CNOT networks.
//
// A CNOT network permutes computational basis labels linearly over GF(2):
// CNOT(c, t) maps bit t to x_t xor x_c. The network is therefore an
// invertible binary matrix, and two networks are equal as unitaries exactly
// when their matrices agree.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qnn/circuit.hpp"
#include "qnn/linalg.hpp"

namespace qnn {

inline constexpr std::size_t kMaxGf2Qubits = 64;
inline constexpr std::size_t kMaxDenseUnitaryQubits = 6;

class Gf2Matrix {
public:
  static Gf2Matrix identity(std::size_t n);

  std::size_t size() const { return rows_.size(); }
  bool get(std::size_t row, std::size_t col) const { return (rows_[row] >> col) & 1u; }
  void set(std::size_t row, std::size_t col, bool value);

  /// rows[dst] ^= rows[src]
  void add_row(std::size_t src, std::size_t dst) { rows_[dst] ^= rows_[src]; }
  void swap_rows(std::size_t a, std::size_t b) { std::swap(rows_[a], rows_[b]); }

  /// Output label for input label x; bit q of x is qubit q.
  std::uint64_t apply(std::uint64_t x) const;

  bool invertible() const;

  /// Matrix product over GF(2).
  Gf2Matrix operator*(const Gf2Matrix &rhs) const;
  friend bool operator==(const Gf2Matrix &, const Gf2Matrix &) = default;

private:
  std::vector<std::uint64_t> rows_; // bit c of rows_[r] is entry (r, c)
};

/// Starting from the identity, CNOT(c, t) adds row c into row t, in order.
Gf2Matrix cnot_network_matrix(std::span<const Edge> edges, std::size_t n);

/// Same for a gate list; accepts CNOT and SWAP only.
Gf2Matrix cnot_network_matrix(std::span<const GateOp> gates, std::size_t n);

/// 2^n x 2^n unitary of a gate list (qubit 0 most significant). n <= 6.
ComplexMatrix dense_unitary(std::span<const GateOp> gates, std::size_t n);
ComplexMatrix dense_unitary(std::span<const Edge> edges, std::size_t n);

struct CnotIdentityCheck {
  bool gf2_equal = false;
  bool dense_checked = false;
  bool dense_equal = false;
  bool passed() const { return gf2_equal && (!dense_checked || dense_equal); }
};

inline constexpr double kDenseUnitaryTolerance = 1e-12;

/// Compares the full entangling map with the reversed linear map, exactly
/// over GF(2) and, for n <= 6, as dense unitaries.
CnotIdentityCheck check_full_equals_reversed_linear(std::size_t n);
bool verify_full_equals_reversed_linear(std::size_t n);

/// Max elementwise difference of two equally sized matrices.
double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b);

} // namespace qnn
