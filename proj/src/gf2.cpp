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

#include "qnn/gf2.hpp"

#include <algorithm>
#include <string>

#include "qnn/errors.hpp"

namespace qnn {

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  if (n == 0 || n > kMaxGf2Qubits) {
    throw InvalidArgument("Gf2Matrix: size must lie in [1, 64], got " + std::to_string(n));
  }
  Gf2Matrix m;
  m.rows_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    m.rows_[r] = std::uint64_t{1} << r;
  }
  return m;
}

void Gf2Matrix::set(std::size_t row, std::size_t col, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << col;
  rows_[row] = value ? (rows_[row] | bit) : (rows_[row] & ~bit);
}

std::uint64_t Gf2Matrix::apply(std::uint64_t x) const {
  std::uint64_t y = 0;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    y |= static_cast<std::uint64_t>(__builtin_parityll(rows_[r] & x)) << r;
  }
  return y;
}

bool Gf2Matrix::invertible() const {
  std::vector<std::uint64_t> work = rows_;
  const std::size_t n = work.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !((work[pivot] >> col) & 1u)) ++pivot;
    if (pivot == n) return false;
    std::swap(work[col], work[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != col && ((work[r] >> col) & 1u)) work[r] ^= work[col];
    }
  }
  return true;
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix &rhs) const {
  if (rhs.size() != size()) {
    throw InvalidArgument("Gf2Matrix: size mismatch in product");
  }
  Gf2Matrix out;
  out.rows_.assign(size(), 0);
  for (std::size_t r = 0; r < size(); ++r) {
    for (std::size_t k = 0; k < size(); ++k) {
      if ((rows_[r] >> k) & 1u) out.rows_[r] ^= rhs.rows_[k];
    }
  }
  return out;
}

Gf2Matrix cnot_network_matrix(std::span<const Edge> edges, std::size_t n) {
  Gf2Matrix m = Gf2Matrix::identity(n);
  for (const auto &[c, t] : edges) {
    if (c >= n || t >= n || c == t) {
      throw InvalidArgument("cnot_network_matrix: invalid edge (" + std::to_string(c) + ", " +
                            std::to_string(t) + ") for " + std::to_string(n) + " qubits");
    }
    m.add_row(c, t);
  }
  return m;
}

Gf2Matrix cnot_network_matrix(std::span<const GateOp> gates, std::size_t n) {
  Gf2Matrix m = Gf2Matrix::identity(n);
  for (const auto &g : gates) {
    validate(g, n);
    if (g.kind == GateKind::CNOT) {
      m.add_row(g.qubits[0], g.qubits[1]);
    } else if (g.kind == GateKind::SWAP) {
      m.swap_rows(g.qubits[0], g.qubits[1]);
    } else {
      throw InvalidArgument("cnot_network_matrix: " + std::string(to_string(g.kind)) +
                            " is not a linear reversible gate");
    }
  }
  return m;
}

ComplexMatrix dense_unitary(std::span<const GateOp> gates, std::size_t n) {
  if (n == 0 || n > kMaxDenseUnitaryQubits) {
    throw CapacityError("dense_unitary: supports 1..6 qubits, got " + std::to_string(n));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  auto bit_of = [n](std::size_t q) { return Eigen::Index{1} << (n - 1 - q); };
  for (const auto &g : gates) {
    validate(g, n);
    // Left-multiply u by the embedded gate, acting on the rows of u.
    if (g.arity() == 1) {
      const Gate1q m = gate_matrix_1q(g);
      const Eigen::Index b = bit_of(g.qubits[0]);
      for (Eigen::Index r = 0; r < dim; ++r) {
        if (r & b) continue;
        const Eigen::RowVectorXcd r0 = u.row(r);
        const Eigen::RowVectorXcd r1 = u.row(r | b);
        u.row(r) = m(0, 0) * r0 + m(0, 1) * r1;
        u.row(r | b) = m(1, 0) * r0 + m(1, 1) * r1;
      }
    } else {
      const Gate2q m = gate_matrix_2q(g);
      const Eigen::Index ba = bit_of(g.qubits[0]);
      const Eigen::Index bb = bit_of(g.qubits[1]);
      for (Eigen::Index r = 0; r < dim; ++r) {
        if ((r & ba) || (r & bb)) continue;
        const Eigen::Index idx[4] = {r, r | bb, r | ba, r | ba | bb};
        Eigen::MatrixXcd rows(4, dim);
        for (int k = 0; k < 4; ++k) rows.row(k) = u.row(idx[k]);
        const Eigen::MatrixXcd out = m * rows;
        for (int k = 0; k < 4; ++k) u.row(idx[k]) = out.row(k);
      }
    }
  }
  return u;
}

ComplexMatrix dense_unitary(std::span<const Edge> edges, std::size_t n) {
  std::vector<GateOp> gates;
  gates.reserve(edges.size());
  for (const auto &[c, t] : edges) gates.push_back(GateOp::cnot(c, t));
  return dense_unitary(gates, n);
}

double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("max_abs_difference: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

CnotIdentityCheck check_full_equals_reversed_linear(std::size_t n) {
  if (n < 2) {
    throw InvalidArgument("check_full_equals_reversed_linear: n must be >= 2");
  }
  const auto full = entangling_edges(Topology::Full, n);
  auto reversed = entangling_edges(Topology::Linear, n);
  std::reverse(reversed.begin(), reversed.end());

  CnotIdentityCheck check;
  check.gf2_equal = cnot_network_matrix(full, n) == cnot_network_matrix(reversed, n);
  if (n <= kMaxDenseUnitaryQubits) {
    check.dense_checked = true;
    check.dense_equal = max_abs_difference(dense_unitary(full, n), dense_unitary(reversed, n)) <=
                        kDenseUnitaryTolerance;
  }
  return check;
}

bool verify_full_equals_reversed_linear(std::size_t n) {
  return check_full_equals_reversed_linear(n).passed();
}

} // namespace qnn
