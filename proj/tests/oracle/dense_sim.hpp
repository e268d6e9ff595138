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

// Dense statevector reference used only by the tests. Gate matrices are
// written out here rather than taken from the library so the two paths share
// nothing but the gate list.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <random>
#include <vector>

#include "qnn/circuit.hpp"

namespace oracle {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;

inline Eigen::Matrix2cd single(const qnn::GateOp &g) {
  const double a = g.angle.value_or(0.0);
  const double c = std::cos(a / 2), s = std::sin(a / 2);
  const cd i(0, 1);
  Eigen::Matrix2cd m;
  switch (g.kind) {
  case qnn::GateKind::H: {
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
  }
  case qnn::GateKind::RX: m << c, -i * s, -i * s, c; return m;
  case qnn::GateKind::RY: m << c, -s, s, c; return m;
  case qnn::GateKind::RZ: m << std::exp(-i * (a / 2)), 0, 0, std::exp(i * (a / 2)); return m;
  default: throw std::logic_error("not a single-qubit gate");
  }
}

class Statevector {
public:
  explicit Statevector(std::size_t n) : n_(n), psi_(Vec::Zero(std::size_t{1} << n)) { psi_(0) = 1; }

  std::size_t size() const { return n_; }
  const Vec &amplitudes() const { return psi_; }
  Vec &amplitudes() { return psi_; }

  std::size_t bit(std::size_t q) const { return std::size_t{1} << (n_ - 1 - q); }

  void apply(const qnn::GateOp &g) {
    const std::size_t dim = psi_.size();
    switch (g.kind) {
    case qnn::GateKind::CNOT: {
      const std::size_t c = bit(g.qubits[0]), t = bit(g.qubits[1]);
      for (std::size_t k = 0; k < dim; ++k) {
        if ((k & c) && !(k & t)) std::swap(psi_(k), psi_(k | t));
      }
      return;
    }
    case qnn::GateKind::SWAP: {
      const std::size_t a = bit(g.qubits[0]), b = bit(g.qubits[1]);
      for (std::size_t k = 0; k < dim; ++k) {
        if ((k & a) && !(k & b)) std::swap(psi_(k), psi_((k & ~a) | b));
      }
      return;
    }
    case qnn::GateKind::CRZ: {
      const std::size_t c = bit(g.qubits[0]), t = bit(g.qubits[1]);
      const double a = *g.angle;
      const cd lo = std::exp(cd(0, -a / 2)), hi = std::exp(cd(0, a / 2));
      for (std::size_t k = 0; k < dim; ++k) {
        if (k & c) psi_(k) *= (k & t) ? hi : lo;
      }
      return;
    }
    default: break;
    }
    const Eigen::Matrix2cd m = single(g);
    const std::size_t t = bit(g.qubits[0]);
    for (std::size_t k = 0; k < dim; ++k) {
      if (k & t) continue;
      const cd a0 = psi_(k), a1 = psi_(k | t);
      psi_(k) = m(0, 0) * a0 + m(0, 1) * a1;
      psi_(k | t) = m(1, 0) * a0 + m(1, 1) * a1;
    }
  }

  void apply(const std::vector<qnn::GateOp> &gates) {
    for (const auto &g : gates) apply(g);
  }

  // Schmidt values across the cut after the first `left` qubits.
  Eigen::VectorXd schmidt(std::size_t left) const {
    const Eigen::Index rows = Eigen::Index{1} << left;
    const Eigen::Index cols = Eigen::Index{1} << (n_ - left);
    // row index = leading qubits; amplitudes are laid out row-major that way
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = psi_(r * cols + c);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
  }

  double entropy(std::size_t left) const {
    const Eigen::VectorXd s = schmidt(left);
    double h = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      const double p = s(k) * s(k);
      if (p > 1e-300) h -= p * std::log(p);
    }
    return h;
  }

  std::vector<double> entropies() const {
    std::vector<double> out;
    for (std::size_t b = 1; b < n_; ++b) out.push_back(entropy(b));
    return out;
  }

private:
  std::size_t n_;
  Vec psi_;
};

inline Statevector run(std::size_t n, const std::vector<qnn::GateOp> &gates) {
  Statevector sv(n);
  sv.apply(gates);
  return sv;
}

// Haar-random state from normalized complex Gaussians.
template <class Rng> Vec haar_state(std::size_t n, Rng &rng) {
  std::normal_distribution<double> gauss;
  Vec v(std::size_t{1} << n);
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = cd(gauss(rng), gauss(rng));
  return v / v.norm();
}

inline double entropy_of(const Vec &psi, std::size_t n, std::size_t left) {
  Statevector sv(n);
  sv.amplitudes() = psi;
  return sv.entropy(left);
}

} // namespace oracle
