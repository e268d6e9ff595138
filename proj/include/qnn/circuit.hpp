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

// Circuit blocks, entangling topologies and QNN assembly.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnn/mps.hpp"

namespace qnn {

enum class GateKind { H, RX, RY, RZ, CNOT, CRZ, SWAP };
enum class Topology { Linear, Circular, Full };
enum class BlockKind { C1, C2, C3, CZZ };
enum class ReuploadMode { Alternated, Sequential };

std::string_view to_string(GateKind kind);
std::string_view to_string(Topology t);
std::string_view to_string(BlockKind kind);
std::string_view to_string(ReuploadMode mode);

/// Case-insensitive parsers; return nullopt on unknown names.
std::optional<GateKind> parse_gate_kind(std::string_view name);
std::optional<Topology> parse_topology(std::string_view name);
std::optional<BlockKind> parse_block_kind(std::string_view name);
std::optional<ReuploadMode> parse_reupload_mode(std::string_view name);

bool is_parametric(GateKind kind);
bool is_two_qubit(GateKind kind);

struct GateOp {
  GateKind kind = GateKind::H;
  std::array<std::size_t, 2> qubits{0, 0}; // control first for controlled gates
  std::optional<double> angle;             // radians

  std::size_t arity() const { return is_two_qubit(kind) ? 2 : 1; }

  static GateOp h(std::size_t q) { return {GateKind::H, {q, q}, std::nullopt}; }
  static GateOp rx(std::size_t q, double a) { return {GateKind::RX, {q, q}, a}; }
  static GateOp ry(std::size_t q, double a) { return {GateKind::RY, {q, q}, a}; }
  static GateOp rz(std::size_t q, double a) { return {GateKind::RZ, {q, q}, a}; }
  static GateOp cnot(std::size_t c, std::size_t t) { return {GateKind::CNOT, {c, t}, std::nullopt}; }
  static GateOp crz(std::size_t c, std::size_t t, double a) { return {GateKind::CRZ, {c, t}, a}; }
  static GateOp swap(std::size_t a, std::size_t b) { return {GateKind::SWAP, {a, b}, std::nullopt}; }

  friend bool operator==(const GateOp &, const GateOp &) = default;
};

/// Throws InvalidArgument if the gate breaks the GateOp invariants for an
/// n-qubit register.
void validate(const GateOp &gate, std::size_t n);

Gate1q gate_matrix_1q(const GateOp &gate);
/// Matrix in the basis |s_q0 s_q1> for qubits = (q0, q1).
Gate2q gate_matrix_2q(const GateOp &gate);

using Edge = std::pair<std::size_t, std::size_t>; // (control, target)

/// Linear: (0,1) ... (n-2,n-1). Circular: Linear then (n-1,0).
/// Full: every (i,j) with i < j in lexicographic order.
std::vector<Edge> entangling_edges(Topology t, std::size_t n);

/// Parameter count of a block (C1: 2n, C2: n, C3: n + |edges|, CZZ: n).
std::size_t param_count(BlockKind kind, Topology t, std::size_t n);

/// Gate list of one block.
///   C1:  RX layer then RZ layer, no entangling gates.
///   C2:  RY per qubit, CNOT per edge. RX here would keep a stack of C2 blocks
///        inside commuting X-string rotations, which never reaches Haar.
///   C3:  RY per qubit, CRZ per edge.
///   CZZ: H and RZ(2 x_i) per qubit, then CNOT, RZ(2 (pi - x_i)(pi - x_j)), CNOT per edge.
std::vector<GateOp> build_block(BlockKind kind, Topology t, std::size_t n,
                                std::span<const double> params);

struct QnnSpec {
  std::size_t n = 2;
  std::size_t layers = 1;
  BlockKind feature = BlockKind::CZZ;
  BlockKind variational = BlockKind::C2;
  Topology topology = Topology::Linear;
  ReuploadMode mode = ReuploadMode::Alternated;
  TruncationPolicy policy;
};

/// Throws InvalidArgument unless n >= 2 and layers >= 1.
void validate(const QnnSpec &spec);

/// Feature-map inputs x (shared by every repetition) and one weight vector
/// per layer.
struct ParamVector {
  std::vector<double> inputs;
  std::vector<std::vector<double>> weights;
};

/// Alternated: F(x) V(w_1) F(x) V(w_2) ... ; Sequential: F(x)^L V(w_1) ... V(w_L).
std::vector<GateOp> build_qnn(const QnnSpec &spec, const ParamVector &params);

/// Draws every entry from Unif[0, pi] with a generator seeded by `seed`. Inputs
/// are drawn first, then the weights layer by layer, so the weights of a
/// shallower QnnSpec are a prefix of a deeper one with the same seed.
ParamVector sample_params(const QnnSpec &spec, std::uint64_t seed);

/// One fused unitary produced by `fuse_gates`.
struct FusedOp {
  std::size_t arity = 1;
  std::array<std::size_t, 2> qubits{0, 0};
  Gate1q u1 = Gate1q::Identity();
  Gate2q u2 = Gate2q::Identity();
};

/// Merges runs of gates acting on the same qubit pair, and single-qubit gates
/// into the next two-qubit gate on their wire. The product of the returned
/// ops equals the product of the input gates.
std::vector<FusedOp> fuse_gates(std::span<const GateOp> gates);

/// Applies the ops in order; returns the total discarded weight.
double apply_ops(MpsState &state, std::span<const FusedOp> ops);
double apply_gates(MpsState &state, std::span<const GateOp> gates);

/// |0...0> evolved by build_qnn(spec, params).
MpsState run_qnn(const QnnSpec &spec, const ParamVector &params);

/// Evolves an alternated QNN one layer at a time so every depth prefix can be
/// measured in a single pass. `params` needs at least `spec.layers` weight
/// vectors; each `advance` appends F(x) V(w_l).
class LayerwiseRun {
public:
  LayerwiseRun(const QnnSpec &spec, ParamVector params);

  std::size_t layers_applied() const { return layers_applied_; }
  std::size_t max_layers() const { return params_.weights.size(); }
  double advance();

  const MpsState &state() const { return state_; }
  double discarded_weight() const { return discarded_; }

private:
  QnnSpec spec_;
  ParamVector params_;
  std::vector<GateOp> feature_gates_;
  MpsState state_;
  std::size_t layers_applied_ = 0;
  double discarded_ = 0.0;
};

/// One gate per line, `KIND q0 [q1] [angle]`.
std::string to_text(std::span<const GateOp> gates);
/// Inverse of to_text. Blank lines and lines starting with '#' are skipped.
std::vector<GateOp> parse_circuit_text(std::string_view text);

} // namespace qnn
