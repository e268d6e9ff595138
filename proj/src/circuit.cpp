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

#include "qnn/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "qnn/errors.hpp"

namespace qnn {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto &c : out) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

Gate2q kron(const Gate1q &a, const Gate1q &b) {
  Gate2q out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return out;
}

Gate2q swapped(const Gate2q &u) {
  static const Gate2q s = gate_matrix_2q(GateOp::swap(0, 1));
  return s * u * s;
}

} // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
  case GateKind::H: return "H";
  case GateKind::RX: return "RX";
  case GateKind::RY: return "RY";
  case GateKind::RZ: return "RZ";
  case GateKind::CNOT: return "CNOT";
  case GateKind::CRZ: return "CRZ";
  case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

std::string_view to_string(Topology t) {
  switch (t) {
  case Topology::Linear: return "linear";
  case Topology::Circular: return "circular";
  case Topology::Full: return "full";
  }
  return "?";
}

std::string_view to_string(BlockKind kind) {
  switch (kind) {
  case BlockKind::C1: return "C1";
  case BlockKind::C2: return "C2";
  case BlockKind::C3: return "C3";
  case BlockKind::CZZ: return "CZZ";
  }
  return "?";
}

std::string_view to_string(ReuploadMode mode) {
  return mode == ReuploadMode::Alternated ? "alternated" : "sequential";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
  const std::string u = upper(name);
  for (GateKind k : {GateKind::H, GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CNOT,
                     GateKind::CRZ, GateKind::SWAP}) {
    if (u == to_string(k)) return k;
  }
  if (u == "CX") return GateKind::CNOT;
  return std::nullopt;
}

std::optional<Topology> parse_topology(std::string_view name) {
  const std::string u = upper(name);
  if (u == "LINEAR") return Topology::Linear;
  if (u == "CIRCULAR") return Topology::Circular;
  if (u == "FULL") return Topology::Full;
  return std::nullopt;
}

std::optional<BlockKind> parse_block_kind(std::string_view name) {
  const std::string u = upper(name);
  if (u == "C1") return BlockKind::C1;
  if (u == "C2") return BlockKind::C2;
  if (u == "C3") return BlockKind::C3;
  if (u == "CZZ" || u == "ZZ" || u == "ZZFEATUREMAP") return BlockKind::CZZ;
  return std::nullopt;
}

std::optional<ReuploadMode> parse_reupload_mode(std::string_view name) {
  const std::string u = upper(name);
  if (u == "ALTERNATED") return ReuploadMode::Alternated;
  if (u == "SEQUENTIAL") return ReuploadMode::Sequential;
  return std::nullopt;
}

bool is_parametric(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
         kind == GateKind::CRZ;
}

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::CNOT || kind == GateKind::CRZ || kind == GateKind::SWAP;
}

void validate(const GateOp &gate, std::size_t n) {
  if (is_parametric(gate.kind) != gate.angle.has_value()) {
    throw InvalidArgument(std::string(to_string(gate.kind)) +
                          (gate.angle ? " takes no angle" : " needs an angle"));
  }
  if (gate.angle && !std::isfinite(*gate.angle)) {
    throw InvalidArgument("gate angle is not finite");
  }
  const std::size_t arity = gate.arity();
  for (std::size_t i = 0; i < arity; ++i) {
    if (gate.qubits[i] >= n) {
      throw InvalidArgument("qubit " + std::to_string(gate.qubits[i]) + " out of range for " +
                            std::to_string(n) + " qubits");
    }
  }
  if (arity == 2 && gate.qubits[0] == gate.qubits[1]) {
    throw InvalidArgument("two-qubit gate on a single wire");
  }
}

Gate1q gate_matrix_1q(const GateOp &gate) {
  using namespace std::complex_literals;
  Gate1q m;
  const double half = gate.angle.value_or(0.0) / 2.0;
  const double c = std::cos(half);
  const double s = std::sin(half);
  switch (gate.kind) {
  case GateKind::H:
    m << 1.0, 1.0, 1.0, -1.0;
    return m / std::numbers::sqrt2;
  case GateKind::RX:
    m << c, -1i * s, -1i * s, c;
    return m;
  case GateKind::RY:
    m << c, -s, s, c;
    return m;
  case GateKind::RZ:
    m << std::polar(1.0, -half), 0.0, 0.0, std::polar(1.0, half);
    return m;
  default:
    throw InvalidArgument(std::string(to_string(gate.kind)) + " is not a single-qubit gate");
  }
}

Gate2q gate_matrix_2q(const GateOp &gate) {
  Gate2q m = Gate2q::Zero();
  switch (gate.kind) {
  case GateKind::CNOT:
    m(0, 0) = m(1, 1) = 1.0;
    m(2, 3) = m(3, 2) = 1.0;
    return m;
  case GateKind::CRZ: {
    const double half = gate.angle.value_or(0.0) / 2.0;
    m(0, 0) = m(1, 1) = 1.0;
    m(2, 2) = std::polar(1.0, -half);
    m(3, 3) = std::polar(1.0, half);
    return m;
  }
  case GateKind::SWAP:
    m(0, 0) = m(3, 3) = 1.0;
    m(1, 2) = m(2, 1) = 1.0;
    return m;
  default:
    throw InvalidArgument(std::string(to_string(gate.kind)) + " is not a two-qubit gate");
  }
}

std::vector<Edge> entangling_edges(Topology t, std::size_t n) {
  if (n < 2) {
    throw InvalidArgument("entangling_edges: need at least 2 qubits");
  }
  std::vector<Edge> edges;
  if (t == Topology::Full) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        edges.emplace_back(i, j);
    return edges;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(i, i + 1);
  }
  if (t == Topology::Circular) {
    edges.emplace_back(n - 1, 0);
  }
  return edges;
}

std::size_t param_count(BlockKind kind, Topology t, std::size_t n) {
  switch (kind) {
  case BlockKind::C1: return 2 * n;
  case BlockKind::C2: return n;
  case BlockKind::C3: return n + entangling_edges(t, n).size();
  case BlockKind::CZZ: return n;
  }
  return 0;
}

std::vector<GateOp> build_block(BlockKind kind, Topology t, std::size_t n,
                                std::span<const double> params) {
  const std::size_t expected = param_count(kind, t, n);
  if (params.size() != expected) {
    throw InvalidArgument(std::string(to_string(kind)) + " block on " + std::to_string(n) +
                          " qubits takes " + std::to_string(expected) + " parameters, got " +
                          std::to_string(params.size()));
  }
  const auto edges = entangling_edges(t, n);
  std::vector<GateOp> gates;
  switch (kind) {
  case BlockKind::C1:
    for (std::size_t q = 0; q < n; ++q) gates.push_back(GateOp::rx(q, params[q]));
    for (std::size_t q = 0; q < n; ++q) gates.push_back(GateOp::rz(q, params[n + q]));
    break;
  case BlockKind::C2:
    for (std::size_t q = 0; q < n; ++q) gates.push_back(GateOp::ry(q, params[q]));
    for (const auto &[c, tgt] : edges) gates.push_back(GateOp::cnot(c, tgt));
    break;
  case BlockKind::C3:
    for (std::size_t q = 0; q < n; ++q) gates.push_back(GateOp::ry(q, params[q]));
    for (std::size_t e = 0; e < edges.size(); ++e)
      gates.push_back(GateOp::crz(edges[e].first, edges[e].second, params[n + e]));
    break;
  case BlockKind::CZZ:
    for (std::size_t q = 0; q < n; ++q) gates.push_back(GateOp::h(q));
    for (std::size_t q = 0; q < n; ++q) gates.push_back(GateOp::rz(q, 2.0 * params[q]));
    for (const auto &[c, tgt] : edges) {
      const double phase = 2.0 * (std::numbers::pi - params[c]) * (std::numbers::pi - params[tgt]);
      gates.push_back(GateOp::cnot(c, tgt));
      gates.push_back(GateOp::rz(tgt, phase));
      gates.push_back(GateOp::cnot(c, tgt));
    }
    break;
  }
  return gates;
}

void validate(const QnnSpec &spec) {
  if (spec.n < 2) throw InvalidArgument("QNN needs n >= 2");
  if (spec.layers < 1) throw InvalidArgument("QNN needs at least one layer");
  if (spec.policy.epsilon < 0.0 || spec.policy.epsilon >= 1.0)
    throw InvalidArgument("epsilon must lie in [0, 1)");
  if (spec.policy.chi_max < 1) throw InvalidArgument("chi_max must be >= 1");
}

namespace {

void check_params(const QnnSpec &spec, const ParamVector &params, std::size_t layers) {
  const std::size_t m = param_count(spec.feature, spec.topology, spec.n);
  const std::size_t p = param_count(spec.variational, spec.topology, spec.n);
  if (params.inputs.size() != m) {
    throw InvalidArgument("expected " + std::to_string(m) + " inputs, got " +
                          std::to_string(params.inputs.size()));
  }
  if (params.weights.size() < layers) {
    throw InvalidArgument("expected " + std::to_string(layers) + " weight vectors, got " +
                          std::to_string(params.weights.size()));
  }
  for (const auto &w : params.weights) {
    if (w.size() != p) {
      throw InvalidArgument("expected " + std::to_string(p) + " weights per layer, got " +
                            std::to_string(w.size()));
    }
  }
}

} // namespace

std::vector<GateOp> build_qnn(const QnnSpec &spec, const ParamVector &params) {
  validate(spec);
  check_params(spec, params, spec.layers);
  const auto feature = build_block(spec.feature, spec.topology, spec.n, params.inputs);
  std::vector<GateOp> gates;
  auto append = [&gates](const std::vector<GateOp> &block) {
    gates.insert(gates.end(), block.begin(), block.end());
  };
  auto variational = [&](std::size_t layer) {
    return build_block(spec.variational, spec.topology, spec.n, params.weights[layer]);
  };
  if (spec.mode == ReuploadMode::Alternated) {
    for (std::size_t l = 0; l < spec.layers; ++l) {
      append(feature);
      append(variational(l));
    }
  } else {
    for (std::size_t l = 0; l < spec.layers; ++l) append(feature);
    for (std::size_t l = 0; l < spec.layers; ++l) append(variational(l));
  }
  return gates;
}

ParamVector sample_params(const QnnSpec &spec, std::uint64_t seed) {
  validate(spec);
  std::mt19937_64 rng(seed);
  // 53 random mantissa bits mapped onto [0, pi]; std distributions are not
  // reproducible across standard libraries.
  auto draw = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * std::numbers::pi;
  };
  ParamVector pv;
  pv.inputs.resize(param_count(spec.feature, spec.topology, spec.n));
  for (auto &x : pv.inputs) x = draw();
  pv.weights.resize(spec.layers);
  const std::size_t p = param_count(spec.variational, spec.topology, spec.n);
  for (auto &layer : pv.weights) {
    layer.resize(p);
    for (auto &w : layer) w = draw();
  }
  return pv;
}

std::vector<FusedOp> fuse_gates(std::span<const GateOp> gates) {
  std::size_t n = 0;
  for (const auto &g : gates) {
    n = std::max({n, g.qubits[0] + 1, g.qubits[1] + 1});
  }
  std::vector<FusedOp> ops;
  std::vector<Gate1q> pending(n, Gate1q::Identity());
  std::vector<bool> has_pending(n, false);
  std::vector<std::ptrdiff_t> last_op(n, -1);

  for (const auto &g : gates) {
    validate(g, std::max<std::size_t>(n, 2));
    if (g.arity() == 1) {
      const std::size_t q = g.qubits[0];
      pending[q] = gate_matrix_1q(g) * pending[q];
      has_pending[q] = true;
      continue;
    }
    const std::size_t a = g.qubits[0];
    const std::size_t b = g.qubits[1];
    Gate2q u = gate_matrix_2q(g) * kron(pending[a], pending[b]);
    pending[a] = pending[b] = Gate1q::Identity();
    has_pending[a] = has_pending[b] = false;

    const std::ptrdiff_t prev = last_op[a];
    if (prev >= 0 && prev == last_op[b]) {
      FusedOp &op = ops[static_cast<std::size_t>(prev)];
      op.u2 = (op.qubits[0] == a ? u : swapped(u)) * op.u2;
      continue;
    }
    FusedOp op;
    op.arity = 2;
    op.qubits = {a, b};
    op.u2 = u;
    last_op[a] = last_op[b] = static_cast<std::ptrdiff_t>(ops.size());
    ops.push_back(op);
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (has_pending[q]) {
      FusedOp op;
      op.arity = 1;
      op.qubits = {q, q};
      op.u1 = pending[q];
      ops.push_back(op);
    }
  }
  return ops;
}

double apply_ops(MpsState &state, std::span<const FusedOp> ops) {
  double discarded = 0.0;
  for (const auto &op : ops) {
    if (op.arity == 1) {
      state.apply_1q(op.u1, op.qubits[0]);
    } else {
      discarded += state.apply_2q(op.u2, op.qubits[0], op.qubits[1]);
    }
  }
  return discarded;
}

double apply_gates(MpsState &state, std::span<const GateOp> gates) {
  for (const auto &g : gates) {
    validate(g, state.size());
  }
  const auto ops = fuse_gates(gates);
  return apply_ops(state, ops);
}

MpsState run_qnn(const QnnSpec &spec, const ParamVector &params) {
  const auto gates = build_qnn(spec, params);
  MpsState state = MpsState::zero(spec.n, spec.policy);
  apply_gates(state, gates);
  return state;
}

LayerwiseRun::LayerwiseRun(const QnnSpec &spec, ParamVector params)
    : spec_(spec), params_(std::move(params)), state_(MpsState::zero(spec.n, spec.policy)) {
  validate(spec_);
  if (spec_.mode != ReuploadMode::Alternated) {
    throw InvalidArgument("LayerwiseRun only supports the alternated structure");
  }
  check_params(spec_, params_, spec_.layers);
  feature_gates_ = build_block(spec_.feature, spec_.topology, spec_.n, params_.inputs);
}

double LayerwiseRun::advance() {
  if (layers_applied_ >= params_.weights.size()) {
    throw InvalidArgument("LayerwiseRun: no weights left for another layer");
  }
  std::vector<GateOp> gates = feature_gates_;
  const auto variational = build_block(spec_.variational, spec_.topology, spec_.n,
                                       params_.weights[layers_applied_]);
  gates.insert(gates.end(), variational.begin(), variational.end());
  const double d = apply_gates(state_, gates);
  discarded_ += d;
  ++layers_applied_;
  return d;
}

std::string to_text(std::span<const GateOp> gates) {
  std::string out;
  char buf[64];
  for (const auto &g : gates) {
    out += to_string(g.kind);
    for (std::size_t i = 0; i < g.arity(); ++i) {
      out += ' ';
      out += std::to_string(g.qubits[i]);
    }
    if (g.angle) {
      std::snprintf(buf, sizeof buf, " %.17g", *g.angle);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<GateOp> parse_circuit_text(std::string_view text) {
  std::vector<GateOp> gates;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name) || name[0] == '#') continue;
    auto fail = [line_no](const std::string &why) {
      return InvalidArgument("circuit text line " + std::to_string(line_no) + ": " + why);
    };
    const auto kind = parse_gate_kind(name);
    if (!kind) throw fail("unknown gate '" + name + "'");
    GateOp g;
    g.kind = *kind;
    const std::size_t arity = g.arity();
    for (std::size_t i = 0; i < arity; ++i) {
      long long q = -1;
      if (!(fields >> q) || q < 0) throw fail("expected qubit index");
      g.qubits[i] = static_cast<std::size_t>(q);
    }
    if (arity == 1) g.qubits[1] = g.qubits[0];
    if (is_parametric(g.kind)) {
      double a = 0.0;
      if (!(fields >> a)) throw fail("expected angle");
      g.angle = a;
    }
    std::string extra;
    if (fields >> extra) throw fail("unexpected token '" + extra + "'");
    gates.push_back(g);
  }
  return gates;
}

} // namespace qnn
