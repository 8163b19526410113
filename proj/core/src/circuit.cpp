#include "qfp/circuit.hpp"

#include <stdexcept>

namespace qfp {

namespace {

void check_block_preconditions(AnsatzKind kind, int qubits) {
  if (qubits < 1) throw std::invalid_argument("qubit count must be positive");
  if (kind != AnsatzKind::YZY && qubits < 2) {
    throw std::invalid_argument("ansatz " + to_string(kind) + " needs at least 2 qubits");
  }
}

// Column of per-qubit rotations; params laid out qubit-major, `stride` angles
// per qubit with `offset` selecting which of them this column consumes.
void push_rotation_column(std::vector<GateOp>& gates, GateKind kind, int qubits,
                          std::span<const double> params, int stride, int offset) {
  for (int q = 0; q < qubits; ++q) {
    double angle = params[static_cast<std::size_t>(q * stride + offset)];
    gates.push_back({kind, q, -1, angle});
  }
}

// Circular CNOT cascade drawn in the hardware-efficient layout: nearest
// neighbours brickwork-style (even controls, then odd), wrap gate last.
void push_hea_entanglers(std::vector<GateOp>& gates, int qubits) {
  for (int i = 0; i + 1 < qubits; i += 2) gates.push_back(GateOp::cnot(i, i + 1));
  for (int i = 1; i + 1 < qubits; i += 2) gates.push_back(GateOp::cnot(i, i + 1));
  gates.push_back(GateOp::cnot(qubits - 1, 0));
}

// Descending ring: (n-1 -> 0), (n-2 -> n-1), ..., (0 -> 1).
template <typename Emit>
void for_descending_ring(int qubits, Emit emit) {
  for (int k = qubits - 1; k >= 0; --k) emit(k, (k + 1) % qubits);
}

// Second ring of circuit 15: controls n-1, 0, 1, ..., n-2, each targeting
// its upper neighbour (control-1 mod n).
template <typename Emit>
void for_upward_ring(int qubits, Emit emit) {
  emit(qubits - 1, qubits - 2);
  for (int c = 0; c < qubits - 1; ++c) emit(c, (c - 1 + qubits) % qubits);
}

// Two-stage nearest-neighbour pairing of circuits 16/17: controls 1,3,5,...
// then 2,4,6,..., each acting on the qubit above.
template <typename Emit>
void for_two_stage_pairs(int qubits, Emit emit) {
  for (int c = 1; c < qubits; c += 2) emit(c, c - 1);
  for (int c = 2; c < qubits; c += 2) emit(c, c - 1);
}

std::vector<GateOp> build_c16_c17(int qubits, std::span<const double> params, GateKind ctrl_kind) {
  std::vector<GateOp> gates;
  push_rotation_column(gates, GateKind::RX, qubits, params, 2, 0);
  push_rotation_column(gates, GateKind::RZ, qubits, params, 2, 1);
  std::size_t next = static_cast<std::size_t>(2 * qubits);
  for_two_stage_pairs(qubits, [&](int c, int t) {
    gates.push_back({ctrl_kind, t, c, params[next++]});
  });
  return gates;
}

std::vector<GateOp> build_c18_c19(int qubits, std::span<const double> params, GateKind ctrl_kind) {
  std::vector<GateOp> gates;
  push_rotation_column(gates, GateKind::RX, qubits, params, 2, 0);
  push_rotation_column(gates, GateKind::RZ, qubits, params, 2, 1);
  std::size_t next = static_cast<std::size_t>(2 * qubits);
  for_descending_ring(qubits, [&](int c, int t) {
    gates.push_back({ctrl_kind, t, c, params[next++]});
  });
  return gates;
}

}  // namespace

std::string to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::YZY: return "YZY";
    case AnsatzKind::YZY_ENTANGLING: return "YZY_ENTANGLING";
    case AnsatzKind::HEA: return "HEA";
    case AnsatzKind::C15: return "C15";
    case AnsatzKind::C16: return "C16";
    case AnsatzKind::C17: return "C17";
    case AnsatzKind::C18: return "C18";
    case AnsatzKind::C19: return "C19";
  }
  throw std::logic_error("unknown ansatz kind");
}

AnsatzKind ansatz_from_string(const std::string& name) {
  for (AnsatzKind kind : kAllAnsatzKinds) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown ansatz: " + name);
}

std::string to_string(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return "X";
    case PauliAxis::Y: return "Y";
    case PauliAxis::Z: return "Z";
  }
  throw std::logic_error("unknown axis");
}

PauliAxis axis_from_string(const std::string& name) {
  if (name == "X" || name == "x") return PauliAxis::X;
  if (name == "Y" || name == "y") return PauliAxis::Y;
  if (name == "Z" || name == "z") return PauliAxis::Z;
  throw std::invalid_argument("unknown Pauli axis: " + name);
}

void validate_model_spec(const ModelSpec& spec) {
  check_block_preconditions(spec.ansatz, spec.qubits);
  if (spec.qubits > 16) throw std::invalid_argument("qubit count must be <= 16");
  if (spec.layers < 1) throw std::invalid_argument("layer count must be >= 1");
  if (spec.feature_map.dims() < 1) {
    throw std::invalid_argument("feature map needs at least one axis");
  }
}

int per_block_param_count(AnsatzKind kind, int qubits) {
  check_block_preconditions(kind, qubits);
  switch (kind) {
    case AnsatzKind::YZY:
    case AnsatzKind::YZY_ENTANGLING:
    case AnsatzKind::HEA:
    case AnsatzKind::C18:
    case AnsatzKind::C19:
      return 3 * qubits;
    case AnsatzKind::C15:
      return 2 * qubits;
    case AnsatzKind::C16:
    case AnsatzKind::C17:
      return 3 * qubits - 1;
  }
  throw std::logic_error("unknown ansatz kind");
}

int param_count(AnsatzKind kind, int qubits, int layers) {
  if (layers < 1) throw std::invalid_argument("layer count must be >= 1");
  return (layers + 1) * per_block_param_count(kind, qubits);
}

int param_count(const ModelSpec& spec) {
  return param_count(spec.ansatz, spec.qubits, spec.layers);
}

bool uses_only_uncontrolled_rotations(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::YZY:
    case AnsatzKind::YZY_ENTANGLING:
    case AnsatzKind::HEA:
    case AnsatzKind::C15:
      return true;
    default:
      return false;
  }
}

std::vector<GateOp> build_ansatz_block(AnsatzKind kind, int qubits,
                                       std::span<const double> params) {
  check_block_preconditions(kind, qubits);
  if (params.size() != static_cast<std::size_t>(per_block_param_count(kind, qubits))) {
    throw std::invalid_argument("block parameter count mismatch for " + to_string(kind));
  }

  std::vector<GateOp> gates;
  switch (kind) {
    case AnsatzKind::YZY:
    case AnsatzKind::YZY_ENTANGLING:
    case AnsatzKind::HEA:
      for (int q = 0; q < qubits; ++q) {
        gates.push_back(GateOp::ry(q, params[static_cast<std::size_t>(3 * q)]));
        gates.push_back(GateOp::rz(q, params[static_cast<std::size_t>(3 * q + 1)]));
        gates.push_back(GateOp::ry(q, params[static_cast<std::size_t>(3 * q + 2)]));
      }
      if (kind == AnsatzKind::YZY_ENTANGLING) {
        for (int c = 0; c < qubits; ++c) {
          for (int t = c + 1; t < qubits; ++t) gates.push_back(GateOp::cnot(c, t));
        }
      } else if (kind == AnsatzKind::HEA) {
        push_hea_entanglers(gates, qubits);
      }
      break;
    case AnsatzKind::C15: {
      push_rotation_column(gates, GateKind::RY, qubits, params, 1, 0);
      for_descending_ring(qubits, [&](int c, int t) { gates.push_back(GateOp::cnot(c, t)); });
      push_rotation_column(gates, GateKind::RY, qubits, params.subspan(static_cast<std::size_t>(qubits)), 1, 0);
      for_upward_ring(qubits, [&](int c, int t) { gates.push_back(GateOp::cnot(c, t)); });
      break;
    }
    case AnsatzKind::C16:
      gates = build_c16_c17(qubits, params, GateKind::CRZ);
      break;
    case AnsatzKind::C17:
      gates = build_c16_c17(qubits, params, GateKind::CRX);
      break;
    case AnsatzKind::C18:
      gates = build_c18_c19(qubits, params, GateKind::CRZ);
      break;
    case AnsatzKind::C19:
      gates = build_c18_c19(qubits, params, GateKind::CRX);
      break;
  }
  return gates;
}

std::vector<GateOp> build_encoding_layer(const FeatureMapSpec& fm, int qubits,
                                         std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(fm.dims())) {
    throw std::invalid_argument("input dimension does not match feature map");
  }
  std::vector<GateOp> gates;
  for (int d = 0; d < fm.dims(); ++d) {
    GateKind kind;
    switch (fm.axes[static_cast<std::size_t>(d)]) {
      case PauliAxis::X: kind = GateKind::RX; break;
      case PauliAxis::Y: kind = GateKind::RY; break;
      case PauliAxis::Z: kind = GateKind::RZ; break;
      default: throw std::logic_error("unknown axis");
    }
    for (int q = 0; q < qubits; ++q) {
      gates.push_back({kind, q, -1, x[static_cast<std::size_t>(d)]});
    }
  }
  return gates;
}

std::vector<GateOp> build_model_circuit(const ModelSpec& spec, std::span<const double> theta,
                                        std::span<const double> x) {
  validate_model_spec(spec);
  int per_block = per_block_param_count(spec.ansatz, spec.qubits);
  if (theta.size() != static_cast<std::size_t>(param_count(spec))) {
    throw std::invalid_argument("parameter vector length mismatch");
  }

  std::vector<GateOp> gates;
  for (int block = 0; block <= spec.layers; ++block) {
    auto slice = theta.subspan(static_cast<std::size_t>(block * per_block),
                               static_cast<std::size_t>(per_block));
    auto block_gates = build_ansatz_block(spec.ansatz, spec.qubits, slice);
    gates.insert(gates.end(), block_gates.begin(), block_gates.end());
    if (block < spec.layers) {
      auto enc = build_encoding_layer(spec.feature_map, spec.qubits, x);
      gates.insert(gates.end(), enc.begin(), enc.end());
    }
  }
  return gates;
}

double evaluate(const ModelSpec& spec, std::span<const double> theta,
                std::span<const double> x) {
  auto gates = build_model_circuit(spec, theta, x);
  StateVector state(spec.qubits);
  apply_circuit_in_place(state, gates);
  return expectation_mean_z(state);
}

StateVector prepare_ansatz_state(const ModelSpec& spec, std::span<const double> theta) {
  validate_model_spec(spec);
  int per_block = per_block_param_count(spec.ansatz, spec.qubits);
  if (theta.size() != static_cast<std::size_t>(param_count(spec))) {
    throw std::invalid_argument("parameter vector length mismatch");
  }
  StateVector state(spec.qubits);
  for (int block = 0; block <= spec.layers; ++block) {
    auto slice = theta.subspan(static_cast<std::size_t>(block * per_block),
                               static_cast<std::size_t>(per_block));
    auto gates = build_ansatz_block(spec.ansatz, spec.qubits, slice);
    apply_circuit_in_place(state, gates);
  }
  return state;
}

}  // namespace qfp
