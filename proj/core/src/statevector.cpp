#include "qfp/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qfp/rng.hpp"

namespace qfp {

namespace {

constexpr int kMaxQubits = 16;

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, 16], got " + std::to_string(n));
  }
}

// Bit position of qubit q in a basis label (qubit 0 = most significant).
inline int bit_position(int qubit_count, int qubit) { return qubit_count - 1 - qubit; }

struct Mat2 {
  cplx a, b, c, d;  // [[a, b], [c, d]]
};

Mat2 rotation_matrix(GateKind kind, double angle) {
  double half = 0.5 * angle;
  double cs = std::cos(half);
  double sn = std::sin(half);
  switch (kind) {
    case GateKind::RX:
    case GateKind::CRX:
      return {cplx(cs, 0.0), cplx(0.0, -sn), cplx(0.0, -sn), cplx(cs, 0.0)};
    case GateKind::RY:
      return {cplx(cs, 0.0), cplx(-sn, 0.0), cplx(sn, 0.0), cplx(cs, 0.0)};
    case GateKind::RZ:
    case GateKind::CRZ:
      return {cplx(cs, -sn), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(cs, sn)};
    default:
      throw std::logic_error("not a rotation gate");
  }
}

void validate_gate(const StateVector& state, const GateOp& gate) {
  int n = state.qubit_count();
  if (gate.target < 0 || gate.target >= n) {
    throw std::invalid_argument("gate target out of range");
  }
  bool needs_control = gate.kind == GateKind::CNOT || gate.kind == GateKind::CRX ||
                       gate.kind == GateKind::CRZ;
  if (needs_control) {
    if (gate.control < 0 || gate.control >= n) {
      throw std::invalid_argument("gate control out of range");
    }
    if (gate.control == gate.target) {
      throw std::invalid_argument("gate control equals target");
    }
  }
}

void apply_single_qubit(std::vector<cplx>& amps, int n, int target, const Mat2& m) {
  std::size_t stride = std::size_t{1} << bit_position(n, target);
  std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      std::size_t i0 = base + off;
      std::size_t i1 = i0 + stride;
      cplx v0 = amps[i0];
      cplx v1 = amps[i1];
      amps[i0] = m.a * v0 + m.b * v1;
      amps[i1] = m.c * v0 + m.d * v1;
    }
  }
}

void apply_controlled(std::vector<cplx>& amps, int n, int control, int target, const Mat2& m) {
  std::size_t cmask = std::size_t{1} << bit_position(n, control);
  std::size_t stride = std::size_t{1} << bit_position(n, target);
  std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      std::size_t i0 = base + off;
      if ((i0 & cmask) == 0) continue;
      std::size_t i1 = i0 + stride;
      cplx v0 = amps[i0];
      cplx v1 = amps[i1];
      amps[i0] = m.a * v0 + m.b * v1;
      amps[i1] = m.c * v0 + m.d * v1;
    }
  }
}

}  // namespace

StateVector::StateVector(int qubit_count) : qubits_(qubit_count) {
  check_qubit_count(qubit_count);
  amps_.assign(std::size_t{1} << qubit_count, cplx(0.0, 0.0));
  amps_[0] = cplx(1.0, 0.0);
}

StateVector StateVector::from_amplitudes(int qubit_count, std::vector<cplx> amplitudes) {
  check_qubit_count(qubit_count);
  if (amplitudes.size() != (std::size_t{1} << qubit_count)) {
    throw std::invalid_argument("amplitude vector length must be 2^n");
  }
  return StateVector(qubit_count, std::move(amplitudes));
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return s;
}

GateOp inverse(const GateOp& gate) {
  GateOp inv = gate;
  inv.angle = -gate.angle;
  return inv;
}

void apply_gate_in_place(StateVector& state, const GateOp& gate) {
  validate_gate(state, gate);
  auto& amps = state.mutable_amplitudes();
  int n = state.qubit_count();
  switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      apply_single_qubit(amps, n, gate.target, rotation_matrix(gate.kind, gate.angle));
      break;
    case GateKind::CNOT: {
      std::size_t cmask = std::size_t{1} << bit_position(n, gate.control);
      std::size_t tmask = std::size_t{1} << bit_position(n, gate.target);
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) {
          std::swap(amps[i], amps[i | tmask]);
        }
      }
      break;
    }
    case GateKind::CRX:
    case GateKind::CRZ:
      apply_controlled(amps, n, gate.control, gate.target,
                       rotation_matrix(gate.kind, gate.angle));
      break;
  }
}

void apply_circuit_in_place(StateVector& state, std::span<const GateOp> gates) {
  for (const GateOp& g : gates) apply_gate_in_place(state, g);
}

StateVector apply_gate(const StateVector& state, const GateOp& gate) {
  StateVector out = state;
  apply_gate_in_place(out, gate);
  return out;
}

StateVector apply_circuit(const StateVector& state, std::span<const GateOp> gates) {
  StateVector out = state;
  apply_circuit_in_place(out, gates);
  return out;
}

double expectation_mean_z(const StateVector& state) {
  int n = state.qubit_count();
  double acc = 0.0;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    int ones = std::popcount(i);
    // sum_q <sigma_z^q> contribution of basis state i is (n - 2*ones)
    acc += p * static_cast<double>(n - 2 * ones);
  }
  return acc / static_cast<double>(n);
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.qubit_count() != b.qubit_count()) {
    throw std::invalid_argument("fidelity requires equal qubit counts");
  }
  cplx overlap(0.0, 0.0);
  auto aa = a.amplitudes();
  auto bb = b.amplitudes();
  for (std::size_t i = 0; i < aa.size(); ++i) {
    overlap += std::conj(aa[i]) * bb[i];
  }
  return std::norm(overlap);
}

double sample_mean_z(const StateVector& state, int shots, std::uint64_t rng_seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    acc += std::norm(amps[i]);
    cdf[i] = acc;
  }
  cdf.back() = 1.0;  // guard against rounding in the running sum

  int n = state.qubit_count();
  Rng rng(rng_seed);
  double total = 0.0;
  for (int s = 0; s < shots; ++s) {
    double u = rng.uniform();
    // first index with cdf > u, so zero-probability plateaus are never chosen
    std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (idx >= cdf.size()) idx = cdf.size() - 1;
    int ones = std::popcount(idx);
    total += static_cast<double>(n - 2 * ones) / static_cast<double>(n);
  }
  return total / static_cast<double>(shots);
}

}  // namespace qfp
