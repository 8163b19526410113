#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qfp {

using cplx = std::complex<double>;

// Dense complex statevector over n qubits (dimension 2^n).
//
// Conventions used throughout the library:
//   * qubit 0 is the MOST significant bit of a basis-state label, so for
//     n = 2 the basis order is |00>, |01>, |10>, |11> with qubit 0 first;
//   * rotations are R_P(a) = exp(-i a P / 2) for P in {X, Y, Z};
//   * controlled rotations act on the target when the control bit is 1.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(int qubit_count);

  static StateVector from_amplitudes(int qubit_count, std::vector<cplx> amplitudes);

  int qubit_count() const { return qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx amplitude(std::size_t basis_index) const { return amps_[basis_index]; }
  double norm_sq() const;

  std::vector<cplx>& mutable_amplitudes() { return amps_; }

 private:
  StateVector(int qubits, std::vector<cplx> amps) : qubits_(qubits), amps_(std::move(amps)) {}

  int qubits_;
  std::vector<cplx> amps_;
};

enum class GateKind { RX, RY, RZ, CNOT, CRX, CRZ };

struct GateOp {
  GateKind kind = GateKind::RX;
  int target = 0;
  int control = -1;  // -1 when the gate is uncontrolled
  double angle = 0.0;

  static GateOp rx(int target, double angle) { return {GateKind::RX, target, -1, angle}; }
  static GateOp ry(int target, double angle) { return {GateKind::RY, target, -1, angle}; }
  static GateOp rz(int target, double angle) { return {GateKind::RZ, target, -1, angle}; }
  static GateOp cnot(int control, int target) { return {GateKind::CNOT, target, control, 0.0}; }
  static GateOp crx(int control, int target, double angle) {
    return {GateKind::CRX, target, control, angle};
  }
  static GateOp crz(int control, int target, double angle) {
    return {GateKind::CRZ, target, control, angle};
  }

  bool has_control() const { return control >= 0; }
  bool parameterized() const { return kind != GateKind::CNOT; }
};

// Gate with the reverse action (negated angle; CNOT is its own inverse).
GateOp inverse(const GateOp& gate);

void apply_gate_in_place(StateVector& state, const GateOp& gate);
void apply_circuit_in_place(StateVector& state, std::span<const GateOp> gates);

StateVector apply_gate(const StateVector& state, const GateOp& gate);
StateVector apply_circuit(const StateVector& state, std::span<const GateOp> gates);

// <psi| (1/n) sum_i sigma_z^i |psi>, in [-1, 1].
double expectation_mean_z(const StateVector& state);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Mean magnetization of `shots` bitstrings drawn from |psi|^2. Unbiased
// estimator of expectation_mean_z; deterministic for a given seed.
double sample_mean_z(const StateVector& state, int shots, std::uint64_t rng_seed);

}  // namespace qfp
