#pragma once

#include <span>
#include <string>
#include <vector>

#include "qfp/statevector.hpp"

namespace qfp {

// The eight variational blocks supported by the model builder. Circuits named
// C* follow the usual circuit-zoo numbering; YZY is a rotation-only block,
// YZY_ENTANGLING adds an all-to-all CNOT cascade, HEA is the circular
// hardware-efficient layout.
enum class AnsatzKind { YZY, YZY_ENTANGLING, HEA, C15, C16, C17, C18, C19 };

constexpr AnsatzKind kAllAnsatzKinds[] = {
    AnsatzKind::YZY, AnsatzKind::YZY_ENTANGLING, AnsatzKind::HEA, AnsatzKind::C15,
    AnsatzKind::C16, AnsatzKind::C17,            AnsatzKind::C18, AnsatzKind::C19,
};

std::string to_string(AnsatzKind kind);
AnsatzKind ansatz_from_string(const std::string& name);

enum class PauliAxis { X, Y, Z };

std::string to_string(PauliAxis axis);
PauliAxis axis_from_string(const std::string& name);

// One Pauli rotation axis per input dimension; the encoding layer applies
// R_axis(x_d) to every qubit, dimension by dimension.
struct FeatureMapSpec {
  std::vector<PauliAxis> axes;

  int dims() const { return static_cast<int>(axes.size()); }
};

// Layered model: block_1, S(x), block_2, ..., S(x), block_{L+1}, measured
// with the fixed mean-Z observable. Output frequencies live in
// [-n*layers, n*layers]^D.
struct ModelSpec {
  int qubits = 0;
  int layers = 1;
  AnsatzKind ansatz = AnsatzKind::YZY;
  FeatureMapSpec feature_map{{PauliAxis::Y}};

  int dims() const { return feature_map.dims(); }
  int max_frequency() const { return qubits * layers; }
};

void validate_model_spec(const ModelSpec& spec);

// Parameters consumed by a single variational block.
int per_block_param_count(AnsatzKind kind, int qubits);

// Total trainable parameters: (layers + 1) blocks, no weight tying.
int param_count(AnsatzKind kind, int qubits, int layers);
int param_count(const ModelSpec& spec);

// True when every parameterized gate in the block is an uncontrolled Pauli
// rotation, i.e. the two-term parameter-shift rule applies.
bool uses_only_uncontrolled_rotations(AnsatzKind kind);

std::vector<GateOp> build_ansatz_block(AnsatzKind kind, int qubits,
                                       std::span<const double> block_params);

// Encoding layer S(x): for each dimension d, R_{axes[d]}(x[d]) on all qubits.
std::vector<GateOp> build_encoding_layer(const FeatureMapSpec& fm, int qubits,
                                         std::span<const double> x);

std::vector<GateOp> build_model_circuit(const ModelSpec& spec, std::span<const double> theta,
                                        std::span<const double> x);

// f(x, theta) = <0| U^dag M U |0> with M the mean-Z observable.
double evaluate(const ModelSpec& spec, std::span<const double> theta,
                std::span<const double> x);

// State prepared by the variational blocks alone (no encoding layers);
// this is the circuit the expressibility metric characterizes.
StateVector prepare_ansatz_state(const ModelSpec& spec, std::span<const double> theta);

}  // namespace qfp
