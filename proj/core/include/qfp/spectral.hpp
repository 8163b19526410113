#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfp/circuit.hpp"

namespace qfp {

// Uniform grid over [0, 2pi)^D with points_per_axis points per axis,
// coordinate values 2*pi*k/K. Point index runs row-major with axis 0 major.
struct InputGrid {
  int dims = 1;
  int points_per_axis = 0;

  std::size_t size() const;
  std::vector<double> point(std::size_t flat_index) const;
};

// Alias-free grid for a band limit of max_freq per axis. The default
// K = 2*max_freq + 1 is the smallest odd point count that keeps the +-max_freq
// pair in separate bins; requested K must be odd and at least that.
InputGrid make_input_grid(int max_freq, int dims, std::optional<int> points_per_axis = {});

// Fourier coefficients c_w indexed by integer frequency vectors
// w in [-max_freq, max_freq]^dims, stored row-major with axis 0 major.
struct CoefficientTensor {
  int dims = 1;
  int max_freq = 0;
  std::vector<cplx> values;

  int side() const { return 2 * max_freq + 1; }
  std::size_t size() const { return values.size(); }
  std::size_t flat_index(std::span<const int> freq) const;
  cplx at(std::span<const int> freq) const;
  cplx& at(std::span<const int> freq);
  std::vector<int> freq_at(std::size_t flat_index) const;
};

CoefficientTensor make_coefficient_tensor(int dims, int max_freq);

// Forward transform: c_w = K^-D * sum_x f(x) exp(-i w.x), bins mapped to the
// signed range centered on zero. Computed as separable per-axis transforms.
CoefficientTensor dft(const InputGrid& grid, std::span<const double> values);
CoefficientTensor dft(const InputGrid& grid, std::span<const cplx> values);

// Series evaluation sum_w c_w exp(i w.x) on every grid point; exact inverse
// of dft on the sampling grid.
std::vector<cplx> reconstruct(const CoefficientTensor& coeffs, const InputGrid& grid);

// Coefficients of the model output over its (optionally oversampled) grid.
CoefficientTensor model_coefficients(const ModelSpec& spec, std::span<const double> theta,
                                     std::optional<int> points_per_axis = {});

// Multiplicity of gap `freq` in the encoding eigenvalue-difference multiset
// for n qubits and `layers` single-qubit Pauli encoding layers:
// C(2nL, nL - |freq|).
long long degeneracy(int qubits, int layers, int freq);

// Canonical half of the symmetric spectrum: for D=1 the frequencies 0..W;
// for D=2 all (w1, w2) with w2 > 0 plus (w1 >= 0, 0), ordered
// lexicographically with w1 major. Exactly one of {w, -w} appears for w != 0.
struct HalfSpectrumIndex {
  int dims = 1;
  int max_freq = 0;
  std::vector<std::vector<int>> freqs;

  std::size_t size() const { return freqs.size(); }
  std::string label(std::size_t i) const;

  static HalfSpectrumIndex make(int dims, int max_freq);
};

}  // namespace qfp
