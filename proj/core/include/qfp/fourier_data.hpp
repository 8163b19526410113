#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qfp/spectral.hpp"

namespace qfp {

// Random truncated Fourier series with Hermitian-symmetric coefficients, so
// it is real on every input. Coefficient magnitudes are at most 1.
struct FourierSeriesTarget {
  CoefficientTensor coefficients;
  std::uint64_t seed = 0;

  int dims() const { return coefficients.dims; }
  int max_freq() const { return coefficients.max_freq; }
};

// Draw sqrt(r) * exp(-i 2 pi p), r and p uniform in (0, 1], for every
// canonical half-spectrum frequency, mirror the conjugates, and keep the
// zero mode real.
FourierSeriesTarget random_target(int max_freq, int dims, std::uint64_t seed);

// sum_w c_w exp(i w.x); the imaginary residue must vanish by symmetry and is
// checked before being discarded.
double evaluate_target(const FourierSeriesTarget& target, std::span<const double> x);

struct RegressionDataset {
  InputGrid grid;
  std::vector<double> targets;  // one value per grid point, same ordering

  std::size_t size() const { return targets.size(); }
};

// Nyquist-sampled dataset (K = 2*max_freq + 1 per axis) with exact values.
RegressionDataset make_dataset(const FourierSeriesTarget& target);

}  // namespace qfp
