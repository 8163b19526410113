#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qfp/spectral.hpp"

namespace qfp {

// Coefficient vectors over the canonical half-spectrum for M independent
// parameter draws. Row m depends only on (master_seed, m), so the matrix is
// reproducible regardless of evaluation order.
struct CoefficientSamples {
  std::optional<ModelSpec> spec;  // empty for surrogate draws
  HalfSpectrumIndex index;
  int sample_count = 0;
  std::uint64_t master_seed = 0;
  std::vector<cplx> matrix;  // sample_count x index.size(), row-major

  cplx at(int sample, std::size_t column) const {
    return matrix[static_cast<std::size_t>(sample) * index.size() + column];
  }
};

// How a pair of complex coefficient columns enters the Pearson formula.
//   complex_conjugated: r = sum (a - a_mean) * conj(b - b_mean) / sqrt(...),
//     one complex scalar per pair, |r| <= 1 by Cauchy-Schwarz.
//   split_real_imag: real and imaginary parts stacked as 2M real samples.
enum class CorrelationMode { complex_conjugated, split_real_imag };

// Draw theta ~ U[0, 2pi]^|theta| for sample `index` of the given stream.
// Shared by the fingerprint and expressibility samplers so both metrics can
// consume the same parameter stream.
std::vector<double> draw_theta(const ModelSpec& spec, std::uint64_t master_seed,
                               std::uint64_t index);

CoefficientSamples sample_coefficients(const ModelSpec& spec, int sample_count,
                                       std::uint64_t master_seed, int threads = 0);

// Matrix of |r(w, w')| over the canonical half-spectrum. Columns with exactly
// zero sample variance (Pearson undefined) are recorded in degenerate_columns;
// their pairs read 0 and are excluded from the FCC averages. Tiny-variance
// columns participate normally.
struct Fingerprint {
  HalfSpectrumIndex index;
  std::vector<double> abs_r;  // P x P, symmetric, unit diagonal
  int sample_count = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::size_t> degenerate_columns;

  std::size_t order() const { return index.size(); }
  double at(std::size_t i, std::size_t j) const { return abs_r[i * order() + j]; }
  bool column_degenerate(std::size_t i) const;
};

Fingerprint pearson_matrix(const CoefficientSamples& samples,
                           CorrelationMode mode = CorrelationMode::complex_conjugated);

// Mean |r| over unordered distinct pairs (strict lower triangle).
double fcc(const Fingerprint& fp);

enum class FccWeighting { uniform, inverse_linear };

// Weighted mean sum |r| w / sum w over the strict lower triangle;
// inverse_linear uses w = 1 / (|w|_1 + |w'|_1), skipping pairs where both
// norms vanish. Uniform weighting reduces to fcc().
double weighted_fcc(const Fingerprint& fp, FccWeighting weighting);

// Per-column sample statistics (unbiased variances).
struct VarianceProfile {
  HalfSpectrumIndex index;
  std::vector<double> var_re;
  std::vector<double> var_im;
  std::vector<double> var_abs;
  std::vector<cplx> mean;
};

VarianceProfile variance_profile(const CoefficientSamples& samples);

// Independent zero-mean complex Gaussian draws per frequency with variance
// proportional to the encoding degeneracy; a fingerprint of these must show
// no correlations, which isolates variance effects from genuine ones.
CoefficientSamples surrogate_samples(int qubits, int layers, int sample_count,
                                     std::uint64_t seed);

// Mean over pairs of sqrt((1 - r^2)) / (M - 1), the finite-sample standard
// error of the fingerprint under independent pair estimates.
double fcc_stderr(const Fingerprint& fp, int sample_count);

}  // namespace qfp
