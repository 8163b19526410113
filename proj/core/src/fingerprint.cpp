#include "qfp/fingerprint.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qfp/parallel.hpp"
#include "qfp/rng.hpp"

namespace qfp {

namespace {

// Only columns with exactly zero sample variance are excluded: the Pearson
// quotient is undefined there. Columns whose variance is merely tiny (for
// structurally dead frequencies it is float residue around 1e-33) still
// normalize to well-defined correlations, and those pairs carry a large part
// of the headline FCC differences between ansatz kinds, so they stay in.
constexpr double kVarianceFloor = 0.0;

void check_sample_count(int sample_count) {
  if (sample_count < 2) throw std::invalid_argument("need at least 2 samples");
}

int l1_norm(const std::vector<int>& freq) {
  int acc = 0;
  for (int f : freq) acc += std::abs(f);
  return acc;
}

}  // namespace

std::vector<double> draw_theta(const ModelSpec& spec, std::uint64_t master_seed,
                               std::uint64_t index) {
  Rng rng(derive_seed(master_seed, SeedRole::theta_sample, index));
  std::vector<double> theta(static_cast<std::size_t>(param_count(spec)));
  for (double& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return theta;
}

CoefficientSamples sample_coefficients(const ModelSpec& spec, int sample_count,
                                       std::uint64_t master_seed, int threads) {
  validate_model_spec(spec);
  check_sample_count(sample_count);

  CoefficientSamples out;
  out.spec = spec;
  out.index = HalfSpectrumIndex::make(spec.dims(), spec.max_frequency());
  out.sample_count = sample_count;
  out.master_seed = master_seed;
  out.matrix.assign(static_cast<std::size_t>(sample_count) * out.index.size(), cplx(0.0, 0.0));

  const auto& freqs = out.index.freqs;
  parallel_for(static_cast<std::size_t>(sample_count), threads, [&](std::size_t m) {
    std::vector<double> theta = draw_theta(spec, master_seed, m);
    CoefficientTensor tensor = model_coefficients(spec, theta);
    cplx* row = out.matrix.data() + m * out.index.size();
    for (std::size_t c = 0; c < freqs.size(); ++c) row[c] = tensor.at(freqs[c]);
  });
  return out;
}

bool Fingerprint::column_degenerate(std::size_t i) const {
  return std::find(degenerate_columns.begin(), degenerate_columns.end(), i) !=
         degenerate_columns.end();
}

Fingerprint pearson_matrix(const CoefficientSamples& samples, CorrelationMode mode) {
  check_sample_count(samples.sample_count);
  std::size_t cols = samples.index.size();
  std::size_t rows = static_cast<std::size_t>(samples.sample_count);

  std::vector<cplx> mean(cols, cplx(0.0, 0.0));
  for (std::size_t m = 0; m < rows; ++m) {
    const cplx* row = samples.matrix.data() + m * cols;
    for (std::size_t c = 0; c < cols; ++c) mean[c] += row[c];
  }
  for (cplx& v : mean) v /= static_cast<double>(rows);

  // Centered columns. In split mode the real and imaginary parts of a column
  // form one stack of 2M real samples, so both center on the joint mean.
  std::vector<cplx> centered(samples.matrix.size());
  if (mode == CorrelationMode::complex_conjugated) {
    for (std::size_t m = 0; m < rows; ++m) {
      const cplx* row = samples.matrix.data() + m * cols;
      cplx* out = centered.data() + m * cols;
      for (std::size_t c = 0; c < cols; ++c) out[c] = row[c] - mean[c];
    }
  } else {
    for (std::size_t c = 0; c < cols; ++c) {
      double joint_mean = (mean[c].real() + mean[c].imag()) / 2.0;
      for (std::size_t m = 0; m < rows; ++m) {
        const cplx v = samples.matrix[m * cols + c];
        centered[m * cols + c] = cplx(v.real() - joint_mean, v.imag() - joint_mean);
      }
    }
  }

  std::vector<double> sq_norm(cols, 0.0);
  for (std::size_t m = 0; m < rows; ++m) {
    const cplx* row = centered.data() + m * cols;
    for (std::size_t c = 0; c < cols; ++c) sq_norm[c] += std::norm(row[c]);
  }

  Fingerprint fp;
  fp.index = samples.index;
  fp.sample_count = samples.sample_count;
  fp.master_seed = samples.master_seed;
  fp.abs_r.assign(cols * cols, 0.0);

  std::size_t live = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (sq_norm[c] / static_cast<double>(rows) <= kVarianceFloor) {
      fp.degenerate_columns.push_back(c);
    } else {
      ++live;
    }
  }
  if (live == 0) {
    throw std::runtime_error("all coefficient columns are constant; correlation undefined");
  }

  for (std::size_t i = 0; i < cols; ++i) {
    fp.abs_r[i * cols + i] = 1.0;
    if (fp.column_degenerate(i)) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (fp.column_degenerate(j)) continue;
      double value = 0.0;
      if (mode == CorrelationMode::complex_conjugated) {
        cplx dot(0.0, 0.0);
        for (std::size_t m = 0; m < rows; ++m) {
          dot += centered[m * cols + i] * std::conj(centered[m * cols + j]);
        }
        value = std::abs(dot) / std::sqrt(sq_norm[i] * sq_norm[j]);
      } else {
        double dot = 0.0;
        for (std::size_t m = 0; m < rows; ++m) {
          const cplx a = centered[m * cols + i];
          const cplx b = centered[m * cols + j];
          dot += a.real() * b.real() + a.imag() * b.imag();
        }
        value = std::abs(dot) / std::sqrt(sq_norm[i] * sq_norm[j]);
      }
      fp.abs_r[i * cols + j] = value;
      fp.abs_r[j * cols + i] = value;
    }
  }
  return fp;
}

double fcc(const Fingerprint& fp) {
  std::size_t n = fp.order();
  if (n < 2) throw std::invalid_argument("fingerprint needs at least 2 frequencies");
  double acc = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (fp.column_degenerate(i)) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (fp.column_degenerate(j)) continue;
      acc += fp.at(i, j);
      ++pairs;
    }
  }
  if (pairs == 0) throw std::runtime_error("no non-degenerate frequency pairs");
  return acc / static_cast<double>(pairs);
}

double weighted_fcc(const Fingerprint& fp, FccWeighting weighting) {
  if (weighting == FccWeighting::uniform) return fcc(fp);
  std::size_t n = fp.order();
  if (n < 2) throw std::invalid_argument("fingerprint needs at least 2 frequencies");
  double acc = 0.0;
  double total_weight = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    if (fp.column_degenerate(i)) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (fp.column_degenerate(j)) continue;
      int norm_sum = l1_norm(fp.index.freqs[i]) + l1_norm(fp.index.freqs[j]);
      if (norm_sum == 0) continue;  // weight undefined for a pair of zero vectors
      double w = 1.0 / static_cast<double>(norm_sum);
      acc += fp.at(i, j) * w;
      total_weight += w;
    }
  }
  if (total_weight == 0.0) throw std::runtime_error("no weighted frequency pairs");
  return acc / total_weight;
}

VarianceProfile variance_profile(const CoefficientSamples& samples) {
  check_sample_count(samples.sample_count);
  std::size_t cols = samples.index.size();
  std::size_t rows = static_cast<std::size_t>(samples.sample_count);

  VarianceProfile prof;
  prof.index = samples.index;
  prof.var_re.assign(cols, 0.0);
  prof.var_im.assign(cols, 0.0);
  prof.var_abs.assign(cols, 0.0);
  prof.mean.assign(cols, cplx(0.0, 0.0));

  std::vector<double> mean_abs(cols, 0.0);
  for (std::size_t m = 0; m < rows; ++m) {
    const cplx* row = samples.matrix.data() + m * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      prof.mean[c] += row[c];
      mean_abs[c] += std::abs(row[c]);
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    prof.mean[c] /= static_cast<double>(rows);
    mean_abs[c] /= static_cast<double>(rows);
  }
  for (std::size_t m = 0; m < rows; ++m) {
    const cplx* row = samples.matrix.data() + m * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      double dre = row[c].real() - prof.mean[c].real();
      double dim = row[c].imag() - prof.mean[c].imag();
      double dab = std::abs(row[c]) - mean_abs[c];
      prof.var_re[c] += dre * dre;
      prof.var_im[c] += dim * dim;
      prof.var_abs[c] += dab * dab;
    }
  }
  double denom = static_cast<double>(rows - 1);
  for (std::size_t c = 0; c < cols; ++c) {
    prof.var_re[c] /= denom;
    prof.var_im[c] /= denom;
    prof.var_abs[c] /= denom;
  }
  return prof;
}

CoefficientSamples surrogate_samples(int qubits, int layers, int sample_count,
                                     std::uint64_t seed) {
  check_sample_count(sample_count);
  int max_freq = qubits * layers;

  CoefficientSamples out;
  out.index = HalfSpectrumIndex::make(1, max_freq);
  out.sample_count = sample_count;
  out.master_seed = seed;
  out.matrix.assign(static_cast<std::size_t>(sample_count) * out.index.size(), cplx(0.0, 0.0));

  // Complex variance per column = degeneracy ratio against the zero mode.
  double deg0 = static_cast<double>(degeneracy(qubits, layers, 0));
  std::vector<double> sigma(out.index.size());
  for (std::size_t c = 0; c < out.index.size(); ++c) {
    int w = out.index.freqs[c][0];
    double var = static_cast<double>(degeneracy(qubits, layers, w)) / deg0;
    sigma[c] = std::sqrt(var / 2.0);  // per real component
  }

  for (int m = 0; m < sample_count; ++m) {
    Rng rng(derive_seed(seed, SeedRole::surrogate, static_cast<std::uint64_t>(m)));
    cplx* row = out.matrix.data() + static_cast<std::size_t>(m) * out.index.size();
    for (std::size_t c = 0; c < out.index.size(); ++c) {
      row[c] = cplx(sigma[c] * rng.gaussian(), sigma[c] * rng.gaussian());
    }
  }
  return out;
}

double fcc_stderr(const Fingerprint& fp, int sample_count) {
  check_sample_count(sample_count);
  std::size_t n = fp.order();
  double acc = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (fp.column_degenerate(i)) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (fp.column_degenerate(j)) continue;
      double r = fp.at(i, j);
      acc += std::sqrt(std::max(0.0, 1.0 - r * r)) / static_cast<double>(sample_count - 1);
      ++pairs;
    }
  }
  if (pairs == 0) throw std::runtime_error("no non-degenerate frequency pairs");
  return acc / static_cast<double>(pairs);
}

}  // namespace qfp
