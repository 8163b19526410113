#include "qfp/fourier_data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qfp/rng.hpp"

namespace qfp {

FourierSeriesTarget random_target(int max_freq, int dims, std::uint64_t seed) {
  if (max_freq < 1) throw std::invalid_argument("band limit must be >= 1");
  HalfSpectrumIndex half = HalfSpectrumIndex::make(dims, max_freq);

  FourierSeriesTarget target;
  target.seed = seed;
  target.coefficients = make_coefficient_tensor(dims, max_freq);

  Rng rng(derive_seed(seed, SeedRole::target_coefficients, 0));
  std::vector<int> mirrored(static_cast<std::size_t>(dims));
  for (const auto& freq : half.freqs) {
    double r = rng.uniform_open0();
    double p = rng.uniform_open0();
    double mag = std::sqrt(r);
    bool is_zero_mode = true;
    for (int f : freq) {
      if (f != 0) {
        is_zero_mode = false;
        break;
      }
    }
    cplx value;
    if (is_zero_mode) {
      value = cplx(mag, 0.0);  // zero mode stays real
    } else {
      double phase = -2.0 * std::numbers::pi * p;
      value = cplx(mag * std::cos(phase), mag * std::sin(phase));
    }
    target.coefficients.at(freq) = value;
    for (std::size_t d = 0; d < freq.size(); ++d) mirrored[d] = -freq[d];
    target.coefficients.at(mirrored) = std::conj(value);
  }
  return target;
}

double evaluate_target(const FourierSeriesTarget& target, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(target.dims())) {
    throw std::invalid_argument("input dimension mismatch");
  }
  cplx acc(0.0, 0.0);
  const CoefficientTensor& c = target.coefficients;
  for (std::size_t f = 0; f < c.size(); ++f) {
    std::vector<int> freq = c.freq_at(f);
    double phase = 0.0;
    for (std::size_t d = 0; d < freq.size(); ++d) {
      phase += static_cast<double>(freq[d]) * x[d];
    }
    acc += c.values[f] * cplx(std::cos(phase), std::sin(phase));
  }
  if (std::abs(acc.imag()) > 1e-12 * std::max(1.0, std::abs(acc.real()))) {
    throw std::logic_error("target coefficients violate Hermitian symmetry");
  }
  return acc.real();
}

RegressionDataset make_dataset(const FourierSeriesTarget& target) {
  RegressionDataset ds;
  ds.grid = make_input_grid(target.max_freq(), target.dims());
  ds.targets.resize(ds.grid.size());
  for (std::size_t p = 0; p < ds.targets.size(); ++p) {
    ds.targets[p] = evaluate_target(target, ds.grid.point(p));
  }
  return ds;
}

}  // namespace qfp
