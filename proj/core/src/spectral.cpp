#include "qfp/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t checked_pow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void check_dims(int dims) {
  if (dims < 1 || dims > 2) {
    throw std::invalid_argument("grid dimension must be 1 or 2");
  }
}

// 1D transform along one axis of a row-major K^D array.
void dft_axis(std::vector<cplx>& data, int points, int dims, int axis) {
  std::size_t k = static_cast<std::size_t>(points);
  std::size_t stride = 1;
  for (int a = axis + 1; a < dims; ++a) stride *= k;
  std::size_t outer = data.size() / (k * stride);

  std::vector<cplx> twiddle(k * k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t m = 0; m < k; ++m) {
      double phase = -kTwoPi * static_cast<double>(j * m % k) / static_cast<double>(points);
      twiddle[j * k + m] = cplx(std::cos(phase), std::sin(phase));
    }
  }

  std::vector<cplx> line(k);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      std::size_t base = o * k * stride + s;
      for (std::size_t j = 0; j < k; ++j) {
        cplx acc(0.0, 0.0);
        for (std::size_t m = 0; m < k; ++m) {
          acc += twiddle[j * k + m] * data[base + m * stride];
        }
        line[j] = acc;
      }
      for (std::size_t j = 0; j < k; ++j) data[base + j * stride] = line[j];
    }
  }
}

CoefficientTensor dft_impl(const InputGrid& grid, std::vector<cplx> data) {
  if (data.size() != grid.size()) {
    throw std::invalid_argument("value count does not match grid size");
  }
  int k = grid.points_per_axis;
  for (int axis = 0; axis < grid.dims; ++axis) dft_axis(data, k, grid.dims, axis);

  int w = (k - 1) / 2;
  CoefficientTensor out = make_coefficient_tensor(grid.dims, w);
  double norm = 1.0;
  for (int d = 0; d < grid.dims; ++d) norm /= static_cast<double>(k);

  // Reorder bins j in [0, K) to signed frequencies: w = j for j <= (K-1)/2,
  // else j - K.
  std::vector<int> freq(static_cast<std::size_t>(grid.dims));
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    std::size_t rest = flat;
    for (int d = grid.dims - 1; d >= 0; --d) {
      int bin = static_cast<int>(rest % static_cast<std::size_t>(k));
      rest /= static_cast<std::size_t>(k);
      freq[static_cast<std::size_t>(d)] = bin <= w ? bin : bin - k;
    }
    out.at(freq) = data[flat] * norm;
  }
  return out;
}

}  // namespace

std::size_t InputGrid::size() const {
  return checked_pow(static_cast<std::size_t>(points_per_axis), dims);
}

std::vector<double> InputGrid::point(std::size_t flat_index) const {
  std::vector<double> x(static_cast<std::size_t>(dims));
  std::size_t rest = flat_index;
  for (int d = dims - 1; d >= 0; --d) {
    std::size_t digit = rest % static_cast<std::size_t>(points_per_axis);
    rest /= static_cast<std::size_t>(points_per_axis);
    x[static_cast<std::size_t>(d)] =
        kTwoPi * static_cast<double>(digit) / static_cast<double>(points_per_axis);
  }
  return x;
}

InputGrid make_input_grid(int max_freq, int dims, std::optional<int> points_per_axis) {
  check_dims(dims);
  if (max_freq < 1) throw std::invalid_argument("band limit must be >= 1");
  int k = points_per_axis.value_or(2 * max_freq + 1);
  if (k < 2 * max_freq + 1) {
    throw std::invalid_argument("grid of " + std::to_string(k) +
                                " points per axis aliases a band limit of " +
                                std::to_string(max_freq));
  }
  if (k % 2 == 0) {
    throw std::invalid_argument(
        "points per axis must be odd so the +-w bins stay distinct");
  }
  return InputGrid{dims, k};
}

std::size_t CoefficientTensor::flat_index(std::span<const int> freq) const {
  if (freq.size() != static_cast<std::size_t>(dims)) {
    throw std::invalid_argument("frequency vector dimension mismatch");
  }
  std::size_t idx = 0;
  for (int d = 0; d < dims; ++d) {
    int f = freq[static_cast<std::size_t>(d)];
    if (f < -max_freq || f > max_freq) {
      throw std::out_of_range("frequency component outside [-W, W]");
    }
    idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(f + max_freq);
  }
  return idx;
}

cplx CoefficientTensor::at(std::span<const int> freq) const { return values[flat_index(freq)]; }
cplx& CoefficientTensor::at(std::span<const int> freq) { return values[flat_index(freq)]; }

std::vector<int> CoefficientTensor::freq_at(std::size_t flat_index) const {
  std::vector<int> freq(static_cast<std::size_t>(dims));
  std::size_t rest = flat_index;
  for (int d = dims - 1; d >= 0; --d) {
    freq[static_cast<std::size_t>(d)] =
        static_cast<int>(rest % static_cast<std::size_t>(side())) - max_freq;
    rest /= static_cast<std::size_t>(side());
  }
  return freq;
}

CoefficientTensor make_coefficient_tensor(int dims, int max_freq) {
  check_dims(dims);
  if (max_freq < 0) throw std::invalid_argument("band limit must be >= 0");
  CoefficientTensor t;
  t.dims = dims;
  t.max_freq = max_freq;
  t.values.assign(checked_pow(static_cast<std::size_t>(t.side()), dims), cplx(0.0, 0.0));
  return t;
}

CoefficientTensor dft(const InputGrid& grid, std::span<const double> values) {
  std::vector<cplx> data(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) data[i] = cplx(values[i], 0.0);
  return dft_impl(grid, std::move(data));
}

CoefficientTensor dft(const InputGrid& grid, std::span<const cplx> values) {
  return dft_impl(grid, std::vector<cplx>(values.begin(), values.end()));
}

std::vector<cplx> reconstruct(const CoefficientTensor& coeffs, const InputGrid& grid) {
  if (coeffs.dims != grid.dims) throw std::invalid_argument("dimension mismatch");
  std::vector<cplx> out(grid.size(), cplx(0.0, 0.0));
  for (std::size_t p = 0; p < out.size(); ++p) {
    std::vector<double> x = grid.point(p);
    cplx acc(0.0, 0.0);
    for (std::size_t f = 0; f < coeffs.size(); ++f) {
      std::vector<int> freq = coeffs.freq_at(f);
      double phase = 0.0;
      for (int d = 0; d < coeffs.dims; ++d) {
        phase += static_cast<double>(freq[static_cast<std::size_t>(d)]) *
                 x[static_cast<std::size_t>(d)];
      }
      acc += coeffs.values[f] * cplx(std::cos(phase), std::sin(phase));
    }
    out[p] = acc;
  }
  return out;
}

CoefficientTensor model_coefficients(const ModelSpec& spec, std::span<const double> theta,
                                     std::optional<int> points_per_axis) {
  validate_model_spec(spec);
  InputGrid grid = make_input_grid(spec.max_frequency(), spec.dims(), points_per_axis);
  std::vector<double> values(grid.size());
  for (std::size_t p = 0; p < values.size(); ++p) {
    std::vector<double> x = grid.point(p);
    values[p] = evaluate(spec, theta, x);
  }
  return dft(grid, values);
}

long long degeneracy(int qubits, int layers, int freq) {
  if (qubits < 1 || layers < 1) throw std::invalid_argument("need qubits >= 1, layers >= 1");
  long long m = static_cast<long long>(qubits) * layers;
  long long a = std::llabs(static_cast<long long>(freq));
  if (a > m) throw std::invalid_argument("frequency outside the encoding band");
  if (m > 31) throw std::overflow_error("degeneracy count exceeds 64-bit range");
  // C(2m, m - |freq|), with wide intermediates to avoid overflow near m = 31
  long long top = 2 * m;
  long long k = m - a;
  unsigned __int128 result = 1;
  for (long long i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned __int128>(top - k + i) /
             static_cast<unsigned __int128>(i);
  }
  return static_cast<long long>(result);
}

std::string HalfSpectrumIndex::label(std::size_t i) const {
  const auto& f = freqs[i];
  std::string out = std::to_string(f[0]);
  for (std::size_t d = 1; d < f.size(); ++d) out += "," + std::to_string(f[d]);
  return out;
}

HalfSpectrumIndex HalfSpectrumIndex::make(int dims, int max_freq) {
  check_dims(dims);
  if (max_freq < 1) throw std::invalid_argument("band limit must be >= 1");
  HalfSpectrumIndex idx;
  idx.dims = dims;
  idx.max_freq = max_freq;
  if (dims == 1) {
    for (int w = 0; w <= max_freq; ++w) idx.freqs.push_back({w});
  } else {
    for (int w1 = -max_freq; w1 <= max_freq; ++w1) {
      for (int w2 = -max_freq; w2 <= max_freq; ++w2) {
        bool canonical = w2 > 0 || (w2 == 0 && w1 >= 0);
        if (canonical) idx.freqs.push_back({w1, w2});
      }
    }
  }
  return idx;
}

}  // namespace qfp
