#include "qfp/expressibility.hpp"

#include <cmath>
#include <stdexcept>

#include "qfp/fingerprint.hpp"
#include "qfp/parallel.hpp"

namespace qfp {

double ExpressibilityResult::complement() const { return std::exp(-kl); }

double haar_bin_mass(double bin_lo, double bin_hi, int qubits) {
  if (!(0.0 <= bin_lo && bin_lo < bin_hi && bin_hi <= 1.0)) {
    throw std::invalid_argument("bin interval must satisfy 0 <= lo < hi <= 1");
  }
  double pow_exp = std::pow(2.0, qubits) - 1.0;
  return std::pow(1.0 - bin_lo, pow_exp) - std::pow(1.0 - bin_hi, pow_exp);
}

std::vector<double> sample_fidelities(const ModelSpec& spec, int pair_count,
                                      std::uint64_t seed, int threads) {
  validate_model_spec(spec);
  if (pair_count < 1) throw std::invalid_argument("need at least one pair");
  std::vector<double> out(static_cast<std::size_t>(pair_count), 0.0);
  parallel_for(out.size(), threads, [&](std::size_t k) {
    std::vector<double> ta = draw_theta(spec, seed, 2 * k);
    std::vector<double> tb = draw_theta(spec, seed, 2 * k + 1);
    StateVector a = prepare_ansatz_state(spec, ta);
    StateVector b = prepare_ansatz_state(spec, tb);
    out[k] = fidelity(a, b);
  });
  return out;
}

FidelityHistogram histogram_fidelities(std::span<const double> fidelities, int bins) {
  if (bins < 2) throw std::invalid_argument("need at least 2 bins");
  FidelityHistogram hist;
  hist.bins = bins;
  hist.counts.assign(static_cast<std::size_t>(bins), 0);
  hist.pair_count = fidelities.size();
  for (double f : fidelities) {
    int b = static_cast<int>(f * bins);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;  // F = 1 lands in the last bin
    ++hist.counts[static_cast<std::size_t>(b)];
  }
  return hist;
}

ExpressibilityResult expressibility_from_fidelities(std::span<const double> fidelities,
                                                    int bins, int qubits) {
  FidelityHistogram hist = histogram_fidelities(fidelities, bins);
  double kl = 0.0;
  for (int b = 0; b < bins; ++b) {
    std::uint64_t count = hist.counts[static_cast<std::size_t>(b)];
    if (count == 0) continue;
    double p = static_cast<double>(count) / static_cast<double>(hist.pair_count);
    double q = haar_bin_mass(hist.bin_lo(b), hist.bin_hi(b), qubits);
    kl += p * std::log(p / q);
  }
  ExpressibilityResult result;
  result.kl = kl;
  result.bins = bins;
  result.pair_count = hist.pair_count;
  return result;
}

ExpressibilityResult expressibility(const ModelSpec& spec, int pair_count, int bins,
                                    std::uint64_t seed, int threads) {
  std::vector<double> fids = sample_fidelities(spec, pair_count, seed, threads);
  ExpressibilityResult result = expressibility_from_fidelities(fids, bins, spec.qubits);
  result.seed = seed;
  return result;
}

}  // namespace qfp
