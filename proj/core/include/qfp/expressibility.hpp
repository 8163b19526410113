#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qfp/circuit.hpp"

namespace qfp {

struct FidelityHistogram {
  int bins = 75;
  std::vector<std::uint64_t> counts;  // uniform bins on [0, 1], upper edge inclusive
  std::uint64_t pair_count = 0;

  double bin_lo(int b) const { return static_cast<double>(b) / bins; }
  double bin_hi(int b) const { return static_cast<double>(b + 1) / bins; }
};

struct ExpressibilityResult {
  double kl = 0.0;
  int bins = 75;
  std::uint64_t pair_count = 0;
  std::uint64_t seed = 0;

  // exp(-kl); 1 for a Haar-like circuit, reported alongside the raw value.
  double complement() const;
};

// Probability mass the Haar fidelity density P(F) = (N-1)(1-F)^(N-2),
// N = 2^n, assigns to [bin_lo, bin_hi]: (1-lo)^(N-1) - (1-hi)^(N-1).
double haar_bin_mass(double bin_lo, double bin_hi, int qubits);

// Fidelities between pairs of ansatz-only states (no encoding layers) under
// independent uniform parameter draws; pair k consumes theta streams 2k and
// 2k+1 of the shared draw_theta sequence.
std::vector<double> sample_fidelities(const ModelSpec& spec, int pair_count,
                                      std::uint64_t seed, int threads = 0);

FidelityHistogram histogram_fidelities(std::span<const double> fidelities, int bins);

// KL divergence of an empirical fidelity histogram from the Haar distribution;
// empty bins contribute zero.
ExpressibilityResult expressibility_from_fidelities(std::span<const double> fidelities,
                                                    int bins, int qubits);

ExpressibilityResult expressibility(const ModelSpec& spec, int pair_count, int bins,
                                    std::uint64_t seed, int threads = 0);

}  // namespace qfp
