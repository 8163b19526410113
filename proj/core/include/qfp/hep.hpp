#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qfp/trainer.hpp"

namespace qfp {

// Two-particle collision event: incoming four-vectors plus the regression
// target, the transverse momentum of the leading jet.
struct EventRecord {
  double e1 = 0.0, px1 = 0.0, py1 = 0.0, pz1 = 0.0;
  double e2 = 0.0, px2 = 0.0, py2 = 0.0, pz2 = 0.0;
  double leading_pt = 0.0;

  bool operator==(const EventRecord&) const = default;
};

struct EventFeatures {
  double e_cm = 0.0;     // sqrt((E1+E2)^2 - (pz1+pz2)^2)
  double e_delta = 0.0;  // |E1 - E2|
};

EventFeatures derive_features(const EventRecord& event);

// Empirical-CDF map of a fitted feature onto [0, 2pi). Fit on the training
// split only; transform of unseen values interpolates between the fitted
// quantile positions and clamps outside the fitted range.
class QuantileTransformer {
 public:
  static QuantileTransformer fit(std::vector<double> values);

  double transform(double value) const;

 private:
  std::vector<double> values_;     // distinct, ascending
  std::vector<double> positions_;  // matching outputs in [0, 2pi)
};

// Snap a value in [0, 2pi) to the nearest grid point 2*pi*k/K (cyclically).
double discretize(double value, int grid_size);

// Affine map of the training-split target range onto [-1, 1], invertible.
class TargetScaler {
 public:
  static TargetScaler fit(std::span<const double> values);

  double scale(double value) const;
  double inverse(double scaled) const;
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  double min_ = 0.0;
  double max_ = 1.0;
};

// KL(targets || predictions) between the empirical histograms of the two
// samples over shared uniform bins on [lo, hi]; prediction bin probabilities
// are floored at 1e-9 before the log.
double histogram_kl(std::span<const double> target, std::span<const double> pred, int bins,
                    double lo = -1.0, double hi = 1.0);

// MSE + 0.001 * histogram_kl(targets, predictions) on [-1, 1].
double hep_loss(std::span<const double> pred, std::span<const double> target, int bins = 32);

// Mean Huber value: quadratic below delta, linear above.
double huber_metric(std::span<const double> pred, std::span<const double> target,
                    double delta = 1.0);

// Test fixture: back-to-back massless beams along z with energies uniform in
// [50, 500]; the target follows leading_pt = 0.25 * E_CM * exp(0.3 * g) with
// g standard normal, a stochastic law monotone in E_CM on average.
std::vector<EventRecord> generate_synthetic_events(int count, std::uint64_t seed);

struct HepConfig {
  double train_fraction = 0.8;
  double val_fraction = 0.1;  // remainder is the test split
  int discretization_grid = 0;  // 0: the model's Nyquist grid 2nL+1
  int epochs = 20;
  double lr = 0.005;
  int batch_size = 256;
  int loss_bins = 32;
  std::uint64_t data_seed = 0;
  std::uint64_t model_seed = 0;
};

struct HepSplitMetrics {
  double mse = 0.0;
  double kl = 0.0;
  double huber = 0.0;
};

struct HepReport {
  double initial_val_loss = 0.0;
  double final_val_loss = 0.0;
  std::vector<double> train_loss_history;  // per-epoch mean batch loss
  HepSplitMetrics validation;
  HepSplitMetrics test;
  // |prediction - truth| on the test split, back in original pT units.
  double abs_dev_mean_pt = 0.0;
  double abs_dev_std_pt = 0.0;
  std::vector<double> abs_dev_pt;
  double target_min_pt = 0.0;
  double target_max_pt = 0.0;
  std::vector<double> final_theta;
  std::size_t train_size = 0, val_size = 0, test_size = 0;
};

// Full recipe: feature derivation, quantile transform fitted on the training
// split, discretization, target scaling, mini-batch Adam training with
// finite-difference gradients of hep_loss.
HepReport train_hep(const ModelSpec& spec, const std::vector<EventRecord>& events,
                    const HepConfig& config);

}  // namespace qfp
