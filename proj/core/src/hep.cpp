#include "qfp/hep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qfp/rng.hpp"

namespace qfp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kProbFloor = 1e-9;

std::vector<double> histogram_probs(std::span<const double> values, int bins, double lo,
                                    double hi) {
  std::vector<double> probs(static_cast<std::size_t>(bins), 0.0);
  double width = (hi - lo) / bins;
  for (double v : values) {
    int b = static_cast<int>((v - lo) / width);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    probs[static_cast<std::size_t>(b)] += 1.0;
  }
  for (double& p : probs) p /= static_cast<double>(values.size());
  return probs;
}

struct PreparedDataset {
  std::vector<std::vector<double>> inputs;  // discretized (e_cm, e_delta) angles
  std::vector<double> targets;              // scaled to [-1, 1]
  std::vector<double> raw_pt;
};

double batch_loss(const ModelSpec& spec, std::span<const double> theta,
                  const PreparedDataset& data, std::span<const std::size_t> index_set,
                  int bins) {
  std::vector<double> pred(index_set.size());
  std::vector<double> tgt(index_set.size());
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    pred[i] = evaluate(spec, theta, data.inputs[index_set[i]]);
    tgt[i] = data.targets[index_set[i]];
  }
  return hep_loss(pred, tgt, bins);
}

}  // namespace

EventFeatures derive_features(const EventRecord& event) {
  if (event.e1 <= 0.0 || event.e2 <= 0.0) {
    throw std::invalid_argument("event energies must be positive");
  }
  double esum = event.e1 + event.e2;
  double pzsum = event.pz1 + event.pz2;
  double radicand = esum * esum - pzsum * pzsum;
  if (radicand < 0.0) {
    throw std::invalid_argument("malformed event: (E1+E2)^2 < (pz1+pz2)^2");
  }
  return EventFeatures{std::sqrt(radicand), std::abs(event.e1 - event.e2)};
}

QuantileTransformer QuantileTransformer::fit(std::vector<double> values) {
  if (values.size() < 2) throw std::invalid_argument("need at least 2 values to fit");
  std::sort(values.begin(), values.end());
  if (values.front() == values.back()) {
    throw std::invalid_argument("cannot fit a quantile transform to constant values");
  }

  // Midpoint ranks (i + 0.5)/count mapped to [0, 2pi); duplicates collapse to
  // the average position of their occurrences so the map stays a function.
  QuantileTransformer qt;
  std::size_t count = values.size();
  std::size_t i = 0;
  while (i < count) {
    std::size_t j = i;
    while (j < count && values[j] == values[i]) ++j;
    double mean_rank = (static_cast<double>(i + j - 1) / 2.0 + 0.5) / static_cast<double>(count);
    qt.values_.push_back(values[i]);
    qt.positions_.push_back(kTwoPi * mean_rank);
    i = j;
  }
  return qt;
}

double QuantileTransformer::transform(double value) const {
  if (value <= values_.front()) return positions_.front();
  if (value >= values_.back()) return positions_.back();
  std::size_t hi = static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), value) - values_.begin());
  std::size_t lo = hi - 1;
  double t = (value - values_[lo]) / (values_[hi] - values_[lo]);
  return positions_[lo] + t * (positions_[hi] - positions_[lo]);
}

double discretize(double value, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("grid size must be >= 2");
  double step = kTwoPi / grid_size;
  long long k = std::llround(value / step) % grid_size;
  if (k < 0) k += grid_size;
  return step * static_cast<double>(k);
}

TargetScaler TargetScaler::fit(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("cannot fit scaler to empty data");
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) throw std::invalid_argument("target range is degenerate");
  TargetScaler s;
  s.min_ = lo;
  s.max_ = hi;
  return s;
}

double TargetScaler::scale(double value) const {
  return 2.0 * (value - min_) / (max_ - min_) - 1.0;
}

double TargetScaler::inverse(double scaled) const {
  return min_ + (scaled + 1.0) * (max_ - min_) / 2.0;
}

double histogram_kl(std::span<const double> target, std::span<const double> pred, int bins,
                    double lo, double hi) {
  if (bins < 2) throw std::invalid_argument("need at least 2 bins");
  if (target.empty() || pred.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> pt = histogram_probs(target, bins, lo, hi);
  std::vector<double> pp = histogram_probs(pred, bins, lo, hi);
  double kl = 0.0;
  for (int b = 0; b < bins; ++b) {
    double p = pt[static_cast<std::size_t>(b)];
    if (p == 0.0) continue;
    double q = std::max(pp[static_cast<std::size_t>(b)], kProbFloor);
    kl += p * std::log(p / q);
  }
  return kl;
}

double hep_loss(std::span<const double> pred, std::span<const double> target, int bins) {
  if (pred.size() != target.size()) throw std::invalid_argument("length mismatch");
  if (pred.size() < static_cast<std::size_t>(bins)) {
    throw std::invalid_argument("need at least as many samples as bins");
  }
  double mse = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    double d = pred[i] - target[i];
    mse += d * d;
  }
  mse /= static_cast<double>(pred.size());
  return mse + 0.001 * histogram_kl(target, pred, bins);
}

double huber_metric(std::span<const double> pred, std::span<const double> target,
                    double delta) {
  if (pred.size() != target.size()) throw std::invalid_argument("length mismatch");
  if (pred.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    double r = std::abs(pred[i] - target[i]);
    acc += r <= delta ? 0.5 * r * r : delta * (r - 0.5 * delta);
  }
  return acc / static_cast<double>(pred.size());
}

std::vector<EventRecord> generate_synthetic_events(int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("event count must be >= 1");
  std::vector<EventRecord> events(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, SeedRole::event_stream, static_cast<std::uint64_t>(i)));
    double e1 = rng.uniform(50.0, 500.0);
    double e2 = rng.uniform(50.0, 500.0);
    double e_cm = 2.0 * std::sqrt(e1 * e2);
    double pt = 0.25 * e_cm * std::exp(0.3 * rng.gaussian());
    events[static_cast<std::size_t>(i)] =
        EventRecord{e1, 0.0, 0.0, e1, e2, 0.0, 0.0, -e2, pt};
  }
  return events;
}

HepReport train_hep(const ModelSpec& spec, const std::vector<EventRecord>& events,
                    const HepConfig& config) {
  validate_model_spec(spec);
  if (spec.dims() != 2) {
    throw std::invalid_argument("the collision pipeline feeds two features; use a 2D model");
  }
  if (config.train_fraction <= 0.0 || config.val_fraction <= 0.0 ||
      config.train_fraction + config.val_fraction >= 1.0) {
    throw std::invalid_argument("split fractions must be positive and sum below 1");
  }
  std::size_t count = events.size();
  std::size_t train_n = static_cast<std::size_t>(config.train_fraction * count);
  std::size_t val_n = static_cast<std::size_t>(config.val_fraction * count);
  std::size_t test_n = count - train_n - val_n;
  if (train_n < static_cast<std::size_t>(config.loss_bins) ||
      val_n < static_cast<std::size_t>(config.loss_bins) ||
      test_n < static_cast<std::size_t>(config.loss_bins)) {
    throw std::invalid_argument("too few events for the requested splits");
  }
  if (static_cast<std::size_t>(config.batch_size) < static_cast<std::size_t>(config.loss_bins)) {
    throw std::invalid_argument("batch size must be at least the histogram bin count");
  }

  // Shuffle once, then cut train/val/test.
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  Rng split_rng(derive_seed(config.data_seed, SeedRole::split_shuffle, 0));
  for (std::size_t i = count - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(split_rng.next_below(i + 1));
    std::swap(order[i], order[j]);
  }

  std::vector<EventFeatures> features(count);
  for (std::size_t i = 0; i < count; ++i) features[i] = derive_features(events[i]);

  std::vector<double> train_ecm, train_edelta, train_pt;
  train_ecm.reserve(train_n);
  for (std::size_t i = 0; i < train_n; ++i) {
    const auto& f = features[order[i]];
    train_ecm.push_back(f.e_cm);
    train_edelta.push_back(f.e_delta);
    train_pt.push_back(events[order[i]].leading_pt);
  }

  QuantileTransformer qt_ecm = QuantileTransformer::fit(train_ecm);
  QuantileTransformer qt_edelta = QuantileTransformer::fit(train_edelta);
  TargetScaler scaler = TargetScaler::fit(train_pt);

  int grid = config.discretization_grid > 0 ? config.discretization_grid
                                            : 2 * spec.max_frequency() + 1;

  PreparedDataset data;
  data.inputs.resize(count);
  data.targets.resize(count);
  data.raw_pt.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t src = order[i];
    const auto& f = features[src];
    data.inputs[i] = {discretize(qt_ecm.transform(f.e_cm), grid),
                      discretize(qt_edelta.transform(f.e_delta), grid)};
    data.targets[i] = scaler.scale(events[src].leading_pt);
    data.raw_pt[i] = events[src].leading_pt;
  }

  std::vector<std::size_t> train_idx(train_n), val_idx(val_n), test_idx(test_n);
  for (std::size_t i = 0; i < train_n; ++i) train_idx[i] = i;
  for (std::size_t i = 0; i < val_n; ++i) val_idx[i] = train_n + i;
  for (std::size_t i = 0; i < test_n; ++i) test_idx[i] = train_n + val_n + i;

  Rng init_rng(derive_seed(config.model_seed, SeedRole::train_init, 0));
  std::vector<double> theta(static_cast<std::size_t>(param_count(spec)));
  for (double& t : theta) t = init_rng.uniform(0.0, kTwoPi);

  HepReport report;
  report.train_size = train_n;
  report.val_size = val_n;
  report.test_size = test_n;
  report.target_min_pt = scaler.min();
  report.target_max_pt = scaler.max();
  report.initial_val_loss = batch_loss(spec, theta, data, val_idx, config.loss_bins);

  AdamState adam = AdamState::init(theta.size(), config.lr);
  std::vector<double> shifted(theta);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(config.model_seed, SeedRole::batch_shuffle,
                                static_cast<std::uint64_t>(epoch)));
    std::vector<std::size_t> perm = train_idx;
    for (std::size_t i = perm.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(shuffle_rng.next_below(i + 1));
      std::swap(perm[i], perm[j]);
    }

    double epoch_loss = 0.0;
    std::size_t batch_count = 0;
    std::size_t pos = 0;
    while (pos < perm.size()) {
      std::size_t len = std::min<std::size_t>(config.batch_size, perm.size() - pos);
      // A trailing batch shorter than the histogram folds into this one.
      std::size_t remaining_after = perm.size() - pos - len;
      if (remaining_after > 0 && remaining_after < static_cast<std::size_t>(config.loss_bins)) {
        len += remaining_after;
      }
      std::span<const std::size_t> batch(perm.data() + pos, len);
      pos += len;

      // Finite-difference gradient of the composite loss on this batch.
      std::vector<double> grad(theta.size());
      for (std::size_t k = 0; k < theta.size(); ++k) {
        shifted = theta;
        shifted[k] = theta[k] + 1e-5;
        double plus = batch_loss(spec, shifted, data, batch, config.loss_bins);
        shifted[k] = theta[k] - 1e-5;
        double minus = batch_loss(spec, shifted, data, batch, config.loss_bins);
        grad[k] = (plus - minus) / 2e-5;
      }
      auto [next, updated] = adam_step(adam, grad, theta);
      adam = std::move(next);
      theta = std::move(updated);
      epoch_loss += batch_loss(spec, theta, data, batch, config.loss_bins);
      ++batch_count;
    }
    report.train_loss_history.push_back(epoch_loss / static_cast<double>(batch_count));
  }

  report.final_val_loss = batch_loss(spec, theta, data, val_idx, config.loss_bins);

  auto split_metrics = [&](std::span<const std::size_t> idx) {
    std::vector<double> pred(idx.size());
    std::vector<double> tgt(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      pred[i] = evaluate(spec, theta, data.inputs[idx[i]]);
      tgt[i] = data.targets[idx[i]];
    }
    HepSplitMetrics m;
    double mse = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      double d = pred[i] - tgt[i];
      mse += d * d;
    }
    m.mse = mse / static_cast<double>(pred.size());
    m.kl = histogram_kl(tgt, pred, config.loss_bins);
    m.huber = huber_metric(pred, tgt);
    return std::pair(m, pred);
  };

  auto [val_metrics, val_pred] = split_metrics(val_idx);
  auto [test_metrics, test_pred] = split_metrics(test_idx);
  report.validation = val_metrics;
  report.test = test_metrics;

  report.abs_dev_pt.resize(test_idx.size());
  double mean_dev = 0.0;
  for (std::size_t i = 0; i < test_idx.size(); ++i) {
    double dev = std::abs(scaler.inverse(test_pred[i]) - data.raw_pt[test_idx[i]]);
    report.abs_dev_pt[i] = dev;
    mean_dev += dev;
  }
  mean_dev /= static_cast<double>(test_idx.size());
  double var_dev = 0.0;
  for (double dev : report.abs_dev_pt) var_dev += (dev - mean_dev) * (dev - mean_dev);
  var_dev /= static_cast<double>(test_idx.size());
  report.abs_dev_mean_pt = mean_dev;
  report.abs_dev_std_pt = std::sqrt(var_dev);
  report.final_theta = std::move(theta);
  return report;
}

}  // namespace qfp
