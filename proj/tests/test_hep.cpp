#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfp/hep.hpp"
#include "qfp/rng.hpp"

using namespace qfp;
namespace pi = std::numbers;

TEST_CASE("feature derivation on hand-checked events") {
  EventRecord symmetric{5, 0, 0, 5, 5, 0, 0, -5, 10};
  EventFeatures f = derive_features(symmetric);
  CHECK(f.e_cm == doctest::Approx(10.0));
  CHECK(f.e_delta == 0.0);

  EventRecord skew{3, 0, 0, 2, 4, 0, 0, -1, 8};
  EventFeatures g = derive_features(skew);
  CHECK(g.e_cm == doctest::Approx(std::sqrt(48.0)));
  CHECK(g.e_delta == doctest::Approx(1.0));

  // particle exchange leaves both features unchanged
  EventRecord swapped{4, 0, 0, -1, 3, 0, 0, 2, 8};
  EventFeatures h = derive_features(swapped);
  CHECK(h.e_cm == doctest::Approx(g.e_cm));
  CHECK(h.e_delta == doctest::Approx(g.e_delta));

  EventRecord bad{1, 0, 0, 4, 1, 0, 0, 4, 1};
  CHECK_THROWS_AS(derive_features(bad), std::invalid_argument);
}

TEST_CASE("quantile transform maps ranks onto [0, 2pi)") {
  QuantileTransformer qt = QuantileTransformer::fit({1.0, 2.0, 3.0, 4.0});
  std::vector<double> expected = {pi::pi / 4.0, 3.0 * pi::pi / 4.0, 5.0 * pi::pi / 4.0,
                                  7.0 * pi::pi / 4.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(qt.transform(i + 1.0) == doctest::Approx(expected[static_cast<std::size_t>(i)]));
  }
  // monotone, clamped, interpolating
  CHECK(qt.transform(0.0) == doctest::Approx(expected[0]));
  CHECK(qt.transform(9.0) == doctest::Approx(expected[3]));
  CHECK(qt.transform(2.5) == doctest::Approx((expected[1] + expected[2]) / 2.0));
  CHECK(qt.transform(2.5) <= qt.transform(2.6));

  CHECK_THROWS_AS(QuantileTransformer::fit({2.0, 2.0, 2.0}), std::invalid_argument);
}

TEST_CASE("transformed training data passes a ks uniformity check") {
  Rng rng(42);
  std::vector<double> values(10000);
  for (double& v : values) v = std::exp(rng.gaussian());  // heavily skewed
  QuantileTransformer qt = QuantileTransformer::fit(values);

  std::vector<double> transformed(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) transformed[i] = qt.transform(values[i]);
  std::sort(transformed.begin(), transformed.end());

  double ks = 0.0;
  std::size_t n = transformed.size();
  for (std::size_t i = 0; i < n; ++i) {
    double u = transformed[i] / (2.0 * pi::pi);
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    ks = std::max(ks, std::max(std::abs(u - lo), std::abs(u - hi)));
  }
  CHECK(ks < 0.05);
}

TEST_CASE("discretization snaps to the nearest grid angle") {
  CHECK(discretize(pi::pi / 2.0, 4) == doctest::Approx(pi::pi / 2.0));
  CHECK(discretize(1.6, 4) == doctest::Approx(pi::pi / 2.0));
  CHECK(discretize(6.2, 4) == 0.0);  // wraps to the 0 bin

  Rng rng(3);
  std::vector<double> seen;
  for (int i = 0; i < 500; ++i) {
    double v = discretize(rng.uniform(0.0, 2.0 * pi::pi), 7);
    if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
  }
  CHECK(seen.size() <= 7);
}

TEST_CASE("target scaler maps the range onto [-1, 1] and inverts") {
  std::vector<double> pts = {10.0, 30.0, 20.0};
  TargetScaler s = TargetScaler::fit(pts);
  CHECK(s.scale(10.0) == -1.0);
  CHECK(s.scale(30.0) == 1.0);
  CHECK(s.scale(20.0) == doctest::Approx(0.0));
  for (double v : {11.0, 17.5, 29.9}) {
    CHECK(s.inverse(s.scale(v)) == doctest::Approx(v).epsilon(1e-12));
  }
  std::vector<double> flat = {5.0, 5.0};
  CHECK_THROWS_AS(TargetScaler::fit(flat), std::invalid_argument);
}

TEST_CASE("composite loss: zero at equality, dominated below by the mse") {
  Rng rng(6);
  std::vector<double> target(256);
  for (double& v : target) v = rng.uniform(-1.0, 1.0);

  CHECK(hep_loss(target, target, 32) == doctest::Approx(0.0));

  std::vector<double> shifted(target);
  for (double& v : shifted) v += 0.25;
  double loss = hep_loss(shifted, target, 32);
  double kl = histogram_kl(target, shifted, 32);
  CHECK(kl > 0.0);
  CHECK(loss == doctest::Approx(0.0625 + 0.001 * kl));
  CHECK(loss >= 0.0625);

  // histograms identical bin-by-bin => loss reduces to the mse
  std::vector<double> reversed(target.rbegin(), target.rend());
  double loss_rev = hep_loss(reversed, target, 32);
  double mse_rev = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    double d = reversed[i] - target[i];
    mse_rev += d * d;
  }
  mse_rev /= static_cast<double>(target.size());
  CHECK(loss_rev == doctest::Approx(mse_rev).epsilon(1e-12));

  std::vector<double> short_pred(8, 0.0);
  CHECK_THROWS_AS(hep_loss(short_pred, short_pred, 32), std::invalid_argument);
}

TEST_CASE("huber metric switches from quadratic to linear at delta") {
  std::vector<double> target(10, 0.0);
  std::vector<double> close(10, 0.5);
  std::vector<double> far(10, 3.0);
  CHECK(huber_metric(target, target) == 0.0);
  CHECK(huber_metric(close, target) == doctest::Approx(0.125));
  CHECK(huber_metric(far, target) == doctest::Approx(2.5));
}

TEST_CASE("synthetic events satisfy the record invariants") {
  auto events = generate_synthetic_events(10000, 17);
  CHECK(events == generate_synthetic_events(10000, 17));

  double mean_ecm = 0.0, mean_pt = 0.0;
  std::vector<double> ecm(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    EventFeatures f = derive_features(events[i]);  // must not throw
    ecm[i] = f.e_cm;
    mean_ecm += f.e_cm;
    mean_pt += events[i].leading_pt;
  }
  mean_ecm /= static_cast<double>(events.size());
  mean_pt /= static_cast<double>(events.size());

  double cov = 0.0, var_e = 0.0, var_p = 0.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    double de = ecm[i] - mean_ecm;
    double dp = events[i].leading_pt - mean_pt;
    cov += de * dp;
    var_e += de * de;
    var_p += dp * dp;
  }
  double corr = cov / std::sqrt(var_e * var_p);
  CHECK(corr > 0.3);
}

TEST_CASE("hep training run improves the validation loss and is deterministic") {
  ModelSpec spec{2, 1, AnsatzKind::C15, {{PauliAxis::X, PauliAxis::Y}}};
  auto events = generate_synthetic_events(1200, 4);
  HepConfig cfg;
  cfg.epochs = 4;
  cfg.model_seed = 1;
  cfg.data_seed = 2;

  HepReport report = train_hep(spec, events, cfg);
  CHECK(report.train_size == 960);
  CHECK(report.val_size == 120);
  CHECK(report.test_size == 120);
  CHECK(report.final_val_loss < report.initial_val_loss);
  CHECK(report.train_loss_history.size() == 4);

  HepReport again = train_hep(spec, events, cfg);
  CHECK(again.final_val_loss == report.final_val_loss);
  CHECK(again.final_theta == report.final_theta);

  // bounded model output + affine inverse keeps predictions in the training
  // pT envelope (expanded slightly)
  double margin = 0.1 * (report.target_max_pt - report.target_min_pt);
  for (double dev : report.abs_dev_pt) {
    REQUIRE(std::isfinite(dev));
  }
  CHECK(report.target_min_pt - margin < report.target_max_pt);
}
