#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfp/expressibility.hpp"
#include "qfp/fingerprint.hpp"
#include "qfp/fourier_data.hpp"

namespace qfp {

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long long step = 0;
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState init(std::size_t dim, double lr);
};

enum class GradientMethod { finite_diff, param_shift };

double mse_loss(const ModelSpec& spec, std::span<const double> theta,
                const RegressionDataset& dataset);

// d f(x, theta) / d theta. The parameter-shift rule is exact but only applies
// when every parameterized gate is an uncontrolled Pauli rotation; finite
// differences use a symmetric step of 1e-5.
std::vector<double> model_gradient(const ModelSpec& spec, std::span<const double> theta,
                                   std::span<const double> x, GradientMethod method);

// Gradient of mse_loss.
std::vector<double> gradient(const ModelSpec& spec, std::span<const double> theta,
                             const RegressionDataset& dataset, GradientMethod method);

// One bias-corrected Adam update; returns the advanced state and parameters.
std::pair<AdamState, std::vector<double>> adam_step(const AdamState& state,
                                                    std::span<const double> grad,
                                                    std::span<const double> theta);

struct TrainConfig {
  int epochs = 1000;
  double lr = 0.01;
  std::uint64_t model_seed = 0;
  // Default: param_shift where the ansatz allows it, finite_diff otherwise.
  std::optional<GradientMethod> method;
};

struct TrainResult {
  std::vector<double> loss_history;  // loss at the start of each epoch
  std::vector<double> final_theta;
  double final_mse = 0.0;  // loss after the last update
  std::uint64_t model_seed = 0;
  std::uint64_t data_seed = 0;
};

TrainResult train(const ModelSpec& spec, const RegressionDataset& dataset,
                  const TrainConfig& config);

struct ExperimentConfig {
  std::vector<AnsatzKind> ansatzes;
  int qubits = 4;
  int layers = 1;
  FeatureMapSpec feature_map{{PauliAxis::Y}};
  int model_seeds = 10;
  int data_seeds = 10;
  int epochs = 1000;
  double lr = 0.01;
  std::uint64_t master_seed = 0;
  int fingerprint_samples = 0;   // 0: 200 * |theta|
  int expressibility_pairs = 0;  // 0: 5000
  int histogram_bins = 75;
  int threads = 0;
};

struct ExperimentRun {
  AnsatzKind ansatz;
  std::uint64_t model_seed = 0;
  std::uint64_t data_seed = 0;
  double final_mse = 0.0;
};

struct ExperimentRow {
  AnsatzKind ansatz;
  double mean_mse = 0.0;
  // Spread of the per-model-seed mean MSEs (population standard deviation).
  double std_mse = 0.0;
  double fcc_value = 0.0;
  double weighted_fcc_value = 0.0;
  double expressibility_kl = 0.0;
  int fingerprint_samples = 0;
  int expressibility_pairs = 0;
};

struct ExperimentTable {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  std::vector<ExperimentRun> runs;
};

// Seed grid: every (ansatz, model seed, data seed) combination is trained
// independently; fingerprint and expressibility are computed once per ansatz.
ExperimentTable experiment_grid(const ExperimentConfig& config);

}  // namespace qfp
