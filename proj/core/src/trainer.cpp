#include "qfp/trainer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qfp/parallel.hpp"
#include "qfp/rng.hpp"

namespace qfp {

namespace {

constexpr double kFiniteDiffStep = 1e-5;
constexpr double kHalfPi = std::numbers::pi / 2.0;

GradientMethod resolve_method(const ModelSpec& spec, std::optional<GradientMethod> method) {
  if (method) return *method;
  return uses_only_uncontrolled_rotations(spec.ansatz) ? GradientMethod::param_shift
                                                       : GradientMethod::finite_diff;
}

void check_param_shift(const ModelSpec& spec) {
  if (!uses_only_uncontrolled_rotations(spec.ansatz)) {
    throw std::invalid_argument("parameter-shift rule needs uncontrolled rotations; " +
                                to_string(spec.ansatz) + " has controlled ones");
  }
}

std::vector<double> residuals(const ModelSpec& spec, std::span<const double> theta,
                              const RegressionDataset& dataset) {
  std::vector<double> res(dataset.size());
  for (std::size_t p = 0; p < res.size(); ++p) {
    res[p] = evaluate(spec, theta, dataset.grid.point(p)) - dataset.targets[p];
  }
  return res;
}

}  // namespace

AdamState AdamState::init(std::size_t dim, double lr) {
  AdamState s;
  s.m.assign(dim, 0.0);
  s.v.assign(dim, 0.0);
  s.lr = lr;
  return s;
}

double mse_loss(const ModelSpec& spec, std::span<const double> theta,
                const RegressionDataset& dataset) {
  if (dataset.size() == 0) throw std::invalid_argument("dataset is empty");
  double acc = 0.0;
  for (std::size_t p = 0; p < dataset.size(); ++p) {
    double diff = evaluate(spec, theta, dataset.grid.point(p)) - dataset.targets[p];
    acc += diff * diff;
  }
  return acc / static_cast<double>(dataset.size());
}

std::vector<double> model_gradient(const ModelSpec& spec, std::span<const double> theta,
                                   std::span<const double> x, GradientMethod method) {
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size(), 0.0);
  if (method == GradientMethod::param_shift) {
    check_param_shift(spec);
    for (std::size_t k = 0; k < theta.size(); ++k) {
      shifted[k] = theta[k] + kHalfPi;
      double plus = evaluate(spec, shifted, x);
      shifted[k] = theta[k] - kHalfPi;
      double minus = evaluate(spec, shifted, x);
      shifted[k] = theta[k];
      grad[k] = 0.5 * (plus - minus);
    }
  } else {
    for (std::size_t k = 0; k < theta.size(); ++k) {
      shifted[k] = theta[k] + kFiniteDiffStep;
      double plus = evaluate(spec, shifted, x);
      shifted[k] = theta[k] - kFiniteDiffStep;
      double minus = evaluate(spec, shifted, x);
      shifted[k] = theta[k];
      grad[k] = (plus - minus) / (2.0 * kFiniteDiffStep);
    }
  }
  return grad;
}

std::vector<double> gradient(const ModelSpec& spec, std::span<const double> theta,
                             const RegressionDataset& dataset, GradientMethod method) {
  if (dataset.size() == 0) throw std::invalid_argument("dataset is empty");
  if (method == GradientMethod::param_shift) check_param_shift(spec);

  std::vector<double> grad(theta.size(), 0.0);
  std::vector<double> res = residuals(spec, theta, dataset);
  for (std::size_t p = 0; p < dataset.size(); ++p) {
    std::vector<double> x = dataset.grid.point(p);
    std::vector<double> df = model_gradient(spec, theta, x, method);
    for (std::size_t k = 0; k < grad.size(); ++k) {
      grad[k] += 2.0 * res[p] * df[k];
    }
  }
  for (double& g : grad) g /= static_cast<double>(dataset.size());
  return grad;
}

std::pair<AdamState, std::vector<double>> adam_step(const AdamState& state,
                                                    std::span<const double> grad,
                                                    std::span<const double> theta) {
  if (grad.size() != state.m.size() || theta.size() != state.m.size()) {
    throw std::invalid_argument("Adam state dimension mismatch");
  }
  AdamState next = state;
  next.step = state.step + 1;
  std::vector<double> out(theta.begin(), theta.end());
  double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(next.step));
  double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(next.step));
  for (std::size_t k = 0; k < out.size(); ++k) {
    next.m[k] = state.beta1 * state.m[k] + (1.0 - state.beta1) * grad[k];
    next.v[k] = state.beta2 * state.v[k] + (1.0 - state.beta2) * grad[k] * grad[k];
    double mhat = next.m[k] / bc1;
    double vhat = next.v[k] / bc2;
    out[k] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
  }
  return {std::move(next), std::move(out)};
}

TrainResult train(const ModelSpec& spec, const RegressionDataset& dataset,
                  const TrainConfig& config) {
  validate_model_spec(spec);
  if (config.epochs < 1) throw std::invalid_argument("need at least one epoch");
  GradientMethod method = resolve_method(spec, config.method);

  Rng rng(derive_seed(config.model_seed, SeedRole::train_init, 0));
  std::vector<double> theta(static_cast<std::size_t>(param_count(spec)));
  for (double& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);

  AdamState adam = AdamState::init(theta.size(), config.lr);
  TrainResult result;
  result.model_seed = config.model_seed;
  result.loss_history.reserve(static_cast<std::size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    result.loss_history.push_back(mse_loss(spec, theta, dataset));
    std::vector<double> grad = gradient(spec, theta, dataset, method);
    auto [next, updated] = adam_step(adam, grad, theta);
    adam = std::move(next);
    theta = std::move(updated);
  }
  result.final_mse = mse_loss(spec, theta, dataset);
  result.final_theta = std::move(theta);
  return result;
}

ExperimentTable experiment_grid(const ExperimentConfig& config) {
  if (config.ansatzes.empty()) throw std::invalid_argument("ansatz list is empty");
  if (config.model_seeds < 1 || config.data_seeds < 1) {
    throw std::invalid_argument("need at least one seed in each dimension");
  }

  ExperimentTable table;
  table.config = config;

  for (std::size_t a = 0; a < config.ansatzes.size(); ++a) {
    ModelSpec spec{config.qubits, config.layers, config.ansatzes[a], config.feature_map};
    validate_model_spec(spec);

    int fp_samples = config.fingerprint_samples > 0 ? config.fingerprint_samples
                                                    : 200 * param_count(spec);
    int ex_pairs = config.expressibility_pairs > 0 ? config.expressibility_pairs : 5000;

    std::uint64_t metric_seed = derive_seed(config.master_seed, SeedRole::theta_sample,
                                            0xa500 + a) ;
    CoefficientSamples samples =
        sample_coefficients(spec, fp_samples, metric_seed, config.threads);
    Fingerprint fp = pearson_matrix(samples);
    ExpressibilityResult expr =
        expressibility(spec, ex_pairs, config.histogram_bins, metric_seed, config.threads);

    // Independent training runs over the seed product, parallel across runs.
    std::size_t run_count =
        static_cast<std::size_t>(config.model_seeds) * static_cast<std::size_t>(config.data_seeds);
    std::vector<ExperimentRun> runs(run_count);
    parallel_for(run_count, config.threads, [&](std::size_t r) {
      int mi = static_cast<int>(r) / config.data_seeds;
      int di = static_cast<int>(r) % config.data_seeds;
      std::uint64_t model_seed =
          derive_seed(config.master_seed, SeedRole::train_init, (a << 20) + static_cast<std::size_t>(mi));
      std::uint64_t data_seed =
          derive_seed(config.master_seed, SeedRole::target_coefficients, static_cast<std::size_t>(di));
      FourierSeriesTarget target =
          random_target(spec.max_frequency(), spec.dims(), data_seed);
      RegressionDataset dataset = make_dataset(target);
      TrainConfig tc;
      tc.epochs = config.epochs;
      tc.lr = config.lr;
      tc.model_seed = model_seed;
      TrainResult res = train(spec, dataset, tc);
      runs[r] = ExperimentRun{spec.ansatz, model_seed, data_seed, res.final_mse};
    });

    double mean = 0.0;
    for (const auto& run : runs) mean += run.final_mse;
    mean /= static_cast<double>(run_count);

    // Per-model-seed means, then their population spread.
    std::vector<double> seed_means(static_cast<std::size_t>(config.model_seeds), 0.0);
    for (std::size_t r = 0; r < run_count; ++r) {
      seed_means[r / static_cast<std::size_t>(config.data_seeds)] += runs[r].final_mse;
    }
    double var = 0.0;
    for (double& sm : seed_means) {
      sm /= static_cast<double>(config.data_seeds);
      var += (sm - mean) * (sm - mean);
    }
    var /= static_cast<double>(config.model_seeds);

    ExperimentRow row;
    row.ansatz = spec.ansatz;
    row.mean_mse = mean;
    row.std_mse = std::sqrt(var);
    row.fcc_value = fcc(fp);
    row.weighted_fcc_value = weighted_fcc(fp, FccWeighting::inverse_linear);
    row.expressibility_kl = expr.kl;
    row.fingerprint_samples = fp_samples;
    row.expressibility_pairs = ex_pairs;
    table.rows.push_back(row);
    table.runs.insert(table.runs.end(), runs.begin(), runs.end());
  }
  return table;
}

}  // namespace qfp
