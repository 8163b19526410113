// Command-line front end: fingerprints, FCC, expressibility, variance
// profiles, surrogate checks, Fourier-series and collision-event training
// runs, seed-grid experiments, and a metric runtime benchmark.
//
// Every command resolves its configuration (file < flags < defaults), echoes
// it as <out>_config.json, computes, then writes all outputs at the end.
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qfp/expressibility.hpp"
#include "qfp/fingerprint.hpp"
#include "qfp/fourier_data.hpp"
#include "qfp/heatmap.hpp"
#include "qfp/hep.hpp"
#include "qfp/serialization.hpp"
#include "qfp/trainer.hpp"

using json = nlohmann::json;
using namespace qfp;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string ansatz = "C15";
  int qubits = 4;
  int layers = 1;
  int dims = 1;
  std::string axes;  // empty: Y for 1D, X,Y for 2D
  long long samples = 0;  // 0: preset default
  std::uint64_t seed = 1;
  std::string preset = "desk";
  std::string out;
  std::string format = "csv";
  int threads = 0;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

FeatureMapSpec resolve_axes(const CommonOptions& opt) {
  FeatureMapSpec fm;
  if (!opt.axes.empty()) {
    for (const std::string& a : split_list(opt.axes)) fm.axes.push_back(axis_from_string(a));
    if (opt.dims != 0 && fm.dims() != opt.dims) {
      throw ConfigError("--axes lists " + std::to_string(fm.dims()) +
                        " entries but --dims is " + std::to_string(opt.dims));
    }
    return fm;
  }
  if (opt.dims == 1) {
    fm.axes = {PauliAxis::Y};
  } else if (opt.dims == 2) {
    fm.axes = {PauliAxis::X, PauliAxis::Y};
  } else {
    throw ConfigError("--dims must be 1 or 2");
  }
  return fm;
}

ModelSpec resolve_spec(const CommonOptions& opt) {
  ModelSpec spec;
  spec.qubits = opt.qubits;
  spec.layers = opt.layers;
  spec.ansatz = ansatz_from_string(opt.ansatz);
  spec.feature_map = resolve_axes(opt);
  validate_model_spec(spec);
  return spec;
}

long long preset_fingerprint_samples(const CommonOptions& opt, const ModelSpec& spec) {
  if (opt.samples > 0) return opt.samples;
  long long ptheta = param_count(spec);
  if (opt.preset == "paper") {
    return 500LL * ptheta * (1LL << spec.qubits) * spec.dims();
  }
  if (opt.preset == "desk") return 200LL * ptheta;
  throw ConfigError("unknown preset: " + opt.preset);
}

long long preset_expressibility_pairs(const CommonOptions& opt, const ModelSpec& spec) {
  if (opt.samples > 0) return opt.samples;
  if (opt.preset == "paper") {
    return 500LL * param_count(spec) * (1LL << spec.qubits) / 2;
  }
  if (opt.preset == "desk") return 5000;
  throw ConfigError("unknown preset: " + opt.preset);
}

json common_echo(const std::string& command, const CommonOptions& opt,
                 const FeatureMapSpec& fm) {
  std::string axes_text;
  for (int d = 0; d < fm.dims(); ++d) {
    if (d) axes_text += ',';
    axes_text += to_string(fm.axes[static_cast<std::size_t>(d)]);
  }
  return json{{"command", command}, {"ansatz", opt.ansatz},   {"qubits", opt.qubits},
              {"layers", opt.layers}, {"dims", fm.dims()},      {"axes", axes_text},
              {"samples", opt.samples}, {"seed", opt.seed},     {"preset", opt.preset},
              {"out", opt.out},       {"format", opt.format},  {"threads", opt.threads}};
}

void write_config_echo(const std::string& out_prefix, const json& echo) {
  write_text_file(out_prefix + "_config.json", echo.dump(2) + "\n");
}

void apply_json_config(const json& cfg, CommonOptions& opt) {
  if (cfg.contains("ansatz")) opt.ansatz = cfg.at("ansatz").get<std::string>();
  if (cfg.contains("qubits")) opt.qubits = cfg.at("qubits").get<int>();
  if (cfg.contains("layers")) opt.layers = cfg.at("layers").get<int>();
  if (cfg.contains("dims")) opt.dims = cfg.at("dims").get<int>();
  if (cfg.contains("axes")) opt.axes = cfg.at("axes").get<std::string>();
  if (cfg.contains("samples")) opt.samples = cfg.at("samples").get<long long>();
  if (cfg.contains("seed")) opt.seed = cfg.at("seed").get<std::uint64_t>();
  if (cfg.contains("preset")) opt.preset = cfg.at("preset").get<std::string>();
  if (cfg.contains("out")) opt.out = cfg.at("out").get<std::string>();
  if (cfg.contains("format")) opt.format = cfg.at("format").get<std::string>();
  if (cfg.contains("threads")) opt.threads = cfg.at("threads").get<int>();
}

std::string g_config_path_sink;  // consumed during the pre-scan; bound so CLI11 accepts it

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", g_config_path_sink,
                  "JSON config file; flags override its keys");
  cmd->add_option("--ansatz", opt.ansatz, "Ansatz kind (YZY, YZY_ENTANGLING, HEA, C15..C19)");
  cmd->add_option("--qubits", opt.qubits, "Qubit count");
  cmd->add_option("--layers", opt.layers, "Encoding layers L");
  cmd->add_option("--dims", opt.dims, "Input dimension (1 or 2)");
  cmd->add_option("--axes", opt.axes, "Comma list of Pauli encoding axes, e.g. Y or X,Y");
  cmd->add_option("--samples", opt.samples, "Sample count (0 = preset default)");
  cmd->add_option("--seed", opt.seed, "Master seed");
  cmd->add_option("--preset", opt.preset, "desk or paper sample budgets");
  cmd->add_option("--out", opt.out, "Output path prefix");
  cmd->add_option("--format", opt.format, "Table format: csv or json");
  cmd->add_option("--threads", opt.threads, "Worker threads (0 = hardware)");
}

std::string out_prefix(const CommonOptions& opt, const std::string& command) {
  return opt.out.empty() ? "qfp_" + command : opt.out;
}

struct FingerprintArtifacts {
  Fingerprint fp;
  double fcc_value = 0.0;
  double weighted_value = 0.0;
  double stderr_value = 0.0;
  long long samples = 0;
};

FingerprintArtifacts compute_fingerprint(const CoefficientSamples& samples,
                                         CorrelationMode mode) {
  FingerprintArtifacts art;
  art.fp = pearson_matrix(samples, mode);
  art.fcc_value = fcc(art.fp);
  art.weighted_value = weighted_fcc(art.fp, FccWeighting::inverse_linear);
  art.stderr_value = fcc_stderr(art.fp, samples.sample_count);
  art.samples = samples.sample_count;
  return art;
}

void write_fingerprint_outputs(const std::string& prefix, const FingerprintArtifacts& art,
                               const std::string& title) {
  write_text_file(prefix + "_fingerprint.csv", fingerprint_to_csv(art.fp));
  json meta = fingerprint_metadata(art.fp, art.fcc_value, art.weighted_value,
                                   art.stderr_value);
  write_text_file(prefix + "_fingerprint.json", meta.dump(2) + "\n");

  std::size_t n = art.fp.order();
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = art.fp.index.label(i);
    for (std::size_t j = 0; j < n; ++j) matrix[i][j] = art.fp.at(i, j);
  }
  write_text_file(prefix + "_heatmap.svg", render_heatmap(matrix, labels, title));
}

int cmd_fingerprint(const CommonOptions& opt, bool surrogate, bool split_mode) {
  ModelSpec spec = resolve_spec(opt);
  long long samples = preset_fingerprint_samples(opt, spec);
  std::string prefix = out_prefix(opt, surrogate ? "surrogate" : "fingerprint");

  json echo = common_echo(surrogate ? "surrogate" : "fingerprint", opt, spec.feature_map);
  echo["samples"] = samples;
  echo["surrogate"] = surrogate;
  echo["split"] = split_mode;

  CoefficientSamples cs =
      surrogate ? surrogate_samples(spec.qubits, spec.layers, static_cast<int>(samples),
                                    opt.seed)
                : sample_coefficients(spec, static_cast<int>(samples), opt.seed, opt.threads);
  CorrelationMode mode =
      split_mode ? CorrelationMode::split_real_imag : CorrelationMode::complex_conjugated;
  FingerprintArtifacts art = compute_fingerprint(cs, mode);

  std::string title = (surrogate ? "surrogate n=" : to_string(spec.ansatz) + " n=") +
                      std::to_string(spec.qubits);
  write_fingerprint_outputs(prefix, art, title);
  write_config_echo(prefix, echo);
  std::printf("fcc=%s weighted_fcc=%s stderr=%s samples=%lld\n",
              format_double(art.fcc_value).c_str(), format_double(art.weighted_value).c_str(),
              format_double(art.stderr_value).c_str(), art.samples);
  std::printf("wrote %s_fingerprint.{csv,json} %s_heatmap.svg %s_config.json\n",
              prefix.c_str(), prefix.c_str(), prefix.c_str());
  return 0;
}

int cmd_fcc(const CommonOptions& opt, bool split_mode) {
  ModelSpec spec = resolve_spec(opt);
  long long samples = preset_fingerprint_samples(opt, spec);
  std::string prefix = out_prefix(opt, "fcc");

  json echo = common_echo("fcc", opt, spec.feature_map);
  echo["samples"] = samples;
  echo["split"] = split_mode;

  CoefficientSamples cs =
      sample_coefficients(spec, static_cast<int>(samples), opt.seed, opt.threads);
  CorrelationMode mode =
      split_mode ? CorrelationMode::split_real_imag : CorrelationMode::complex_conjugated;
  FingerprintArtifacts art = compute_fingerprint(cs, mode);

  json result{{"ansatz", to_string(spec.ansatz)},
              {"fcc", art.fcc_value},
              {"weighted_fcc", art.weighted_value},
              {"fcc_stderr", art.stderr_value},
              {"samples", art.samples},
              {"seed", opt.seed}};
  write_text_file(prefix + ".json", result.dump(2) + "\n");
  if (opt.format == "csv") {
    std::string csv = "ansatz,fcc,weighted_fcc,fcc_stderr,samples\n";
    csv += to_string(spec.ansatz) + ',' + format_double(art.fcc_value) + ',' +
           format_double(art.weighted_value) + ',' + format_double(art.stderr_value) + ',' +
           std::to_string(art.samples) + '\n';
    write_text_file(prefix + ".csv", csv);
  }
  write_config_echo(prefix, echo);
  std::printf("fcc=%s weighted_fcc=%s\n", format_double(art.fcc_value).c_str(),
              format_double(art.weighted_value).c_str());
  return 0;
}

int cmd_expressibility(const CommonOptions& opt, int bins) {
  ModelSpec spec = resolve_spec(opt);
  long long pairs = preset_expressibility_pairs(opt, spec);
  std::string prefix = out_prefix(opt, "expressibility");

  json echo = common_echo("expressibility", opt, spec.feature_map);
  echo["samples"] = pairs;
  echo["bins"] = bins;

  std::vector<double> fids =
      sample_fidelities(spec, static_cast<int>(pairs), opt.seed, opt.threads);
  ExpressibilityResult result = expressibility_from_fidelities(fids, bins, spec.qubits);
  result.seed = opt.seed;
  FidelityHistogram hist = histogram_fidelities(fids, bins);

  write_text_file(prefix + ".json", expressibility_to_json(result).dump(2) + "\n");
  write_text_file(prefix + "_histogram.csv", histogram_to_csv(hist));
  write_config_echo(prefix, echo);
  std::printf("kl=%s complement=%s pairs=%lld\n", format_double(result.kl).c_str(),
              format_double(result.complement()).c_str(), pairs);
  return 0;
}

int cmd_variance(const CommonOptions& opt) {
  ModelSpec spec = resolve_spec(opt);
  long long samples = preset_fingerprint_samples(opt, spec);
  std::string prefix = out_prefix(opt, "variance");

  json echo = common_echo("variance", opt, spec.feature_map);
  echo["samples"] = samples;

  CoefficientSamples cs =
      sample_coefficients(spec, static_cast<int>(samples), opt.seed, opt.threads);
  VarianceProfile prof = variance_profile(cs);
  write_text_file(prefix + ".csv", variance_profile_to_csv(prof));
  write_text_file(prefix + ".json", variance_profile_to_json(prof).dump(2) + "\n");
  write_config_echo(prefix, echo);
  std::printf("wrote %s.csv %s.json for %zu frequencies\n", prefix.c_str(), prefix.c_str(),
              prof.index.size());
  return 0;
}

int cmd_train_fs(const CommonOptions& opt, int epochs, double lr, std::uint64_t model_seed,
                 std::uint64_t data_seed) {
  ModelSpec spec = resolve_spec(opt);
  std::string prefix = out_prefix(opt, "train_fs");

  json echo = common_echo("train-fs", opt, spec.feature_map);
  echo["epochs"] = epochs;
  echo["lr"] = lr;
  echo["model_seed"] = model_seed;
  echo["data_seed"] = data_seed;

  FourierSeriesTarget target = random_target(spec.max_frequency(), spec.dims(), data_seed);
  RegressionDataset dataset = make_dataset(target);

  TrainConfig tc;
  tc.epochs = epochs;
  tc.lr = lr;
  tc.model_seed = model_seed;
  TrainResult result = train(spec, dataset, tc);
  result.data_seed = data_seed;

  write_text_file(prefix + ".json", train_result_to_json(result).dump(2) + "\n");
  write_text_file(prefix + "_history.csv", loss_history_to_csv(result.loss_history));
  write_text_file(prefix + "_dataset.csv", dataset_to_csv(dataset));
  write_config_echo(prefix, echo);
  std::printf("final_mse=%s initial=%s epochs=%d\n", format_double(result.final_mse).c_str(),
              format_double(result.loss_history.front()).c_str(), epochs);
  return 0;
}

int cmd_train_hep(const CommonOptions& opt, const std::string& events_path, int synthetic,
                  int epochs, double lr, int batch, int bins, int grid,
                  std::uint64_t model_seed, std::uint64_t data_seed) {
  CommonOptions hep_opt = opt;
  if (hep_opt.dims == 1 && hep_opt.axes.empty()) hep_opt.dims = 2;  // two features
  ModelSpec spec = resolve_spec(hep_opt);
  std::string prefix = out_prefix(opt, "train_hep");

  json echo = common_echo("train-hep", hep_opt, spec.feature_map);
  echo["events"] = events_path;
  echo["synthetic"] = synthetic;
  echo["epochs"] = epochs;
  echo["lr"] = lr;
  echo["batch"] = batch;
  echo["bins"] = bins;
  echo["grid"] = grid;
  echo["model_seed"] = model_seed;
  echo["data_seed"] = data_seed;

  std::vector<EventRecord> events;
  if (!events_path.empty()) {
    events = events_from_csv(read_text_file(events_path));
  } else if (synthetic > 0) {
    events = generate_synthetic_events(synthetic, data_seed);
  } else {
    throw ConfigError("provide --events FILE or --synthetic COUNT");
  }

  HepConfig cfg;
  cfg.epochs = epochs;
  cfg.lr = lr;
  cfg.batch_size = batch;
  cfg.loss_bins = bins;
  cfg.discretization_grid = grid;
  cfg.model_seed = model_seed;
  cfg.data_seed = data_seed;

  HepReport report = train_hep(spec, events, cfg);
  write_text_file(prefix + "_report.json", hep_report_to_json(report).dump(2) + "\n");
  write_text_file(prefix + "_absdev.csv", abs_dev_histogram_csv(report, 40));
  write_config_echo(prefix, echo);
  std::printf("val_loss %s -> %s | test mse=%s kl=%s huber=%s\n",
              format_double(report.initial_val_loss).c_str(),
              format_double(report.final_val_loss).c_str(),
              format_double(report.test.mse).c_str(), format_double(report.test.kl).c_str(),
              format_double(report.test.huber).c_str());
  return 0;
}

int cmd_experiment(const CommonOptions& opt, const std::string& ansatz_list, int model_seeds,
                   int data_seeds, int epochs, double lr, long long expr_pairs) {
  std::string prefix = out_prefix(opt, "experiment");

  ExperimentConfig cfg;
  if (ansatz_list.empty()) {
    cfg.ansatzes.assign(std::begin(kAllAnsatzKinds), std::end(kAllAnsatzKinds));
  } else {
    for (const std::string& name : split_list(ansatz_list)) {
      cfg.ansatzes.push_back(ansatz_from_string(name));
    }
  }
  cfg.qubits = opt.qubits;
  cfg.layers = opt.layers;
  cfg.feature_map = resolve_axes(opt);
  cfg.model_seeds = model_seeds;
  cfg.data_seeds = data_seeds;
  cfg.epochs = epochs;
  cfg.lr = lr;
  cfg.master_seed = opt.seed;
  cfg.fingerprint_samples = static_cast<int>(opt.samples);
  cfg.expressibility_pairs = static_cast<int>(expr_pairs);
  cfg.threads = opt.threads;

  json echo = common_echo("experiment", opt, cfg.feature_map);
  echo["ansatz"] = ansatz_list;
  echo["model_seeds"] = model_seeds;
  echo["data_seeds"] = data_seeds;
  echo["epochs"] = epochs;
  echo["lr"] = lr;
  echo["expressibility_pairs"] = expr_pairs;

  ExperimentTable table = experiment_grid(cfg);
  write_text_file(prefix + "_table.csv", experiment_table_to_csv(table));
  write_text_file(prefix + "_table.json", experiment_table_to_json(table).dump(2) + "\n");
  write_text_file(prefix + "_runs.csv", experiment_runs_to_csv(table));
  write_config_echo(prefix, echo);
  for (const auto& row : table.rows) {
    std::printf("%-15s mean_mse=%-12.6g fcc=%-10.6g expr_kl=%.6g\n",
                to_string(row.ansatz).c_str(), row.mean_mse, row.fcc_value,
                row.expressibility_kl);
  }
  return 0;
}

int cmd_bench(const CommonOptions& opt, const std::string& qubit_list) {
  std::string prefix = out_prefix(opt, "bench");
  std::vector<int> qubit_values;
  for (const std::string& q : split_list(qubit_list.empty() ? "2,4,6" : qubit_list)) {
    qubit_values.push_back(std::stoi(q));
  }
  long long samples = opt.samples > 0 ? opt.samples : 2000;

  json echo = common_echo("bench", opt, resolve_axes(opt));
  echo["qubit_list"] = qubit_list.empty() ? "2,4,6" : qubit_list;
  echo["samples"] = samples;

  std::string csv = "n,theta_params,samples,fcc,fcc_seconds,expressibility_kl,"
                    "expressibility_pairs,expressibility_seconds\n";
  json rows = json::array();
  for (int n : qubit_values) {
    CommonOptions local = opt;
    local.qubits = n;
    ModelSpec spec = resolve_spec(local);

    auto t0 = std::chrono::steady_clock::now();
    CoefficientSamples cs =
        sample_coefficients(spec, static_cast<int>(samples), opt.seed, opt.threads);
    Fingerprint fp = pearson_matrix(cs);
    double fcc_value = fcc(fp);
    auto t1 = std::chrono::steady_clock::now();

    // Matched sample budget: the same number of parameter draws feeds both
    // metrics, so the fidelity pairs reuse the identical theta stream.
    long long pairs = samples / 2;
    ExpressibilityResult expr =
        expressibility(spec, static_cast<int>(pairs), 75, opt.seed, opt.threads);
    auto t2 = std::chrono::steady_clock::now();

    double fcc_sec = std::chrono::duration<double>(t1 - t0).count();
    double expr_sec = std::chrono::duration<double>(t2 - t1).count();
    csv += std::to_string(n) + ',' + std::to_string(param_count(spec)) + ',' +
           std::to_string(samples) + ',' + format_double(fcc_value) + ',' +
           format_double(fcc_sec) + ',' + format_double(expr.kl) + ',' +
           std::to_string(pairs) + ',' + format_double(expr_sec) + '\n';
    rows.push_back(json{{"n", n},
                        {"theta_params", param_count(spec)},
                        {"samples", samples},
                        {"fcc", fcc_value},
                        {"fcc_seconds", fcc_sec},
                        {"expressibility_kl", expr.kl},
                        {"expressibility_pairs", pairs},
                        {"expressibility_seconds", expr_sec}});
    std::printf("n=%d fcc=%.6g (%.3fs) expr_kl=%.6g (%.3fs)\n", n, fcc_value, fcc_sec,
                expr.kl, expr_sec);
  }
  write_text_file(prefix + ".csv", csv);
  write_text_file(prefix + ".json", json{{"rows", rows}}.dump(2) + "\n");
  write_config_echo(prefix, echo);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier fingerprints and coefficient-correlation metrics for "
               "parameterized quantum-circuit models"};
  app.require_subcommand(1);

  // --config FILE provides defaults for any flag; explicit flags override.
  std::string config_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }

  CommonOptions opt;
  json file_cfg = json::object();
  if (!config_path.empty()) {
    try {
      file_cfg = json::parse(read_text_file(config_path));
      apply_json_config(file_cfg, opt);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      return 2;
    }
  }

  bool surrogate_flag = file_cfg.value("surrogate", false);
  bool split_flag = file_cfg.value("split", false);
  int bins = file_cfg.value("bins", 75);
  int epochs = file_cfg.value("epochs", 1000);
  double lr = file_cfg.value("lr", 0.01);
  std::uint64_t model_seed = file_cfg.value("model_seed", std::uint64_t{1});
  std::uint64_t data_seed = file_cfg.value("data_seed", std::uint64_t{1});
  std::string events_path = file_cfg.value("events", std::string{});
  int synthetic = file_cfg.value("synthetic", 0);
  int hep_epochs = file_cfg.value("epochs", 20);
  double hep_lr = file_cfg.value("lr", 0.005);
  int batch = file_cfg.value("batch", 256);
  int grid = file_cfg.value("grid", 0);
  std::string ansatz_list = file_cfg.value("ansatz_list", std::string{});
  int model_seeds = file_cfg.value("model_seeds", 10);
  int data_seeds = file_cfg.value("data_seeds", 10);
  long long expr_pairs = file_cfg.value("expressibility_pairs", 0LL);
  std::string qubit_list = file_cfg.value("qubit_list", std::string{});

  app.add_option("--config", g_config_path_sink, "JSON config file; flags override its keys");

  auto* fp_cmd = app.add_subcommand("fingerprint", "Coefficient-correlation matrix + heatmap");
  add_common_options(fp_cmd, opt);
  fp_cmd->add_flag("--surrogate", surrogate_flag,
                   "Replace circuit sampling with degeneracy-scaled Gaussian draws");
  fp_cmd->add_flag("--split", split_flag, "Correlate real/imag parts as separate samples");

  auto* fcc_cmd = app.add_subcommand("fcc", "FCC scalar only");
  add_common_options(fcc_cmd, opt);
  fcc_cmd->add_flag("--split", split_flag, "Correlate real/imag parts as separate samples");

  auto* expr_cmd = app.add_subcommand("expressibility", "Fidelity-histogram KL divergence");
  add_common_options(expr_cmd, opt);
  expr_cmd->add_option("--bins", bins, "Histogram bins");

  auto* var_cmd = app.add_subcommand("variance", "Per-frequency coefficient variances");
  add_common_options(var_cmd, opt);

  auto* surr_cmd = app.add_subcommand("surrogate", "Zero-correlation surrogate fingerprint");
  add_common_options(surr_cmd, opt);
  surr_cmd->add_flag("--split", split_flag, "Correlate real/imag parts as separate samples");

  auto* tfs_cmd = app.add_subcommand("train-fs", "Fit a random Fourier series target");
  add_common_options(tfs_cmd, opt);
  tfs_cmd->add_option("--epochs", epochs, "Training epochs");
  tfs_cmd->add_option("--lr", lr, "Adam learning rate");
  tfs_cmd->add_option("--model-seed", model_seed, "Parameter initialization seed");
  tfs_cmd->add_option("--data-seed", data_seed, "Target coefficient seed");

  auto* hep_cmd = app.add_subcommand("train-hep", "Collision-event regression pipeline");
  add_common_options(hep_cmd, opt);
  hep_cmd->add_option("--events", events_path, "Event CSV (E1,px1,py1,pz1,E2,px2,py2,pz2,leading_pt)");
  hep_cmd->add_option("--synthetic", synthetic, "Generate this many synthetic events instead");
  hep_cmd->add_option("--epochs", hep_epochs, "Training epochs");
  hep_cmd->add_option("--lr", hep_lr, "Adam learning rate");
  hep_cmd->add_option("--batch", batch, "Mini-batch size");
  hep_cmd->add_option("--bins", bins, "Histogram bins of the KL loss term");
  hep_cmd->add_option("--grid", grid, "Discretization grid size (0 = Nyquist)");
  hep_cmd->add_option("--model-seed", model_seed, "Parameter initialization seed");
  hep_cmd->add_option("--data-seed", data_seed, "Split/synthetic-event seed");

  auto* exp_cmd = app.add_subcommand("experiment", "MSE vs FCC vs expressibility seed grid");
  add_common_options(exp_cmd, opt);
  exp_cmd->add_option("--ansatz-list", ansatz_list, "Comma list (default: all eight)");
  exp_cmd->add_option("--model-seeds", model_seeds, "Model seeds per ansatz");
  exp_cmd->add_option("--data-seeds", data_seeds, "Dataset seeds per ansatz");
  exp_cmd->add_option("--epochs", epochs, "Training epochs");
  exp_cmd->add_option("--lr", lr, "Adam learning rate");
  exp_cmd->add_option("--expressibility-pairs", expr_pairs, "Fidelity pairs (0 = preset)");

  auto* bench_cmd = app.add_subcommand("bench", "FCC vs expressibility wall time");
  add_common_options(bench_cmd, opt);
  bench_cmd->add_option("--qubits-list", qubit_list, "Comma list of qubit counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly, bad flags are config errors
  }

  try {
    if (fp_cmd->parsed()) return cmd_fingerprint(opt, surrogate_flag, split_flag);
    if (fcc_cmd->parsed()) return cmd_fcc(opt, split_flag);
    if (expr_cmd->parsed()) return cmd_expressibility(opt, bins);
    if (var_cmd->parsed()) return cmd_variance(opt);
    if (surr_cmd->parsed()) return cmd_fingerprint(opt, true, split_flag);
    if (tfs_cmd->parsed()) return cmd_train_fs(opt, epochs, lr, model_seed, data_seed);
    if (hep_cmd->parsed()) {
      return cmd_train_hep(opt, events_path, synthetic, hep_epochs, hep_lr, batch, bins, grid,
                           model_seed, data_seed);
    }
    if (exp_cmd->parsed()) {
      return cmd_experiment(opt, ansatz_list, model_seeds, data_seeds, epochs, lr, expr_pairs);
    }
    if (bench_cmd->parsed()) return cmd_bench(opt, qubit_list);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
