#include "qfp/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace qfp {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

std::vector<std::string> non_empty_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("malformed number: " + s);
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

json model_spec_to_json(const ModelSpec& spec) {
  json axes = json::array();
  for (PauliAxis a : spec.feature_map.axes) axes.push_back(to_string(a));
  return json{{"qubits", spec.qubits},
              {"layers", spec.layers},
              {"ansatz", to_string(spec.ansatz)},
              {"axes", axes},
              {"observable", "mean_z"}};
}

ModelSpec model_spec_from_json(const json& j) {
  ModelSpec spec;
  spec.qubits = j.at("qubits").get<int>();
  spec.layers = j.at("layers").get<int>();
  spec.ansatz = ansatz_from_string(j.at("ansatz").get<std::string>());
  spec.feature_map.axes.clear();
  for (const auto& a : j.at("axes")) {
    spec.feature_map.axes.push_back(axis_from_string(a.get<std::string>()));
  }
  if (j.contains("observable") && j.at("observable").get<std::string>() != "mean_z") {
    throw std::invalid_argument("only the mean_z observable is supported");
  }
  validate_model_spec(spec);
  return spec;
}

std::string coefficients_to_csv(const CoefficientTensor& tensor) {
  std::string out = tensor.dims == 1 ? "w1,re,im\n" : "w1,w2,re,im\n";
  for (std::size_t f = 0; f < tensor.size(); ++f) {
    std::vector<int> freq = tensor.freq_at(f);
    for (int c : freq) {
      out += std::to_string(c);
      out += ',';
    }
    out += format_double(tensor.values[f].real());
    out += ',';
    out += format_double(tensor.values[f].imag());
    out += '\n';
  }
  return out;
}

json coefficients_to_json(const CoefficientTensor& tensor) {
  json entries = json::array();
  for (std::size_t f = 0; f < tensor.size(); ++f) {
    json e;
    e["w"] = tensor.freq_at(f);
    e["re"] = tensor.values[f].real();
    e["im"] = tensor.values[f].imag();
    entries.push_back(std::move(e));
  }
  return json{{"dims", tensor.dims}, {"max_freq", tensor.max_freq}, {"coefficients", entries}};
}

std::string fingerprint_to_csv(const Fingerprint& fp) {
  std::size_t n = fp.order();
  std::string out = "omega";
  for (std::size_t j = 0; j < n; ++j) {
    out += ",\"";
    out += fp.index.label(j);
    out += '"';
  }
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out += '"';
    out += fp.index.label(i);
    out += '"';
    for (std::size_t j = 0; j < n; ++j) {
      out += ',';
      out += format_double(fp.at(i, j));
    }
    out += '\n';
  }
  return out;
}

json fingerprint_metadata(const Fingerprint& fp, double fcc_value, double weighted_value,
                          double stderr_value) {
  json degenerate = json::array();
  for (std::size_t c : fp.degenerate_columns) degenerate.push_back(fp.index.label(c));
  return json{{"frequencies", fp.order()},
              {"samples", fp.sample_count},
              {"seed", fp.master_seed},
              {"fcc", fcc_value},
              {"weighted_fcc", weighted_value},
              {"fcc_stderr", stderr_value},
              {"degenerate_columns", degenerate}};
}

std::string variance_profile_to_csv(const VarianceProfile& profile) {
  std::string out = "omega,var_re,var_im,var_abs,mean_re,mean_im\n";
  for (std::size_t c = 0; c < profile.index.size(); ++c) {
    out += '"';
    out += profile.index.label(c);
    out += '"';
    out += ',' + format_double(profile.var_re[c]);
    out += ',' + format_double(profile.var_im[c]);
    out += ',' + format_double(profile.var_abs[c]);
    out += ',' + format_double(profile.mean[c].real());
    out += ',' + format_double(profile.mean[c].imag());
    out += '\n';
  }
  return out;
}

json variance_profile_to_json(const VarianceProfile& profile) {
  json rows = json::array();
  for (std::size_t c = 0; c < profile.index.size(); ++c) {
    rows.push_back(json{{"omega", profile.index.label(c)},
                        {"var_re", profile.var_re[c]},
                        {"var_im", profile.var_im[c]},
                        {"var_abs", profile.var_abs[c]},
                        {"mean_re", profile.mean[c].real()},
                        {"mean_im", profile.mean[c].imag()}});
  }
  return json{{"profile", rows}};
}

std::string histogram_to_csv(const FidelityHistogram& hist) {
  std::string out = "bin_lo,bin_hi,count\n";
  for (int b = 0; b < hist.bins; ++b) {
    out += format_double(hist.bin_lo(b));
    out += ',' + format_double(hist.bin_hi(b));
    out += ',' + std::to_string(hist.counts[static_cast<std::size_t>(b)]);
    out += '\n';
  }
  return out;
}

json expressibility_to_json(const ExpressibilityResult& result) {
  return json{{"kl", result.kl},
              {"complement", result.complement()},
              {"bins", result.bins},
              {"pairs", result.pair_count},
              {"seed", result.seed}};
}

std::string dataset_to_csv(const RegressionDataset& dataset) {
  std::string out = dataset.grid.dims == 1 ? "x1,target\n" : "x1,x2,target\n";
  for (std::size_t p = 0; p < dataset.size(); ++p) {
    std::vector<double> x = dataset.grid.point(p);
    for (double c : x) {
      out += format_double(c);
      out += ',';
    }
    out += format_double(dataset.targets[p]);
    out += '\n';
  }
  return out;
}

RegressionDataset dataset_from_csv(const std::string& text) {
  std::vector<std::string> lines = non_empty_lines(text);
  if (lines.size() < 2) throw std::invalid_argument("dataset CSV has no data rows");
  std::vector<std::string> header = split_csv_line(lines[0]);
  int dims = static_cast<int>(header.size()) - 1;
  if (dims < 1 || dims > 2) throw std::invalid_argument("dataset CSV needs 1 or 2 inputs");

  std::size_t rows = lines.size() - 1;
  int k = dims == 1 ? static_cast<int>(rows)
                    : static_cast<int>(std::llround(std::sqrt(static_cast<double>(rows))));
  if (static_cast<std::size_t>(dims == 1 ? k : k * k) != rows) {
    throw std::invalid_argument("dataset CSV row count is not a full grid");
  }

  RegressionDataset ds;
  ds.grid = InputGrid{dims, k};
  ds.targets.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> fields = split_csv_line(lines[r + 1]);
    if (fields.size() != header.size()) throw std::invalid_argument("ragged dataset CSV");
    ds.targets[r] = parse_double(fields.back());
  }
  return ds;
}

std::string loss_history_to_csv(const std::vector<double>& history) {
  std::string out = "epoch,loss\n";
  for (std::size_t e = 0; e < history.size(); ++e) {
    out += std::to_string(e);
    out += ',' + format_double(history[e]);
    out += '\n';
  }
  return out;
}

json train_result_to_json(const TrainResult& result) {
  return json{{"final_mse", result.final_mse},
              {"epochs", result.loss_history.size()},
              {"initial_loss", result.loss_history.empty() ? 0.0 : result.loss_history.front()},
              {"model_seed", result.model_seed},
              {"data_seed", result.data_seed},
              {"final_theta", result.final_theta}};
}

std::string experiment_table_to_csv(const ExperimentTable& table) {
  std::string out =
      "ansatz,n,L,D,mean_mse,std_mse,fcc,weighted_fcc,expressibility_kl,samples,seeds\n";
  for (const auto& row : table.rows) {
    out += to_string(row.ansatz);
    out += ',' + std::to_string(table.config.qubits);
    out += ',' + std::to_string(table.config.layers);
    out += ',' + std::to_string(table.config.feature_map.dims());
    out += ',' + format_double(row.mean_mse);
    out += ',' + format_double(row.std_mse);
    out += ',' + format_double(row.fcc_value);
    out += ',' + format_double(row.weighted_fcc_value);
    out += ',' + format_double(row.expressibility_kl);
    out += ',' + std::to_string(row.fingerprint_samples);
    out += ',' + std::to_string(table.config.model_seeds) + 'x' +
           std::to_string(table.config.data_seeds);
    out += '\n';
  }
  return out;
}

json experiment_table_to_json(const ExperimentTable& table) {
  json axes = json::array();
  for (PauliAxis a : table.config.feature_map.axes) axes.push_back(to_string(a));
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back(json{{"ansatz", to_string(row.ansatz)},
                        {"mean_mse", row.mean_mse},
                        {"std_mse", row.std_mse},
                        {"fcc", row.fcc_value},
                        {"weighted_fcc", row.weighted_fcc_value},
                        {"expressibility_kl", row.expressibility_kl},
                        {"fingerprint_samples", row.fingerprint_samples},
                        {"expressibility_pairs", row.expressibility_pairs}});
  }
  return json{{"qubits", table.config.qubits},
              {"layers", table.config.layers},
              {"axes", axes},
              {"model_seeds", table.config.model_seeds},
              {"data_seeds", table.config.data_seeds},
              {"epochs", table.config.epochs},
              {"lr", table.config.lr},
              {"master_seed", table.config.master_seed},
              {"rows", rows}};
}

std::string experiment_runs_to_csv(const ExperimentTable& table) {
  std::string out = "ansatz,model_seed,data_seed,final_mse\n";
  for (const auto& run : table.runs) {
    out += to_string(run.ansatz);
    out += ',' + std::to_string(run.model_seed);
    out += ',' + std::to_string(run.data_seed);
    out += ',' + format_double(run.final_mse);
    out += '\n';
  }
  return out;
}

std::vector<EventRecord> events_from_csv(const std::string& text) {
  std::vector<std::string> lines = non_empty_lines(text);
  if (lines.empty()) throw std::invalid_argument("event CSV is empty");
  std::vector<std::string> header = split_csv_line(lines[0]);
  const std::vector<std::string> required = {"E1", "px1", "py1", "pz1", "E2",
                                             "px2", "py2", "pz2", "leading_pt"};
  // Extra columns (particle type, charge) are tolerated and ignored.
  std::vector<int> col(required.size(), -1);
  for (std::size_t c = 0; c < header.size(); ++c) {
    for (std::size_t r = 0; r < required.size(); ++r) {
      if (header[c] == required[r]) col[r] = static_cast<int>(c);
    }
  }
  for (std::size_t r = 0; r < required.size(); ++r) {
    if (col[r] < 0) throw std::invalid_argument("event CSV is missing column " + required[r]);
  }

  std::vector<EventRecord> events;
  events.reserve(lines.size() - 1);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    std::vector<std::string> fields = split_csv_line(lines[l]);
    if (fields.size() < header.size()) throw std::invalid_argument("ragged event CSV");
    auto get = [&](std::size_t r) { return parse_double(fields[static_cast<std::size_t>(col[r])]); };
    events.push_back(EventRecord{get(0), get(1), get(2), get(3), get(4), get(5), get(6),
                                 get(7), get(8)});
  }
  return events;
}

std::string events_to_csv(const std::vector<EventRecord>& events) {
  std::string out = "E1,px1,py1,pz1,E2,px2,py2,pz2,leading_pt\n";
  for (const auto& e : events) {
    out += format_double(e.e1);
    out += ',' + format_double(e.px1);
    out += ',' + format_double(e.py1);
    out += ',' + format_double(e.pz1);
    out += ',' + format_double(e.e2);
    out += ',' + format_double(e.px2);
    out += ',' + format_double(e.py2);
    out += ',' + format_double(e.pz2);
    out += ',' + format_double(e.leading_pt);
    out += '\n';
  }
  return out;
}

json hep_report_to_json(const HepReport& report) {
  return json{{"initial_val_loss", report.initial_val_loss},
              {"final_val_loss", report.final_val_loss},
              {"validation", json{{"mse", report.validation.mse},
                                  {"kl", report.validation.kl},
                                  {"huber", report.validation.huber}}},
              {"test", json{{"mse", report.test.mse},
                            {"kl", report.test.kl},
                            {"huber", report.test.huber}}},
              {"abs_dev_mean_pt", report.abs_dev_mean_pt},
              {"abs_dev_std_pt", report.abs_dev_std_pt},
              {"target_min_pt", report.target_min_pt},
              {"target_max_pt", report.target_max_pt},
              {"train_size", report.train_size},
              {"val_size", report.val_size},
              {"test_size", report.test_size},
              {"train_loss_history", report.train_loss_history}};
}

std::string abs_dev_histogram_csv(const HepReport& report, int bins) {
  double hi = 0.0;
  for (double d : report.abs_dev_pt) hi = std::max(hi, d);
  if (hi == 0.0) hi = 1.0;
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double d : report.abs_dev_pt) {
    int b = static_cast<int>(d / hi * bins);
    if (b >= bins) b = bins - 1;
    ++counts[static_cast<std::size_t>(b)];
  }
  std::string out = "bin_lo,bin_hi,count\n";
  for (int b = 0; b < bins; ++b) {
    out += format_double(hi * b / bins);
    out += ',' + format_double(hi * (b + 1) / bins);
    out += ',' + std::to_string(counts[static_cast<std::size_t>(b)]);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace qfp
