#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "qfp/expressibility.hpp"
#include "qfp/fingerprint.hpp"
#include "qfp/fourier_data.hpp"
#include "qfp/hep.hpp"
#include "qfp/trainer.hpp"

namespace qfp {

using json = nlohmann::json;

// Doubles are printed with %.17g everywhere so that reruns with the same
// seeds produce byte-identical files.
std::string format_double(double value);

json model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const json& j);

// CSV with one row per frequency: w1[,w2],re,im
std::string coefficients_to_csv(const CoefficientTensor& tensor);
json coefficients_to_json(const CoefficientTensor& tensor);

// Full symmetric |r| matrix with labelled header row/column.
std::string fingerprint_to_csv(const Fingerprint& fp);
json fingerprint_metadata(const Fingerprint& fp, double fcc_value, double weighted_value,
                          double stderr_value);

std::string variance_profile_to_csv(const VarianceProfile& profile);
json variance_profile_to_json(const VarianceProfile& profile);

std::string histogram_to_csv(const FidelityHistogram& hist);
json expressibility_to_json(const ExpressibilityResult& result);

std::string dataset_to_csv(const RegressionDataset& dataset);
RegressionDataset dataset_from_csv(const std::string& text);

std::string loss_history_to_csv(const std::vector<double>& history);
json train_result_to_json(const TrainResult& result);

std::string experiment_table_to_csv(const ExperimentTable& table);
json experiment_table_to_json(const ExperimentTable& table);
std::string experiment_runs_to_csv(const ExperimentTable& table);

// Event CSV header: E1,px1,py1,pz1,E2,px2,py2,pz2,leading_pt
std::vector<EventRecord> events_from_csv(const std::string& text);
std::string events_to_csv(const std::vector<EventRecord>& events);
json hep_report_to_json(const HepReport& report);
std::string abs_dev_histogram_csv(const HepReport& report, int bins);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qfp
