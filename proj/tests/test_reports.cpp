#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "qfp/heatmap.hpp"
#include "qfp/serialization.hpp"

using namespace qfp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qfp_test_" + std::to_string(std::rand()) + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
  std::string cmd = std::string(QFP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

bool svg_parses(const std::string& path) {
  std::string cmd = "python3 -c \"import xml.etree.ElementTree as ET; ET.parse('" + path +
                    "')\" > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

}  // namespace

TEST_CASE("model spec json round trip") {
  ModelSpec spec{5, 2, AnsatzKind::C17, {{PauliAxis::X, PauliAxis::Y}}};
  json j = model_spec_to_json(spec);
  ModelSpec back = model_spec_from_json(j);
  CHECK(back.qubits == 5);
  CHECK(back.layers == 2);
  CHECK(back.ansatz == AnsatzKind::C17);
  CHECK(back.feature_map.axes == spec.feature_map.axes);

  json bad = j;
  bad["ansatz"] = "nope";
  CHECK_THROWS_AS(model_spec_from_json(bad), std::invalid_argument);
}

TEST_CASE("coefficient tensor csv lists every frequency") {
  CoefficientTensor t = make_coefficient_tensor(1, 1);
  std::vector<int> plus = {1};
  t.at(plus) = cplx(0.25, -0.5);
  std::string csv = coefficients_to_csv(t);
  CHECK(csv.find("w1,re,im\n") == 0);
  CHECK(csv.find("1,0.25,-0.5") != std::string::npos);
  CHECK(coefficients_to_json(t).at("coefficients").size() == 3);
}

TEST_CASE("dataset csv round trip") {
  RegressionDataset ds;
  ds.grid = InputGrid{1, 5};
  ds.targets = {0.1, -0.2, 0.3, -0.4, 0.5};
  RegressionDataset back = dataset_from_csv(dataset_to_csv(ds));
  CHECK(back.grid.points_per_axis == 5);
  CHECK(back.targets == ds.targets);
}

TEST_CASE("event csv parsing tolerates extra columns and rejects missing ones") {
  std::string text =
      "E1,px1,py1,pz1,E2,px2,py2,pz2,type,leading_pt\n"
      "3,0,0,2,4,0,0,-1,q,8.5\n";
  auto events = events_from_csv(text);
  REQUIRE(events.size() == 1);
  CHECK(events[0].e2 == 4.0);
  CHECK(events[0].leading_pt == 8.5);

  CHECK_THROWS_AS(events_from_csv("E1,px1\n1,2\n"), std::invalid_argument);

  auto round = events_from_csv(events_to_csv(events));
  CHECK(round[0].pz2 == events[0].pz2);
}

TEST_CASE("heatmap svg renders the lower triangle only") {
  std::vector<std::vector<double>> m = {{1.0, 0.2}, {0.2, 1.0}};
  std::string svg = render_heatmap(m, {"0", "1"}, "demo");
  // one cell for a 2x2 matrix plus background and legend rects
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
  std::size_t rects = 0;
  for (std::size_t pos = svg.find("<rect"); pos != std::string::npos;
       pos = svg.find("<rect", pos + 1)) {
    ++rects;
  }
  CHECK(rects == 3);

  // out-of-range values clamp instead of producing bad colors
  std::vector<std::vector<double>> wild = {{1.0, 0.0, 0.0}, {2.5, 1.0, 0.0}, {-1.0, 0.4, 1.0}};
  std::string svg2 = render_heatmap(wild, {"a", "b", "c"});
  CHECK(svg2.find("#") != std::string::npos);

  CHECK_THROWS_AS(render_heatmap({{1.0, 0.0}}, {}), std::invalid_argument);
}

TEST_CASE("cli fingerprint writes artifacts and reruns byte-identically") {
  TempDir dir;
  std::string prefix = dir.str("fp");
  int rc = run_cli("fingerprint --ansatz C15 --qubits 2 --samples 64 --seed 9 --out " + prefix);
  REQUIRE(rc == 0);

  std::string csv1 = read_text_file(prefix + "_fingerprint.csv");
  json meta = json::parse(read_text_file(prefix + "_fingerprint.json"));
  CHECK(meta.contains("fcc"));
  CHECK(meta["samples"] == 64);
  CHECK(svg_parses(prefix + "_heatmap.svg"));

  // rerun with the same seed: identical bytes
  REQUIRE(run_cli("fingerprint --ansatz C15 --qubits 2 --samples 64 --seed 9 --out " + prefix) == 0);
  CHECK(read_text_file(prefix + "_fingerprint.csv") == csv1);

  // re-feeding the config echo reproduces the same numbers
  std::string prefix2 = dir.str("fp2");
  REQUIRE(run_cli("fingerprint --config " + prefix + "_config.json --out " + prefix2) == 0);
  CHECK(read_text_file(prefix2 + "_fingerprint.csv") == csv1);
}

TEST_CASE("cli surrogate mode is reachable from both entry points") {
  TempDir dir;
  std::string a = dir.str("surr_a");
  std::string b = dir.str("surr_b");
  REQUIRE(run_cli("surrogate --qubits 3 --samples 128 --seed 5 --out " + a) == 0);
  REQUIRE(run_cli("fingerprint --surrogate --qubits 3 --samples 128 --seed 5 --out " + b) == 0);
  CHECK(read_text_file(a + "_fingerprint.csv") == read_text_file(b + "_fingerprint.csv"));
}

TEST_CASE("cli error paths use the documented exit codes") {
  TempDir dir;
  CHECK(run_cli("fingerprint --ansatz NOPE --out " + dir.str("x")) == 2);
  CHECK(run_cli("train-hep --qubits 2 --out " + dir.str("y")) == 2);  // no event source
  CHECK(run_cli("train-hep --qubits 2 --events " + dir.str("missing.csv") + " --out " +
                dir.str("z")) == 3);  // runtime failure
  CHECK(run_cli("nonsense") != 0);
}

TEST_CASE("cli expressibility and variance emit their tables") {
  TempDir dir;
  std::string prefix = dir.str("ex");
  REQUIRE(run_cli("expressibility --ansatz HEA --qubits 2 --samples 500 --bins 20 --out " +
                  prefix) == 0);
  json result = json::parse(read_text_file(prefix + ".json"));
  CHECK(result["kl"].get<double>() >= 0.0);
  CHECK(result["bins"] == 20);
  std::string hist = read_text_file(prefix + "_histogram.csv");
  CHECK(hist.find("bin_lo,bin_hi,count\n") == 0);

  std::string vprefix = dir.str("var");
  REQUIRE(run_cli("variance --ansatz C15 --qubits 2 --samples 64 --out " + vprefix) == 0);
  std::string vcsv = read_text_file(vprefix + ".csv");
  CHECK(vcsv.find("omega,var_re,var_im,var_abs") == 0);
}

TEST_CASE("cli training commands produce reports") {
  TempDir dir;
  std::string prefix = dir.str("t");
  REQUIRE(run_cli("train-fs --ansatz YZY --qubits 1 --epochs 40 --lr 0.1 --out " + prefix) == 0);
  json result = json::parse(read_text_file(prefix + ".json"));
  CHECK(result["epochs"] == 40);
  CHECK(result["final_mse"].get<double>() < result["initial_loss"].get<double>());

  std::string hep = dir.str("hep");
  REQUIRE(run_cli("train-hep --qubits 2 --synthetic 800 --epochs 2 --out " + hep) == 0);
  json report = json::parse(read_text_file(hep + "_report.json"));
  CHECK(report["train_size"] == 640);
  CHECK(report.contains("final_val_loss"));
}

TEST_CASE("cli experiment writes the three-table set") {
  TempDir dir;
  std::string prefix = dir.str("exp");
  REQUIRE(run_cli("experiment --ansatz-list C15,C18 --qubits 2 --model-seeds 1 "
                  "--data-seeds 2 --epochs 5 --samples 32 --expressibility-pairs 32 --out " +
                  prefix) == 0);
  std::string table = read_text_file(prefix + "_table.csv");
  CHECK(table.find("ansatz,n,L,D,mean_mse,std_mse,fcc,weighted_fcc,expressibility_kl,"
                   "samples,seeds\n") == 0);
  CHECK(table.find("C15") != std::string::npos);
  CHECK(table.find("C18") != std::string::npos);
  CHECK(table.find("1x2") != std::string::npos);

  std::string runs = read_text_file(prefix + "_runs.csv");
  // header + 2 ansatzes x 1 model seed x 2 data seeds
  CHECK(std::count(runs.begin(), runs.end(), '\n') == 5);

  json jt = json::parse(read_text_file(prefix + "_table.json"));
  CHECK(jt["rows"].size() == 2);
}

TEST_CASE("cli bench reports matched sample counts") {
  TempDir dir;
  std::string prefix = dir.str("bench");
  REQUIRE(run_cli("bench --qubits-list 2 --samples 64 --out " + prefix) == 0);
  json result = json::parse(read_text_file(prefix + ".json"));
  REQUIRE(result["rows"].size() == 1);
  CHECK(result["rows"][0]["samples"] == 64);
  CHECK(result["rows"][0]["expressibility_pairs"] == 32);
  CHECK(result["rows"][0]["fcc_seconds"].get<double>() > 0.0);
}
