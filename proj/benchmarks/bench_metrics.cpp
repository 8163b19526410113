#include <benchmark/benchmark.h>

#include <numbers>

#include "qfp/expressibility.hpp"
#include "qfp/fingerprint.hpp"
#include "qfp/rng.hpp"

using namespace qfp;

namespace {

ModelSpec make_spec(int qubits) {
  return ModelSpec{qubits, 1, AnsatzKind::C15, {{PauliAxis::Y}}};
}

void GateApply(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  StateVector s(n);
  GateOp gate = GateOp::ry(n / 2, 0.3);
  for (auto _ : state) {
    apply_gate_in_place(s, gate);
    benchmark::DoNotOptimize(s.mutable_amplitudes().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(GateApply)->DenseRange(2, 12, 2);

void ModelEvaluate(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ModelSpec spec = make_spec(n);
  Rng rng(1);
  std::vector<double> theta(static_cast<std::size_t>(param_count(spec)));
  for (double& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
  std::vector<double> x = {1.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(spec, theta, x));
  }
}
BENCHMARK(ModelEvaluate)->DenseRange(2, 10, 2);

// The two ansatz metrics at a matched parameter-sample budget; the
// fingerprint needs one statevector run per grid point, expressibility one
// per draw, so their relative cost shifts with the qubit count.
void FccPipeline(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ModelSpec spec = make_spec(n);
  for (auto _ : state) {
    CoefficientSamples samples = sample_coefficients(spec, 64, 7, 1);
    Fingerprint fp = pearson_matrix(samples);
    benchmark::DoNotOptimize(fcc(fp));
  }
}
BENCHMARK(FccPipeline)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void ExpressibilityPipeline(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ModelSpec spec = make_spec(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expressibility(spec, 32, 75, 7, 1));
  }
}
BENCHMARK(ExpressibilityPipeline)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
