#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfp/circuit.hpp"
#include "qfp/rng.hpp"
#include "support/oracles.hpp"

using namespace qfp;
namespace pi = std::numbers;

namespace {

std::vector<double> random_params(std::size_t count, Rng& rng) {
  std::vector<double> out(count);
  for (double& v : out) v = rng.uniform(0.0, 2.0 * pi::pi);
  return out;
}

}  // namespace

TEST_CASE("per-block parameter counts for n=4") {
  CHECK(param_count(AnsatzKind::C15, 4, 1) == 16);
  CHECK(param_count(AnsatzKind::HEA, 4, 1) == 24);
  CHECK(param_count(AnsatzKind::C16, 4, 1) == 22);
  CHECK(param_count(AnsatzKind::C17, 4, 1) == 22);
  CHECK(param_count(AnsatzKind::C18, 4, 1) == 24);
  CHECK(param_count(AnsatzKind::C19, 4, 1) == 24);
  CHECK(param_count(AnsatzKind::YZY, 4, 1) == 24);
  CHECK(param_count(AnsatzKind::YZY_ENTANGLING, 4, 1) == 24);
}

TEST_CASE("entangling blocks require two qubits") {
  CHECK_THROWS_AS(param_count(AnsatzKind::HEA, 1, 1), std::invalid_argument);
  CHECK(param_count(AnsatzKind::YZY, 1, 1) == 6);
}

TEST_CASE("parameter-count formula matches gate-list enumeration") {
  for (AnsatzKind kind : kAllAnsatzKinds) {
    for (int n = 2; n <= 8; ++n) {
      int per_block = per_block_param_count(kind, n);
      std::vector<double> params(static_cast<std::size_t>(per_block), 0.25);
      auto gates = build_ansatz_block(kind, n, params);
      int parameterized = 0;
      for (const auto& g : gates) {
        if (g.parameterized()) ++parameterized;
      }
      CHECK(parameterized == per_block);
      for (int layers = 1; layers <= 3; ++layers) {
        CHECK(param_count(kind, n, layers) == (layers + 1) * per_block);
      }
    }
  }
}

TEST_CASE("yzy block gate order matches the drawn layout") {
  std::vector<double> p = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  auto gates = build_ansatz_block(AnsatzKind::YZY, 2, p);
  REQUIRE(gates.size() == 6);
  CHECK(gates[0].kind == GateKind::RY);
  CHECK(gates[0].target == 0);
  CHECK(gates[0].angle == 0.1);
  CHECK(gates[1].kind == GateKind::RZ);
  CHECK(gates[1].angle == 0.2);
  CHECK(gates[2].kind == GateKind::RY);
  CHECK(gates[2].angle == 0.3);
  CHECK(gates[3].target == 1);
  CHECK(gates[3].angle == 0.4);
  CHECK(gates[5].angle == 0.6);
}

TEST_CASE("circuit 18 wiring for n=4") {
  std::vector<double> p(12);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = 0.01 * static_cast<double>(i + 1);
  auto gates = build_ansatz_block(AnsatzKind::C18, 4, p);
  REQUIRE(gates.size() == 12);
  // rotation columns: RX on all qubits, then RZ on all qubits
  for (int q = 0; q < 4; ++q) {
    CHECK(gates[static_cast<std::size_t>(q)].kind == GateKind::RX);
    CHECK(gates[static_cast<std::size_t>(q)].target == q);
    CHECK(gates[static_cast<std::size_t>(q)].angle == doctest::Approx(0.01 * (2 * q + 1)));
    CHECK(gates[static_cast<std::size_t>(4 + q)].kind == GateKind::RZ);
    CHECK(gates[static_cast<std::size_t>(4 + q)].angle == doctest::Approx(0.01 * (2 * q + 2)));
  }
  // controlled ring: (3->0), (2->3), (1->2), (0->1) with ascending angles
  auto check_ctrl = [&](std::size_t i, int control, int target, double angle) {
    CHECK(gates[i].kind == GateKind::CRZ);
    CHECK(gates[i].control == control);
    CHECK(gates[i].target == target);
    CHECK(gates[i].angle == doctest::Approx(angle));
  };
  check_ctrl(8, 3, 0, 0.09);
  check_ctrl(9, 2, 3, 0.10);
  check_ctrl(10, 1, 2, 0.11);
  check_ctrl(11, 0, 1, 0.12);
}

TEST_CASE("circuit 16 uses the two-stage pairing") {
  std::vector<double> p(11, 0.0);
  p[8] = 1.0;
  p[9] = 2.0;
  p[10] = 3.0;
  auto gates = build_ansatz_block(AnsatzKind::C16, 4, p);
  REQUIRE(gates.size() == 11);
  CHECK(gates[8].control == 1);
  CHECK(gates[8].target == 0);
  CHECK(gates[8].angle == 1.0);
  CHECK(gates[9].control == 3);
  CHECK(gates[9].target == 2);
  CHECK(gates[9].angle == 2.0);
  CHECK(gates[10].control == 2);
  CHECK(gates[10].target == 1);
  CHECK(gates[10].angle == 3.0);
  for (std::size_t i = 8; i < 11; ++i) CHECK(gates[i].kind == GateKind::CRZ);

  auto c17 = build_ansatz_block(AnsatzKind::C17, 4, p);
  CHECK(c17[8].kind == GateKind::CRX);
}

TEST_CASE("circuit 15 rings for n=4") {
  std::vector<double> p(8, 0.0);
  auto gates = build_ansatz_block(AnsatzKind::C15, 4, p);
  REQUIRE(gates.size() == 16);
  auto cnot_at = [&](std::size_t i, int control, int target) {
    CHECK(gates[i].kind == GateKind::CNOT);
    CHECK(gates[i].control == control);
    CHECK(gates[i].target == target);
  };
  // first ring, controls descending
  cnot_at(4, 3, 0);
  cnot_at(5, 2, 3);
  cnot_at(6, 1, 2);
  cnot_at(7, 0, 1);
  // second ring targets the upper neighbour
  cnot_at(12, 3, 2);
  cnot_at(13, 0, 3);
  cnot_at(14, 1, 0);
  cnot_at(15, 2, 1);
}

TEST_CASE("hea emits the circular cascade with the wrap gate last") {
  std::vector<double> p(12, 0.0);
  auto gates = build_ansatz_block(AnsatzKind::HEA, 4, p);
  REQUIRE(gates.size() == 16);
  CHECK(gates[12].control == 0);
  CHECK(gates[12].target == 1);
  CHECK(gates[13].control == 2);
  CHECK(gates[13].target == 3);
  CHECK(gates[14].control == 1);
  CHECK(gates[14].target == 2);
  CHECK(gates[15].control == 3);
  CHECK(gates[15].target == 0);

  // n=2 keeps both wrap gates
  std::vector<double> p2(6, 0.0);
  auto g2 = build_ansatz_block(AnsatzKind::HEA, 2, p2);
  REQUIRE(g2.size() == 8);
  CHECK(g2[6].control == 0);
  CHECK(g2[6].target == 1);
  CHECK(g2[7].control == 1);
  CHECK(g2[7].target == 0);
}

TEST_CASE("every block composed with its inverse is the identity") {
  Rng rng(321);
  for (AnsatzKind kind : kAllAnsatzKinds) {
    for (int n : {2, 3, 5}) {
      auto params = random_params(static_cast<std::size_t>(per_block_param_count(kind, n)), rng);
      auto gates = build_ansatz_block(kind, n, params);
      StateVector ref = oracles::haar_state(n, rng);
      StateVector s = ref;
      apply_circuit_in_place(s, gates);
      for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        apply_gate_in_place(s, inverse(*it));
      }
      double dist = 0.0;
      for (std::size_t i = 0; i < s.dim(); ++i) {
        dist = std::max(dist, std::abs(s.amplitude(i) - ref.amplitude(i)));
      }
      REQUIRE(dist < 1e-10);
    }
  }
}

TEST_CASE("model circuit structure: blocks interleaved with encoding layers") {
  ModelSpec spec{2, 2, AnsatzKind::YZY, {{PauliAxis::Y}}};
  std::vector<double> theta(static_cast<std::size_t>(param_count(spec)), 0.0);
  std::vector<double> x = {0.5};
  auto gates = build_model_circuit(spec, theta, x);
  // blocks are 6 rotations each; encoding layers are 2 RY(x) gates
  REQUIRE(gates.size() == 3 * 6 + 2 * 2);
  CHECK(gates[6].kind == GateKind::RY);
  CHECK(gates[6].angle == 0.5);
  CHECK(gates[7].angle == 0.5);
  CHECK(gates[14].angle == 0.5);
}

TEST_CASE("2d encoding layer applies RX(x1) then RY(x2) on every qubit") {
  FeatureMapSpec fm{{PauliAxis::X, PauliAxis::Y}};
  std::vector<double> x = {0.3, 0.9};
  auto gates = build_encoding_layer(fm, 3, x);
  REQUIRE(gates.size() == 6);
  for (int q = 0; q < 3; ++q) {
    CHECK(gates[static_cast<std::size_t>(q)].kind == GateKind::RX);
    CHECK(gates[static_cast<std::size_t>(q)].angle == 0.3);
    CHECK(gates[static_cast<std::size_t>(3 + q)].kind == GateKind::RY);
    CHECK(gates[static_cast<std::size_t>(3 + q)].angle == 0.9);
  }
}

TEST_CASE("single-qubit model with zero parameters is cos(x)") {
  ModelSpec spec{1, 1, AnsatzKind::YZY, {{PauliAxis::Y}}};
  std::vector<double> theta(6, 0.0);
  for (double x : {0.0, 0.4, 1.3, 2.9, 5.5}) {
    std::vector<double> xv = {x};
    CHECK(evaluate(spec, theta, xv) == doctest::Approx(std::cos(x)).epsilon(1e-12));
  }
}

TEST_CASE("model output is bounded by 1 in magnitude") {
  Rng rng(99);
  ModelSpec spec{3, 2, AnsatzKind::C19, {{PauliAxis::X}}};
  auto count = static_cast<std::size_t>(param_count(spec));
  for (int rep = 0; rep < 1000; ++rep) {
    auto theta = random_params(count, rng);
    std::vector<double> x = {rng.uniform(0.0, 2.0 * pi::pi)};
    double f = evaluate(spec, theta, x);
    REQUIRE(std::abs(f) <= 1.0 + 1e-12);
  }
}

TEST_CASE("evaluate matches the dense matrix-product oracle on C15, n=3") {
  Rng rng(1234);
  ModelSpec spec{3, 1, AnsatzKind::C15, {{PauliAxis::Y}}};
  for (int rep = 0; rep < 20; ++rep) {
    auto theta = random_params(static_cast<std::size_t>(param_count(spec)), rng);
    std::vector<double> x = {rng.uniform(0.0, 2.0 * pi::pi)};
    auto gates = build_model_circuit(spec, theta, x);
    auto dense = oracles::run_circuit_dense(gates, 3);
    double expected = oracles::mean_z_dense(dense, 3);
    CHECK(evaluate(spec, theta, x) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("model is 2pi-periodic in x and 4pi-periodic in every parameter") {
  Rng rng(777);
  ModelSpec spec{3, 1, AnsatzKind::C16, {{PauliAxis::X}}};
  auto theta = random_params(static_cast<std::size_t>(param_count(spec)), rng);
  std::vector<double> x = {1.234};
  double base = evaluate(spec, theta, x);

  std::vector<double> x_shift = {x[0] + 2.0 * pi::pi};
  CHECK(evaluate(spec, theta, x_shift) == doctest::Approx(base).epsilon(1e-10));

  for (std::size_t k = 0; k < theta.size(); ++k) {
    auto shifted = theta;
    shifted[k] += 4.0 * pi::pi;
    REQUIRE(evaluate(spec, shifted, x) == doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("spec json naming round-trips through strings") {
  for (AnsatzKind kind : kAllAnsatzKinds) {
    CHECK(ansatz_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(ansatz_from_string("C99"), std::invalid_argument);
}
