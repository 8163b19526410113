#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfp/rng.hpp"
#include "qfp/spectral.hpp"
#include "support/oracles.hpp"

using namespace qfp;
namespace pi = std::numbers;

TEST_CASE("default grid is the smallest odd alias-free size") {
  InputGrid g = make_input_grid(6, 1);
  CHECK(g.points_per_axis == 13);
  CHECK(g.size() == 13);
  CHECK(g.point(0)[0] == 0.0);
  CHECK(g.point(1)[0] == doctest::Approx(2.0 * pi::pi / 13.0));

  InputGrid g2 = make_input_grid(1, 2);
  CHECK(g2.size() == 9);

  CHECK_THROWS_AS(make_input_grid(6, 1, 12), std::invalid_argument);
  CHECK_THROWS_AS(make_input_grid(6, 1, 14), std::invalid_argument);  // even
  CHECK_NOTHROW(make_input_grid(6, 1, 15));
}

TEST_CASE("dft of a constant puts everything in the zero mode") {
  InputGrid g = make_input_grid(2, 1);
  std::vector<double> values(g.size(), 1.0);
  CoefficientTensor t = dft(g, values);
  std::vector<int> zero = {0};
  CHECK(t.at(zero).real() == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t.freq_at(f)[0] != 0) CHECK(std::abs(t.values[f]) < 1e-12);
  }
}

TEST_CASE("dft of cos(x) yields half weights at +-1") {
  InputGrid g = make_input_grid(6, 1);  // K = 13
  std::vector<double> values(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) values[p] = std::cos(g.point(p)[0]);
  CoefficientTensor t = dft(g, values);
  std::vector<int> plus = {1}, minus = {-1};
  CHECK(std::abs(t.at(plus) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(t.at(minus) - cplx(0.5, 0.0)) < 1e-12);
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (std::abs(t.freq_at(f)[0]) != 1) CHECK(std::abs(t.values[f]) < 1e-12);
  }
}

TEST_CASE("dft matches the literal nested-sum oracle on random input") {
  Rng rng(8);
  for (int dims : {1, 2}) {
    InputGrid g = make_input_grid(3, dims);
    std::vector<double> values(g.size());
    for (double& v : values) v = rng.uniform(-1.0, 1.0);
    CoefficientTensor fast = dft(g, values);
    CoefficientTensor slow = oracles::naive_dft(g, values);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t f = 0; f < fast.size(); ++f) {
      REQUIRE(std::abs(fast.values[f] - slow.values[f]) < 1e-10);
    }
  }
}

TEST_CASE("dft then reconstruct is the identity on grid values") {
  Rng rng(4242);
  for (int dims : {1, 2}) {
    for (int k : {3, 7, 13, 31}) {
      if (dims == 2 && k > 13) continue;
      InputGrid g = make_input_grid((k - 1) / 2, dims, k);
      std::vector<double> values(g.size());
      for (double& v : values) v = rng.uniform(-2.0, 2.0);
      std::vector<cplx> back = reconstruct(dft(g, values), g);
      for (std::size_t p = 0; p < g.size(); ++p) {
        REQUIRE(std::abs(back[p].real() - values[p]) < 1e-10);
        REQUIRE(std::abs(back[p].imag()) < 1e-10);
      }
    }
  }
}

TEST_CASE("model coefficients of the 1-qubit cosine model") {
  ModelSpec spec{1, 1, AnsatzKind::YZY, {{PauliAxis::Y}}};
  std::vector<double> theta(6, 0.0);
  CoefficientTensor t = model_coefficients(spec, theta);
  std::vector<int> zero = {0}, plus = {1}, minus = {-1};
  CHECK(std::abs(t.at(zero)) < 1e-12);
  CHECK(std::abs(t.at(plus) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(t.at(minus) - cplx(0.5, 0.0)) < 1e-12);
}

TEST_CASE("hermitian symmetry and parseval bound for model tensors") {
  Rng rng(606);
  for (AnsatzKind kind : kAllAnsatzKinds) {
    for (int n : {2, 4}) {
      ModelSpec spec{n, 1, kind, {{PauliAxis::Y}}};
      for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> theta(static_cast<std::size_t>(param_count(spec)));
        for (double& v : theta) v = rng.uniform(0.0, 2.0 * pi::pi);
        CoefficientTensor t = model_coefficients(spec, theta);
        double power = 0.0;
        for (std::size_t f = 0; f < t.size(); ++f) {
          std::vector<int> freq = t.freq_at(f);
          std::vector<int> mirrored = {-freq[0]};
          REQUIRE(std::abs(t.at(mirrored) - std::conj(t.values[f])) < 1e-9);
          REQUIRE(std::abs(t.values[f]) <= 1.0 + 1e-12);
          power += std::norm(t.values[f]);
        }
        REQUIRE(power <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("oversampling reveals no leakage beyond the band limit") {
  Rng rng(17);
  ModelSpec spec{2, 1, AnsatzKind::HEA, {{PauliAxis::Y}}};
  std::vector<double> theta(static_cast<std::size_t>(param_count(spec)));
  for (double& v : theta) v = rng.uniform(0.0, 2.0 * pi::pi);
  int nl = spec.max_frequency();
  CoefficientTensor t = model_coefficients(spec, theta, 4 * nl + 1);
  CHECK(t.max_freq == 2 * nl);
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (std::abs(t.freq_at(f)[0]) > nl) {
      REQUIRE(std::abs(t.values[f]) < 1e-9);
    }
  }
}

TEST_CASE("degeneracy closed form, brute force, and binomial all agree") {
  CHECK(degeneracy(1, 1, 0) == 2);
  CHECK(degeneracy(1, 1, 1) == 1);
  CHECK(degeneracy(6, 1, 0) == 924);
  CHECK_THROWS_AS(degeneracy(2, 1, 3), std::invalid_argument);

  for (int n = 1; n <= 6; ++n) {
    for (int w = -n; w <= n; ++w) {
      long long expected = oracles::degeneracy_bruteforce(n, w);
      CHECK(degeneracy(n, 1, w) == expected);
      CHECK(degeneracy(n, 1, w) == oracles::binomial_pascal(2 * n, n - std::abs(w)));
    }
  }
  // multi-layer band: nL spins
  for (int w = 0; w <= 6; ++w) {
    CHECK(degeneracy(3, 2, w) == oracles::degeneracy_bruteforce(6, w));
  }
}

TEST_CASE("half-spectrum contains one of each +-pair") {
  HalfSpectrumIndex h1 = HalfSpectrumIndex::make(1, 6);
  CHECK(h1.size() == 7);
  CHECK(h1.freqs.front() == std::vector<int>{0});
  CHECK(h1.freqs.back() == std::vector<int>{6});

  HalfSpectrumIndex h2 = HalfSpectrumIndex::make(2, 6);
  CHECK(h2.size() == (13 * 13 + 1) / 2);
  for (const auto& f : h2.freqs) {
    if (f[0] == 0 && f[1] == 0) continue;
    std::vector<int> neg = {-f[0], -f[1]};
    bool found = false;
    for (const auto& g : h2.freqs) {
      if (g == neg) found = true;
    }
    CHECK_FALSE(found);
  }
  CHECK(h2.label(0) == "-6,1");
}
