#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "sha/simulator.hpp"
#include "sha/rng.hpp"

namespace sha {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Random circuit: every rotation owns its parameter, two-qubit gates on random pairs.
ParamCircuit random_circuit(std::size_t n, std::size_t n_gates, CounterRng& rng, bool unit_scales = true) {
  std::vector<Gate> gates;
  std::size_t n_params = 0;
  const GateKind kinds[] = {GateKind::H, GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CNOT, GateKind::CZ};
  for (std::size_t g = 0; g < n_gates; ++g) {
    GateKind k = kinds[rng.below(n > 1 ? 6 : 4)];
    Gate gate{k, rng.below(n)};
    if (k == GateKind::CNOT || k == GateKind::CZ) {
      std::size_t c = rng.below(n - 1);
      if (c >= gate.target) ++c;
      gate.control = c;
    } else if (is_rotation(k)) {
      gate.param_index = n_params++;
      if (!unit_scales) gate.scale = rng.uniform() * 2.0 - 1.0;
    }
    gates.push_back(gate);
  }
  return ParamCircuit(n, gates, n_params, {0});
}

std::vector<double> random_params(std::size_t k, CounterRng& rng) {
  std::vector<double> p(k);
  for (auto& x : p) x = (rng.uniform() * 2.0 - 1.0) * kPi;
  return p;
}

Statevector random_state(std::size_t n, CounterRng& rng) {
  std::vector<cd> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& x : a) {
    x = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return Statevector(a);
}

TEST(Gates, Hadamard) {
  Statevector sv(1);
  sv.apply({GateKind::H, 0});
  EXPECT_NEAR(sv[0].real(), M_SQRT1_2, 1e-12);
  EXPECT_NEAR(sv[1].real(), M_SQRT1_2, 1e-12);
}

TEST(Gates, RyPiFlips) {
  Statevector sv(1);
  sv.apply({GateKind::RY, 0, std::nullopt, 0}, kPi);
  EXPECT_NEAR(std::abs(sv[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(sv[1]), 1.0, 1e-12);
}

TEST(Gates, BellState) {
  const ParamCircuit c(2, {{GateKind::H, 0}, {GateKind::CNOT, 1, 0}}, 0, {0});
  const auto sv = run_circuit(c, {});
  EXPECT_NEAR(sv[0].real(), M_SQRT1_2, 1e-12);
  EXPECT_NEAR(sv[3].real(), M_SQRT1_2, 1e-12);
  EXPECT_NEAR(std::abs(sv[1]) + std::abs(sv[2]), 0.0, 1e-12);
}

TEST(Gates, QubitZeroIsLeastSignificant) {
  Statevector sv(3);
  sv.apply({GateKind::RX, 0, std::nullopt, 0}, kPi);
  EXPECT_NEAR(std::abs(sv[1]), 1.0, 1e-12);
}

TEST(Gates, RotationMatrices) {
  const double t = 0.7;
  Statevector sv(1);
  sv.apply({GateKind::RX, 0, std::nullopt, 0}, t);
  EXPECT_NEAR(std::abs(sv[0] - cd(std::cos(t / 2), 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(sv[1] - cd(0, -std::sin(t / 2))), 0.0, 1e-12);
  Statevector p = Statevector::uniform_superposition(1);
  p.apply({GateKind::RZ, 0, std::nullopt, 0}, t);
  EXPECT_NEAR(std::arg(p[1] / p[0]), t, 1e-12);
}

TEST(Statevector, Validation) {
  EXPECT_THROW(Statevector(25), std::length_error);
  EXPECT_THROW(Statevector(std::vector<cd>{1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(Statevector(std::vector<cd>{1.0, 1.0}), std::invalid_argument);
}

TEST(Statevector, NormPreservedOnRandomCircuits) {
  CounterRng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(10);
    const auto c = random_circuit(n, 1 + rng.below(50), rng, false);
    const auto sv = run_circuit(c, random_params(c.n_params(), rng));
    EXPECT_NEAR(sv.norm_squared(), 1.0, 1e-9);
  }
}

TEST(Statevector, GateThenInverse) {
  CounterRng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    const auto input = random_state(n, rng);
    for (GateKind k : {GateKind::H, GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CNOT, GateKind::CZ}) {
      Gate g{k, rng.below(n)};
      if (k == GateKind::CNOT || k == GateKind::CZ) g.control = (g.target + 1) % n;
      if (is_rotation(k)) g.param_index = 0;
      const double angle = rng.uniform() * 6.0 - 3.0;
      auto sv = input;
      sv.apply(g, angle);
      sv.apply(g, is_rotation(k) ? -angle : 0.0);
      for (std::size_t i = 0; i < sv.dimension(); ++i) EXPECT_NEAR(std::abs(sv[i] - input[i]), 0.0, 1e-10);
    }
  }
}

TEST(ParamCircuit, Validation) {
  EXPECT_THROW(ParamCircuit(1, {{GateKind::RX, 0}}, 1, {0}), std::invalid_argument);
  EXPECT_THROW(ParamCircuit(2, {{GateKind::CNOT, 1}}, 0, {0}), std::invalid_argument);
  EXPECT_THROW(ParamCircuit(2, {{GateKind::CNOT, 1, 1}}, 0, {0}), std::invalid_argument);
  EXPECT_THROW(ParamCircuit(1, {{GateKind::RX, 0, std::nullopt, 0}}, 2, {0}), std::invalid_argument);
  EXPECT_THROW(ParamCircuit(1, {{GateKind::H, 0}}, 0, {1}), std::invalid_argument);
  const ParamCircuit ok(1, {{GateKind::RX, 0, std::nullopt, 0}}, 1, {0});
  EXPECT_THROW(run_circuit(ok, std::vector<double>{}), std::invalid_argument);
}

TEST(Sampling, PointMass) {
  const Counts c = sample(Statevector(3), 200, 1);
  EXPECT_EQ(c, (Counts{{0, 200}}));
}

TEST(Sampling, PlusStateFrequency) {
  const auto c = sample(Statevector::uniform_superposition(1), 100000, 9);
  const double f = static_cast<double>(c.at(0)) / 1e5;
  EXPECT_GE(f, 0.49);
  EXPECT_LE(f, 0.51);
}

TEST(Sampling, Deterministic) {
  CounterRng rng(4);
  const auto sv = random_state(4, rng);
  EXPECT_EQ(sample(sv, 500, 12), sample(sv, 500, 12));
  EXPECT_NE(sample(sv, 500, 12), sample(sv, 500, 13));
}

TEST(Sampling, ChiSquareGoodnessOfFit) {
  CounterRng rng(31);
  const auto sv = random_state(3, rng);
  const auto probs = sv.probabilities();
  const std::uint64_t shots = 100000;
  const auto counts = sample(sv, shots, 5);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double expected = probs[i] * static_cast<double>(shots);
    const double observed = counts.contains(i) ? static_cast<double>(counts.at(i)) : 0.0;
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  // 7 degrees of freedom, alpha = 0.001.
  EXPECT_LT(chi2, 24.322);
}

TEST(ParamShift, SingleQubitExamples) {
  const ParamCircuit c(1, {{GateKind::RY, 0, std::nullopt, 0}}, 1, {0});
  const DiagonalHamiltonian z0(1, {{1.0, {0}}});
  EXPECT_NEAR(param_shift_gradient(c, z0, std::vector<double>{0.0}, 0), 0.0, 1e-12);
  EXPECT_NEAR(param_shift_gradient(c, z0, std::vector<double>{kPi / 2}, 0), -1.0, 1e-12);
}

TEST(ParamShift, MatchesFiniteDifference) {
  CounterRng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(5);
    const auto c = random_circuit(n, 4 + rng.below(20), rng);
    if (c.n_params() == 0) continue;
    std::vector<PauliTerm> terms;
    for (std::size_t t = 0; t < 4; ++t) {
      PauliTerm term{rng.uniform() * 2.0 - 1.0, {}};
      for (std::size_t q = 0; q < n; ++q) {
        if (rng.uniform() < 0.5) term.qubits.push_back(q);
      }
      terms.push_back(term);
    }
    const DiagonalHamiltonian h(n, terms);
    auto params = random_params(c.n_params(), rng);
    const std::size_t i = rng.below(c.n_params());
    const double step = 1e-5;
    auto plus = params, minus = params;
    plus[i] += step;
    minus[i] -= step;
    const double fd = (expectation_exact(h, run_circuit(c, plus).amplitudes()) -
                       expectation_exact(h, run_circuit(c, minus).amplitudes())) / (2 * step);
    EXPECT_NEAR(param_shift_gradient(c, h, params, i), fd, 1e-4);
  }
}

TEST(ParamShift, RejectsSharedOrScaledParameters) {
  const DiagonalHamiltonian z0(1, {{1.0, {0}}});
  const ParamCircuit shared(1, {{GateKind::RY, 0, std::nullopt, 0}, {GateKind::RX, 0, std::nullopt, 0}}, 1, {0});
  EXPECT_THROW(param_shift_gradient(shared, z0, std::vector<double>{0.1}, 0), std::invalid_argument);
  const ParamCircuit scaled(1, {{GateKind::RY, 0, std::nullopt, 0, 2.0}}, 1, {0});
  EXPECT_THROW(param_shift_gradient(scaled, z0, std::vector<double>{0.1}, 0), std::invalid_argument);
}

}  // namespace
}  // namespace sha
