#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "sha/pauli_hamiltonian.hpp"
#include "sha/rng.hpp"

namespace sha {
namespace {

using cd = std::complex<double>;

DiagonalHamiltonian single_edge() { return DiagonalHamiltonian(2, {{2.0, {}}, {2.0, {0, 1}}}); }

// Independent oracle: product of (1 - 2 b_q) over the support.
double term_value(const PauliTerm& t, Bitstring z) {
  double v = t.coefficient;
  for (auto q : t.qubits) v *= ((z >> q) & 1U) ? -1.0 : 1.0;
  return v;
}

DiagonalHamiltonian random_hamiltonian(std::size_t n, std::size_t n_terms, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<PauliTerm> terms;
  for (std::size_t t = 0; t < n_terms; ++t) {
    PauliTerm term;
    term.coefficient = rng.uniform() * 4.0 - 2.0;
    for (std::size_t q = 0; q < n; ++q) {
      if (rng.uniform() < 0.4) term.qubits.push_back(q);
    }
    terms.push_back(term);
  }
  return DiagonalHamiltonian(n, terms, rng.uniform() - 0.5);
}

TEST(EnergyOfBasisState, SingleEdgeColoring) {
  const auto h = single_edge();
  EXPECT_DOUBLE_EQ(energy_of_basis_state(h, "00"), 4.0);
  EXPECT_DOUBLE_EQ(energy_of_basis_state(h, "01"), 0.0);
  EXPECT_DOUBLE_EQ(energy_of_basis_state(h, "10"), 0.0);
  EXPECT_DOUBLE_EQ(energy_of_basis_state(h, "11"), 4.0);
}

TEST(EnergyOfBasisState, EmptyHamiltonianIsZero) {
  const DiagonalHamiltonian h(3, {});
  for (Bitstring z = 0; z < 8; ++z) EXPECT_EQ(energy_of_basis_state(h, z), 0.0);
  EXPECT_TRUE(h.is_constant());
}

TEST(EnergyOfBasisState, RejectsWrongWidth) {
  EXPECT_THROW(energy_of_basis_state(single_edge(), "000"), std::invalid_argument);
  EXPECT_THROW(energy_of_basis_state(single_edge(), Bitstring{4}), std::invalid_argument);
}

TEST(EnergyOfBasisState, MatchesTermwiseOracle) {
  const auto h = random_hamiltonian(6, 9, 17);
  for (Bitstring z = 0; z < 64; ++z) {
    double expected = h.constant_offset();
    for (const auto& t : h.terms()) expected += term_value(t, z);
    EXPECT_NEAR(energy_of_basis_state(h, z), expected, 1e-12);
    EXPECT_NEAR(h.spectrum()[z], expected, 1e-12);
  }
}

TEST(Construction, Validation) {
  EXPECT_THROW(DiagonalHamiltonian(2, {{1.0, {2}}}), std::invalid_argument);
  EXPECT_THROW(DiagonalHamiltonian(2, {{1.0, {0, 0}}}), std::invalid_argument);
  EXPECT_THROW(DiagonalHamiltonian(2, {{std::nan(""), {0}}}), std::invalid_argument);
  EXPECT_THROW(DiagonalHamiltonian(64, {}), std::invalid_argument);
  const DiagonalHamiltonian h(3, {{1.0, {2, 0}}});
  EXPECT_EQ(h.terms()[0].qubits, (std::vector<std::size_t>{0, 2}));
}

TEST(ExpectationExact, Examples) {
  const DiagonalHamiltonian z0(1, {{1.0, {0}}});
  const std::vector<cd> zero{1.0, 0.0};
  const std::vector<cd> plus{M_SQRT1_2, M_SQRT1_2};
  EXPECT_NEAR(expectation_exact(z0, zero), 1.0, 1e-12);
  EXPECT_NEAR(expectation_exact(z0, plus), 0.0, 1e-12);
  // (|00> + |01>)/sqrt2: "01" is qubit 1 set, index 2.
  std::vector<cd> mix(4, 0.0);
  mix[0] = M_SQRT1_2;
  mix[from_string("01")] = M_SQRT1_2;
  EXPECT_NEAR(expectation_exact(single_edge(), mix), 2.0, 1e-12);
}

TEST(ExpectationExact, RejectsBadStates) {
  const DiagonalHamiltonian z0(1, {{1.0, {0}}});
  EXPECT_THROW(expectation_exact(z0, std::vector<cd>{1.0, 0.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(expectation_exact(z0, std::vector<cd>{1.0, 1.0}), std::invalid_argument);
}

TEST(ExpectationExact, BasisStateEqualsEnergy) {
  const auto h = random_hamiltonian(5, 7, 3);
  for (Bitstring z = 0; z < 32; ++z) {
    std::vector<cd> psi(32, 0.0);
    psi[z] = 1.0;
    EXPECT_NEAR(expectation_exact(h, psi), energy_of_basis_state(h, z), 1e-12);
  }
}

TEST(ExpectationFromCounts, Examples) {
  const DiagonalHamiltonian z0(1, {{1.0, {0}}});
  EXPECT_DOUBLE_EQ(expectation_from_counts(z0, {{0, 200}}), 1.0);
  EXPECT_DOUBLE_EQ(expectation_from_counts(z0, {{0, 100}, {1, 100}}), 0.0);
  EXPECT_DOUBLE_EQ(expectation_from_counts(single_edge(), {{from_string("00"), 50}, {from_string("01"), 150}}), 1.0);
  EXPECT_THROW(expectation_from_counts(z0, Counts{}), std::invalid_argument);
}

TEST(ExpectationFromCounts, ConvergesToExact) {
  // Multinomial draw from a fixed distribution with an independent sampler.
  const auto h = random_hamiltonian(4, 6, 11);
  std::vector<double> probs(16);
  CounterRng rng(5);
  double total = 0.0;
  for (auto& p : probs) total += (p = rng.uniform() + 0.05);
  std::vector<cd> psi(16);
  for (std::size_t i = 0; i < 16; ++i) psi[i] = std::sqrt(probs[i] / total);
  for (auto& p : probs) p /= total;
  const std::uint64_t shots = 100000;
  Counts counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    double u = rng.uniform(), acc = 0.0;
    std::size_t i = 0;
    while (i + 1 < probs.size() && (acc += probs[i]) <= u) ++i;
    ++counts[i];
  }
  double bound = 0.0;
  for (const auto& t : h.terms()) bound += std::abs(t.coefficient);
  const double sigma = bound / std::sqrt(static_cast<double>(shots));
  EXPECT_NEAR(expectation_from_counts(h, counts), expectation_exact(h, psi), 3.0 * sigma);
}

TEST(PartialHamiltonian, Examples) {
  const DiagonalHamiltonian h(3, {{1.0, {0}}, {-2.0, {1, 2}}, {0.5, {0, 2}}}, 0.25);
  const std::vector<std::size_t> all{0, 1, 2};
  EXPECT_EQ(partial_hamiltonian(h, all), h);
  const auto empty = partial_hamiltonian(h, std::vector<std::size_t>{});
  EXPECT_EQ(empty.size(), 0u);
  for (Bitstring z = 0; z < 8; ++z) EXPECT_EQ(energy_of_basis_state(empty, z), h.constant_offset());
  const auto p02 = partial_hamiltonian(h, std::vector<std::size_t>{2, 0});
  ASSERT_EQ(p02.size(), 2u);
  for (Bitstring z = 0; z < 8; ++z) {
    EXPECT_NEAR(energy_of_basis_state(p02, z),
                h.constant_offset() + term_value(h.terms()[0], z) + term_value(h.terms()[2], z), 1e-12);
  }
  EXPECT_THROW(partial_hamiltonian(h, std::vector<std::size_t>{3}), std::out_of_range);
}

TEST(PartialHamiltonian, LinearityOverRandomSplits) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto h = random_hamiltonian(8, 12, 100 + seed);
    CounterRng rng(seed);
    std::vector<std::size_t> a, b;
    for (std::size_t t = 0; t < h.size(); ++t) (rng.uniform() < 0.5 ? a : b).push_back(t);
    const auto ha = partial_hamiltonian(h, a);
    const auto hb = partial_hamiltonian(h, b);
    for (Bitstring z = 0; z < 256; ++z) {
      // Both halves carry the offset, so it is counted once too often.
      EXPECT_NEAR(energy_of_basis_state(ha, z) + energy_of_basis_state(hb, z) - h.constant_offset(),
                  energy_of_basis_state(h, z), 1e-10);
    }
  }
}

TEST(Serialization, RoundTrip) {
  const auto h = random_hamiltonian(5, 6, 8);
  EXPECT_EQ(hamiltonian_from_json(to_json(h)), h);
  EXPECT_EQ(h.negated().negated(), h);
}

}  // namespace
}  // namespace sha
