#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "sha/bits.hpp"

namespace sha {

/// coefficient * prod_{q in qubits} Z_q. An empty support is an identity term.
struct PauliTerm {
  double coefficient = 0.0;
  std::vector<std::size_t> qubits;  // sorted, distinct

  Bitstring mask() const;

  /// +coefficient or -coefficient depending on the parity of the support bits.
  double evaluate(Bitstring bits) const;

  bool operator==(const PauliTerm&) const = default;
};

/// Sum of Z-type Pauli terms plus a constant. Immutable after construction;
/// term order is significant because partition schedules refer to terms by index.
class DiagonalHamiltonian {
 public:
  DiagonalHamiltonian() = default;

  /// Validates supports against n_qubits, sorts each support, rejects
  /// duplicate qubits and non-finite coefficients.
  DiagonalHamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms,
                      double constant_offset = 0.0);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  double constant_offset() const { return offset_; }

  /// True when every term is an identity term, i.e. the energy is constant.
  bool is_constant() const;

  /// Energies of all 2^n basis states, indexed by Bitstring.
  std::vector<double> spectrum() const;

  /// Same Hamiltonian with every coefficient and the offset negated.
  DiagonalHamiltonian negated() const;

  bool operator==(const DiagonalHamiltonian&) const = default;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  double offset_ = 0.0;
  std::vector<Bitstring> masks_;
  friend double energy_of_basis_state(const DiagonalHamiltonian&, Bitstring);
};

double energy_of_basis_state(const DiagonalHamiltonian& h, Bitstring bits);

/// String form, one character per qubit (qubit 0 first). Throws
/// std::invalid_argument unless bits.size() == h.n_qubits().
double energy_of_basis_state(const DiagonalHamiltonian& h, std::string_view bits);

/// <psi|H|psi>. The state must have 2^n amplitudes and unit norm within 1e-10.
double expectation_exact(const DiagonalHamiltonian& h,
                         std::span<const std::complex<double>> amplitudes);

/// Shot-frequency weighted mean energy. Throws on an empty histogram.
double expectation_from_counts(const DiagonalHamiltonian& h, const Counts& counts);

/// Same as above with a precomputed spectrum lookup.
double expectation_from_counts(std::span<const double> spectrum, const Counts& counts);

/// Restriction to the selected term indices (original order kept). The
/// constant offset carries over, so selecting every index reproduces h.
DiagonalHamiltonian partial_hamiltonian(const DiagonalHamiltonian& h,
                                        std::span<const std::size_t> indices);

nlohmann::json to_json(const DiagonalHamiltonian& h);
DiagonalHamiltonian hamiltonian_from_json(const nlohmann::json& doc);

}  // namespace sha
