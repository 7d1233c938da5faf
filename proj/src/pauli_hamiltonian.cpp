#include "sha/pauli_hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sha {

Bitstring PauliTerm::mask() const {
  Bitstring m = 0;
  for (auto q : qubits) m |= Bitstring{1} << q;
  return m;
}

double PauliTerm::evaluate(Bitstring bits) const {
  return (std::popcount(bits & mask()) & 1) ? -coefficient : coefficient;
}

DiagonalHamiltonian::DiagonalHamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms,
                                         double constant_offset)
    : n_qubits_(n_qubits), terms_(std::move(terms)), offset_(constant_offset) {
  if (n_qubits_ > 63) throw std::invalid_argument("DiagonalHamiltonian: at most 63 qubits");
  if (!std::isfinite(offset_)) throw std::invalid_argument("DiagonalHamiltonian: non-finite offset");
  masks_.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!std::isfinite(t.coefficient)) {
      throw std::invalid_argument("DiagonalHamiltonian: non-finite term coefficient");
    }
    std::sort(t.qubits.begin(), t.qubits.end());
    if (std::adjacent_find(t.qubits.begin(), t.qubits.end()) != t.qubits.end()) {
      throw std::invalid_argument("DiagonalHamiltonian: repeated qubit in term support");
    }
    if (!t.qubits.empty() && t.qubits.back() >= n_qubits_) {
      throw std::invalid_argument("DiagonalHamiltonian: term support qubit " +
                                  std::to_string(t.qubits.back()) + " >= n_qubits " +
                                  std::to_string(n_qubits_));
    }
    masks_.push_back(t.mask());
  }
}

bool DiagonalHamiltonian::is_constant() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PauliTerm& t) { return t.qubits.empty() || t.coefficient == 0.0; });
}

std::vector<double> DiagonalHamiltonian::spectrum() const {
  const std::size_t dim = std::size_t{1} << n_qubits_;
  std::vector<double> out(dim, offset_);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double c = terms_[i].coefficient;
    const Bitstring m = masks_[i];
    for (std::size_t z = 0; z < dim; ++z) {
      out[z] += (std::popcount(z & m) & 1) ? -c : c;
    }
  }
  return out;
}

DiagonalHamiltonian DiagonalHamiltonian::negated() const {
  auto terms = terms_;
  for (auto& t : terms) t.coefficient = -t.coefficient;
  return DiagonalHamiltonian(n_qubits_, std::move(terms), -offset_);
}

double energy_of_basis_state(const DiagonalHamiltonian& h, Bitstring bits) {
  if (h.n_qubits_ < 64 && (bits >> h.n_qubits_) != 0) {
    throw std::invalid_argument("energy_of_basis_state: bitstring wider than n_qubits");
  }
  double e = h.offset_;
  for (std::size_t i = 0; i < h.terms_.size(); ++i) {
    const double c = h.terms_[i].coefficient;
    e += (std::popcount(bits & h.masks_[i]) & 1) ? -c : c;
  }
  return e;
}

double energy_of_basis_state(const DiagonalHamiltonian& h, std::string_view bits) {
  if (bits.size() != h.n_qubits()) {
    throw std::invalid_argument("energy_of_basis_state: bitstring length " +
                                std::to_string(bits.size()) + " != n_qubits " +
                                std::to_string(h.n_qubits()));
  }
  return energy_of_basis_state(h, from_string(bits));
}

double expectation_exact(const DiagonalHamiltonian& h,
                         std::span<const std::complex<double>> amplitudes) {
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  if (amplitudes.size() != dim) {
    throw std::invalid_argument("expectation_exact: state dimension " +
                                std::to_string(amplitudes.size()) + " != 2^" +
                                std::to_string(h.n_qubits()));
  }
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("expectation_exact: state is not normalized");
  }
  const auto spec = h.spectrum();
  double e = 0.0;
  for (std::size_t z = 0; z < dim; ++z) e += std::norm(amplitudes[z]) * spec[z];
  return e;
}

double expectation_from_counts(const DiagonalHamiltonian& h, const Counts& counts) {
  const auto total = total_shots(counts);
  if (total == 0) throw std::invalid_argument("expectation_from_counts: empty counts");
  double acc = 0.0;
  for (const auto& [bits, c] : counts) acc += static_cast<double>(c) * energy_of_basis_state(h, bits);
  return acc / static_cast<double>(total);
}

double expectation_from_counts(std::span<const double> spectrum, const Counts& counts) {
  const auto total = total_shots(counts);
  if (total == 0) throw std::invalid_argument("expectation_from_counts: empty counts");
  double acc = 0.0;
  for (const auto& [bits, c] : counts) {
    if (bits >= spectrum.size()) throw std::invalid_argument("expectation_from_counts: bitstring out of range");
    acc += static_cast<double>(c) * spectrum[bits];
  }
  return acc / static_cast<double>(total);
}

DiagonalHamiltonian partial_hamiltonian(const DiagonalHamiltonian& h,
                                        std::span<const std::size_t> indices) {
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!sorted.empty() && sorted.back() >= h.size()) {
    throw std::out_of_range("partial_hamiltonian: term index " + std::to_string(sorted.back()) +
                            " out of range (" + std::to_string(h.size()) + " terms)");
  }
  std::vector<PauliTerm> terms;
  terms.reserve(sorted.size());
  for (auto i : sorted) terms.push_back(h.terms()[i]);
  return DiagonalHamiltonian(h.n_qubits(), std::move(terms), h.constant_offset());
}

nlohmann::json to_json(const DiagonalHamiltonian& h) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : h.terms()) terms.push_back({{"coeff", t.coefficient}, {"qubits", t.qubits}});
  return {{"n_qubits", h.n_qubits()}, {"offset", h.constant_offset()}, {"terms", terms}};
}

DiagonalHamiltonian hamiltonian_from_json(const nlohmann::json& doc) {
  std::vector<PauliTerm> terms;
  for (const auto& t : doc.at("terms")) {
    terms.push_back({t.at("coeff").get<double>(), t.at("qubits").get<std::vector<std::size_t>>()});
  }
  return DiagonalHamiltonian(doc.at("n_qubits").get<std::size_t>(), std::move(terms),
                             doc.value("offset", 0.0));
}

}  // namespace sha
