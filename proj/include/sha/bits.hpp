#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sha {

/// Computational basis state. Qubit q is bit q of the integer (qubit 0 is the
/// least significant bit), matching the amplitude order of a Statevector.
using Bitstring = std::uint64_t;

/// Measurement histogram, ordered by basis index.
using Counts = std::map<Bitstring, std::uint64_t>;

/// Renders a basis state with one character per qubit, qubit 0 first.
inline std::string to_string(Bitstring bits, std::size_t n_qubits) {
  std::string s(n_qubits, '0');
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if ((bits >> q) & 1U) s[q] = '1';
  }
  return s;
}

/// Inverse of to_string.
inline Bitstring from_string(std::string_view s) {
  if (s.size() > 64) throw std::invalid_argument("bitstring longer than 64 qubits");
  Bitstring bits = 0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    if (s[q] == '1') {
      bits |= Bitstring{1} << q;
    } else if (s[q] != '0') {
      throw std::invalid_argument("bitstring contains a character other than 0/1");
    }
  }
  return bits;
}

inline std::uint64_t total_shots(const Counts& counts) {
  std::uint64_t total = 0;
  for (const auto& [_, c] : counts) total += c;
  return total;
}

}  // namespace sha
