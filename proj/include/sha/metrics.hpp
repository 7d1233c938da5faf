#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "sha/bits.hpp"
#include "sha/instances.hpp"

namespace sha {

/// Per-iteration view of the sampled output distribution.
struct MetricSnapshot {
  std::size_t iteration = 0;
  double loss = 0.0;
  double overall_accuracy = 0.0;  // in [0, 1]
  Bitstring most_likely = 0;
  bool most_likely_valid = false;
  std::int64_t best_cut_found = -1;  // maxcut only, -1 otherwise

  bool operator==(const MetricSnapshot&) const = default;
};

/// Valid proper coloring (coloring) or maximum cut (maxcut).
bool is_valid_solution(Bitstring bits, const OracleReport& oracle, ProblemKind kind);

/// Fraction of shots on valid/optimal bitstrings. Throws on empty counts.
double overall_accuracy(const Counts& counts, const OracleReport& oracle, ProblemKind kind);

/// Exact probability mass on valid/optimal bitstrings.
double exact_accuracy(std::span<const double> probabilities, const OracleReport& oracle, ProblemKind kind);

/// Modal bitstring; ties go to the lexicographically smallest string form
/// (qubit 0 first). Throws on empty counts.
Bitstring most_likely_bitstring(const Counts& counts, std::size_t n_qubits);

/// Loss plus, when an oracle is given, accuracy and best sampled cut.
MetricSnapshot make_snapshot(std::size_t iteration, double loss, const Counts& counts,
                             const ProblemInstance& instance, const OracleReport* oracle);

}  // namespace sha
