#include "sha/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace sha {

bool is_valid_solution(Bitstring bits, const OracleReport& oracle, ProblemKind kind) {
  if (kind == ProblemKind::coloring && oracle.valid_count == 0) return false;
  return oracle.is_solution(bits);
}

double overall_accuracy(const Counts& counts, const OracleReport& oracle, ProblemKind kind) {
  const auto total = total_shots(counts);
  if (total == 0) throw std::invalid_argument("overall_accuracy: empty counts");
  std::uint64_t hits = 0;
  for (const auto& [bits, c] : counts) {
    if (is_valid_solution(bits, oracle, kind)) hits += c;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

double exact_accuracy(std::span<const double> probabilities, const OracleReport& oracle, ProblemKind kind) {
  if (kind == ProblemKind::coloring && oracle.valid_count == 0) return 0.0;
  double mass = 0.0;
  for (auto z : oracle.optimizer_args) {
    if (z < probabilities.size()) mass += probabilities[z];
  }
  return std::clamp(mass, 0.0, 1.0);
}

Bitstring most_likely_bitstring(const Counts& counts, std::size_t n_qubits) {
  if (counts.empty()) throw std::invalid_argument("most_likely_bitstring: empty counts");
  auto best = counts.begin();
  for (auto it = std::next(counts.begin()); it != counts.end(); ++it) {
    if (it->second > best->second ||
        (it->second == best->second && to_string(it->first, n_qubits) < to_string(best->first, n_qubits))) {
      best = it;
    }
  }
  return best->first;
}

MetricSnapshot make_snapshot(std::size_t iteration, double loss, const Counts& counts,
                             const ProblemInstance& instance, const OracleReport* oracle) {
  MetricSnapshot s;
  s.iteration = iteration;
  s.loss = loss;
  s.most_likely = most_likely_bitstring(counts, instance.n_qubits());
  if (oracle) {
    s.overall_accuracy = overall_accuracy(counts, *oracle, instance.kind);
    s.most_likely_valid = is_valid_solution(s.most_likely, *oracle, instance.kind);
  }
  if (instance.kind == ProblemKind::maxcut) {
    for (const auto& [bits, _] : counts) {
      s.best_cut_found = std::max(s.best_cut_found, static_cast<std::int64_t>(cut_size(instance.graph, bits)));
    }
  }
  return s;
}

}  // namespace sha
