#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sha/instances.hpp"

namespace sha {

/// Ordered partition P_1..P_M of Hamiltonian term indices and the cumulative
/// stage sets S_k = P_1 u ... u P_k (each sorted, deduplicated).
class PartitionSchedule {
 public:
  PartitionSchedule() = default;
  /// Throws unless the parts cover exactly {0, ..., n_terms-1}. Empty parts
  /// are dropped.
  PartitionSchedule(std::size_t n_terms, std::vector<std::vector<std::size_t>> parts);

  std::size_t n_terms() const { return n_terms_; }
  std::size_t size() const { return parts_.size(); }
  const std::vector<std::vector<std::size_t>>& partitions() const { return parts_; }
  const std::vector<std::vector<std::size_t>>& cumulative() const { return cumulative_; }

  bool operator==(const PartitionSchedule&) const = default;

 private:
  std::size_t n_terms_ = 0;
  std::vector<std::vector<std::size_t>> parts_;
  std::vector<std::vector<std::size_t>> cumulative_;
};

/// Contiguous blocks, the first n % m of size ceil(n/m), the rest floor(n/m).
PartitionSchedule sequential_partition(std::size_t n_terms, std::size_t m);

/// Seeded uniform permutation of the indices, then blocks as in sequential_partition.
PartitionSchedule random_partition(std::size_t n_terms, std::size_t m, std::uint64_t seed);

/// k-means (k = m) over adjacency-matrix rows: k-means++ seeding, 10
/// restarts, at most 300 Lloyd iterations, lowest inertia kept. A term joins
/// the cluster of the lower-indexed endpoint of its edge. Clusters are
/// numbered by first appearance in node order; empty partitions are dropped.
PartitionSchedule kmeans_partition(const ProblemInstance& instance, std::size_t m, std::uint64_t seed);

/// Cluster label per node, as used by kmeans_partition.
std::vector<std::size_t> kmeans_node_labels(const Graph& g, std::size_t k, std::uint64_t seed);

/// Nodes in BFS order from node 0 (unreached nodes appended in index order),
/// cut into j balanced contiguous groups; P_g holds every term whose edge
/// touches group g, so shared edges appear in two partitions.
PartitionSchedule nodewise_partition(const ProblemInstance& instance, std::size_t j);

/// Node groups used by nodewise_partition.
std::vector<std::vector<std::size_t>> bfs_node_groups(const Graph& g, std::size_t j);

enum class StrategyKind { random, sequential, cluster, nodewise };

/// Parsed "rd:<m>", "sq:<m>", "cl:<m>" or "nw:<j>".
struct StrategySpec {
  StrategyKind kind = StrategyKind::nodewise;
  std::size_t count = 2;

  std::string to_string() const;
  bool operator==(const StrategySpec&) const = default;
};

StrategySpec parse_strategy(std::string_view text);

/// Builds the schedule for a strategy; `seed` feeds the random and k-means strategies.
PartitionSchedule make_schedule(const StrategySpec& spec, const ProblemInstance& instance,
                                std::uint64_t seed);

}  // namespace sha
