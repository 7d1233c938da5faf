#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sha/bits.hpp"
#include "sha/pauli_hamiltonian.hpp"

namespace sha {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph. Edges are stored as (u, v) with u < v, sorted
/// lexicographically and free of duplicates and self-loops.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n_nodes, std::vector<Edge> edges);

  std::size_t n_nodes() const { return n_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<std::vector<std::size_t>> adjacency_lists() const;
  bool is_connected() const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_nodes_ = 0;
  std::vector<Edge> edges_;
};

/// G(n, p): each unordered pair (u < v), visited in lexicographic order, is
/// kept iff CounterRng(seed).uniform() < p for its draw.
Graph gnp_random_graph(std::size_t n, double p, std::uint64_t seed);

/// Fixture text format: first line n_nodes, then one "u v" line per edge.
Graph read_graph(const std::filesystem::path& path);
void write_graph(const Graph& g, const std::filesystem::path& path);

/// Number of edges whose endpoints fall on different sides (bit of node v = bit v).
std::size_t cut_size(const Graph& g, Bitstring bits);

enum class ProblemKind { coloring, maxcut };

std::string_view to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(std::string_view s);

struct ProblemInstance {
  std::string name;
  Graph graph;
  ProblemKind kind = ProblemKind::coloring;
  std::size_t colors = 0;          // coloring only, power of two
  std::size_t bits_per_node = 1;   // m = log2(colors) for coloring, 1 for maxcut
  /// Problem Hamiltonian: penalty 4^m per monochromatic edge (coloring) or
  /// 2 * cut size (maxcut).
  DiagonalHamiltonian hamiltonian;
  /// Index into graph.edges() of the edge that produced each term.
  std::vector<std::size_t> term_edge;
  /// qubit_layout[v] = qubits encoding node v.
  std::vector<std::vector<std::size_t>> qubit_layout;

  std::size_t n_qubits() const { return hamiltonian.n_qubits(); }

  /// Hamiltonian minimized during training: the penalty for coloring, the
  /// negated cut Hamiltonian for maxcut. Term order and ownership match
  /// `hamiltonian`.
  DiagonalHamiltonian objective() const;
};

/// Binary graph-coloring encoding with m = log2(k) qubits per node. Each edge
/// expands to 2^m (1 + Z Z)-products, i.e. k terms of coefficient 2^m
/// including one identity term. Throws unless k is a power of two >= 2.
ProblemInstance coloring_hamiltonian(const Graph& g, std::size_t k);

/// sum_{(v,w)} (1 - Z_v Z_w): an identity term and a ZZ term per edge.
ProblemInstance maxcut_hamiltonian(const Graph& g);

/// Colors from a bitstring: node v's color is the integer whose binary digits
/// are qubits v*m .. v*m+m-1, most significant first. Throws unless
/// bits.size() is divisible by m.
std::vector<std::size_t> decode_coloring(std::string_view bits, std::size_t m);
std::vector<std::size_t> decode_coloring(Bitstring bits, std::size_t n_nodes, std::size_t m);
Bitstring encode_coloring(std::span<const std::size_t> colors, std::size_t m);

bool is_proper_coloring(const Graph& g, std::span<const std::size_t> colors);

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kMaxOracleQubits = 24;

struct OracleReport {
  std::uint64_t valid_count = 0;  // s
  double valid_ratio = 0.0;       // s / 2^n
  /// 0 for a satisfiable coloring (min energy otherwise), max 2*cut for maxcut.
  double optimum_energy = 0.0;
  /// Sorted: zero-energy states (coloring) or maximum-cut states (maxcut).
  std::vector<Bitstring> optimizer_args;
  std::size_t optimum_cut = 0;  // maxcut only

  bool is_solution(Bitstring bits) const;
};

/// Exhaustive enumeration; throws CapacityError above kMaxOracleQubits.
OracleReport brute_force_oracle(const ProblemInstance& instance);

nlohmann::json to_json(const OracleReport& report, const ProblemInstance& instance);

}  // namespace sha
