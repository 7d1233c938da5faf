#include "sha/instances.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <queue>
#include <sstream>

#include "sha/rng.hpp"

namespace sha {

Graph::Graph(std::size_t n_nodes, std::vector<Edge> edges) : n_nodes_(n_nodes) {
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("Graph: self-loop on node " + std::to_string(u));
    if (u >= n_nodes || v >= n_nodes) {
      throw std::invalid_argument("Graph: edge endpoint out of range");
    }
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("Graph: duplicate edge");
  }
}

std::vector<std::vector<std::size_t>> Graph::adjacency_lists() const {
  std::vector<std::vector<std::size_t>> adj(n_nodes_);
  for (auto [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

bool Graph::is_connected() const {
  if (n_nodes_ <= 1) return true;
  const auto adj = adjacency_lists();
  std::vector<bool> seen(n_nodes_, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    for (auto v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n_nodes_;
}

Graph gnp_random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gnp_random_graph: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp_random_graph: p outside [0, 1]");
  CounterRng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_graph: cannot open " + path.string());
  std::size_t n = 0;
  if (!(in >> n)) throw std::runtime_error("read_graph: missing node count in " + path.string());
  std::vector<Edge> edges;
  std::size_t u = 0, v = 0;
  while (in >> u >> v) edges.emplace_back(u, v);
  if (!in.eof()) throw std::runtime_error("read_graph: malformed edge line in " + path.string());
  return Graph(n, std::move(edges));
}

void write_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_graph: cannot open " + path.string());
  out << g.n_nodes() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::size_t cut_size(const Graph& g, Bitstring bits) {
  std::size_t cut = 0;
  for (auto [u, v] : g.edges()) cut += ((bits >> u) ^ (bits >> v)) & 1U;
  return cut;
}

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::coloring ? "coloring" : "maxcut";
}

ProblemKind problem_kind_from_string(std::string_view s) {
  if (s == "coloring") return ProblemKind::coloring;
  if (s == "maxcut") return ProblemKind::maxcut;
  throw std::invalid_argument("unknown problem kind '" + std::string(s) + "'");
}

DiagonalHamiltonian ProblemInstance::objective() const {
  return kind == ProblemKind::maxcut ? hamiltonian.negated() : hamiltonian;
}

ProblemInstance coloring_hamiltonian(const Graph& g, std::size_t k) {
  if (k < 2 || !std::has_single_bit(k)) {
    throw std::invalid_argument("coloring_hamiltonian: color count " + std::to_string(k) +
                                " is not a power of two >= 2");
  }
  const std::size_t m = static_cast<std::size_t>(std::countr_zero(k));
  const double coeff = static_cast<double>(k);  // 2^m

  ProblemInstance inst;
  inst.graph = g;
  inst.kind = ProblemKind::coloring;
  inst.colors = k;
  inst.bits_per_node = m;
  inst.qubit_layout.resize(g.n_nodes());
  for (std::size_t v = 0; v < g.n_nodes(); ++v) {
    for (std::size_t l = 0; l < m; ++l) inst.qubit_layout[v].push_back(v * m + l);
  }

  // Each edge contributes 2^m * prod_l (1 + Z_{v,l} Z_{w,l}); expanding the
  // product gives one term per subset of bit positions.
  std::vector<PauliTerm> terms;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto [v, w] = g.edges()[e];
    for (std::size_t subset = 0; subset < k; ++subset) {
      PauliTerm t{coeff, {}};
      for (std::size_t l = 0; l < m; ++l) {
        if ((subset >> l) & 1U) {
          t.qubits.push_back(v * m + l);
          t.qubits.push_back(w * m + l);
        }
      }
      terms.push_back(std::move(t));
      inst.term_edge.push_back(e);
    }
  }
  inst.hamiltonian = DiagonalHamiltonian(g.n_nodes() * m, std::move(terms));
  return inst;
}

ProblemInstance maxcut_hamiltonian(const Graph& g) {
  ProblemInstance inst;
  inst.graph = g;
  inst.kind = ProblemKind::maxcut;
  inst.bits_per_node = 1;
  inst.qubit_layout.resize(g.n_nodes());
  for (std::size_t v = 0; v < g.n_nodes(); ++v) inst.qubit_layout[v] = {v};

  std::vector<PauliTerm> terms;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto [v, w] = g.edges()[e];
    terms.push_back({1.0, {}});
    terms.push_back({-1.0, {v, w}});
    inst.term_edge.push_back(e);
    inst.term_edge.push_back(e);
  }
  inst.hamiltonian = DiagonalHamiltonian(g.n_nodes(), std::move(terms));
  return inst;
}

std::vector<std::size_t> decode_coloring(std::string_view bits, std::size_t m) {
  if (m == 0 || bits.size() % m != 0) {
    throw std::invalid_argument("decode_coloring: length " + std::to_string(bits.size()) +
                                " not divisible by " + std::to_string(m));
  }
  return decode_coloring(from_string(bits), bits.size() / m, m);
}

std::vector<std::size_t> decode_coloring(Bitstring bits, std::size_t n_nodes, std::size_t m) {
  if (m == 0) throw std::invalid_argument("decode_coloring: m must be >= 1");
  std::vector<std::size_t> colors(n_nodes, 0);
  for (std::size_t v = 0; v < n_nodes; ++v) {
    for (std::size_t l = 0; l < m; ++l) {
      colors[v] = (colors[v] << 1) | ((bits >> (v * m + l)) & 1U);
    }
  }
  return colors;
}

Bitstring encode_coloring(std::span<const std::size_t> colors, std::size_t m) {
  Bitstring bits = 0;
  for (std::size_t v = 0; v < colors.size(); ++v) {
    if (colors[v] >> m) throw std::invalid_argument("encode_coloring: color does not fit in m bits");
    for (std::size_t l = 0; l < m; ++l) {
      if ((colors[v] >> (m - 1 - l)) & 1U) bits |= Bitstring{1} << (v * m + l);
    }
  }
  return bits;
}

bool is_proper_coloring(const Graph& g, std::span<const std::size_t> colors) {
  return std::none_of(g.edges().begin(), g.edges().end(),
                      [&](const Edge& e) { return colors[e.first] == colors[e.second]; });
}

bool OracleReport::is_solution(Bitstring bits) const {
  return std::binary_search(optimizer_args.begin(), optimizer_args.end(), bits);
}

OracleReport brute_force_oracle(const ProblemInstance& instance) {
  const std::size_t n = instance.n_qubits();
  if (n > kMaxOracleQubits) {
    throw CapacityError("brute_force_oracle: " + std::to_string(n) + " qubits exceeds the " +
                        std::to_string(kMaxOracleQubits) + "-qubit enumeration limit");
  }
  const auto spectrum = instance.hamiltonian.spectrum();
  const bool maximize = instance.kind == ProblemKind::maxcut;

  OracleReport report;
  report.optimum_energy = maximize ? *std::max_element(spectrum.begin(), spectrum.end())
                                   : *std::min_element(spectrum.begin(), spectrum.end());
  for (std::size_t z = 0; z < spectrum.size(); ++z) {
    if (spectrum[z] == report.optimum_energy) report.optimizer_args.push_back(z);
  }
  if (maximize) {
    report.valid_count = report.optimizer_args.size();
    report.optimum_cut = static_cast<std::size_t>(std::llround(report.optimum_energy / 2.0));
  } else {
    // Only zero-energy states are proper colorings.
    report.valid_count = report.optimum_energy == 0.0 ? report.optimizer_args.size() : 0;
  }
  report.valid_ratio = static_cast<double>(report.valid_count) / static_cast<double>(spectrum.size());
  return report;
}

nlohmann::json to_json(const OracleReport& report, const ProblemInstance& instance) {
  nlohmann::json doc = {
      {"instance", instance.name},
      {"kind", to_string(instance.kind)},
      {"n_nodes", instance.graph.n_nodes()},
      {"n_edges", instance.graph.edges().size()},
      {"n_qubits", instance.n_qubits()},
      {"s", report.valid_count},
      {"r", report.valid_ratio},
      {"r_percent", 100.0 * report.valid_ratio},
      {"optimum_energy", report.optimum_energy},
  };
  if (instance.kind == ProblemKind::maxcut) {
    doc["optimum_cut"] = report.optimum_cut;
    nlohmann::json args = nlohmann::json::array();
    for (auto z : report.optimizer_args) args.push_back(sha::to_string(z, instance.n_qubits()));
    doc["optimizer_args"] = args;
  } else {
    doc["colors"] = instance.colors;
  }
  return doc;
}

}  // namespace sha
