#include "sha/ansatz.hpp"

#include <stdexcept>
#include <string>

namespace sha {

const std::vector<AnsatzTemplate>& template_catalog() {
  using enum GateKind;
  static const std::vector<AnsatzTemplate> catalog = {
      {"rx_rz", {{RX, RZ}}, Topology::none, CNOT, EntanglerStyle::parameterized, true},
      {"ry_ladder_cnot", {{RY}}, Topology::ladder, CNOT, EntanglerStyle::parameterized, true},
      {"ry_ring_cz", {{RY}}, Topology::ring, CZ, EntanglerStyle::parameterized, true},
      {"rx_rz_alt_ring", {{RX}, {RZ}}, Topology::ring, CNOT, EntanglerStyle::parameterized, true},
      {"ry_full_cnot", {{RY}}, Topology::full, CNOT, EntanglerStyle::parameterized, true},
      {"rx_ry_ladder_cz", {{RX, RY}}, Topology::ladder, CZ, EntanglerStyle::parameterized, true},
      {"ry_cz_ring", {{RY}}, Topology::ring, CZ, EntanglerStyle::fixed, false},
  };
  return catalog;
}

const AnsatzTemplate& find_template(std::string_view id) {
  std::string known;
  for (const auto& t : template_catalog()) {
    if (t.id == id) return t;
    known += (known.empty() ? "" : ", ") + t.id;
  }
  throw std::invalid_argument("unknown ansatz template '" + std::string(id) + "' (known: " + known + ")");
}

std::vector<std::pair<std::size_t, std::size_t>> entangler_pairs(Topology t, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n < 2) return pairs;
  switch (t) {
    case Topology::none:
      break;
    case Topology::ladder:
      for (std::size_t q = 0; q + 1 < n; ++q) pairs.emplace_back(q, q + 1);
      break;
    case Topology::ring:
      for (std::size_t q = 0; q + 1 < n; ++q) pairs.emplace_back(q, q + 1);
      if (n > 2) pairs.emplace_back(n - 1, 0);
      break;
    case Topology::full:
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
      }
      break;
  }
  return pairs;
}

std::size_t params_per_layer(const AnsatzTemplate& t, std::size_t n, std::size_t layer) {
  const auto& axes = t.rotation_axes[layer % t.rotation_axes.size()];
  std::size_t count = axes.size() * n;
  if (t.style == EntanglerStyle::parameterized) count += entangler_pairs(t.topology, n).size();
  return count;
}

ParamCircuit build_ansatz(const AnsatzTemplate& t, std::size_t n_qubits, std::size_t layers) {
  if (layers < 1) throw std::invalid_argument("build_ansatz: layers must be >= 1");
  if (n_qubits < 1) throw std::invalid_argument("build_ansatz: n_qubits must be >= 1");
  if (t.rotation_axes.empty()) throw std::invalid_argument("build_ansatz: template has no rotation layers");

  std::vector<Gate> gates;
  std::vector<std::size_t> boundaries;
  std::size_t next_param = 0;
  const auto pairs = entangler_pairs(t.topology, n_qubits);

  for (std::size_t layer = 0; layer < layers; ++layer) {
    boundaries.push_back(gates.size());
    for (auto axis : t.rotation_axes[layer % t.rotation_axes.size()]) {
      for (std::size_t q = 0; q < n_qubits; ++q) {
        gates.push_back({axis, q, std::nullopt, next_param++});
      }
    }
    for (auto [a, b] : pairs) {
      if (t.style == EntanglerStyle::fixed) {
        gates.push_back({t.entangler_gate, b, a, std::nullopt});
        continue;
      }
      const GateKind inner = t.entangler_gate == GateKind::CZ ? GateKind::RX : GateKind::RZ;
      gates.push_back({t.entangler_gate, b, a, std::nullopt});
      gates.push_back({inner, b, std::nullopt, next_param++});
      gates.push_back({t.entangler_gate, b, a, std::nullopt});
    }
  }
  return ParamCircuit(n_qubits, std::move(gates), next_param, std::move(boundaries));
}

ParamCircuit prepend_ry_layer(const ParamCircuit& c) {
  const std::size_t n = c.n_qubits();
  std::vector<Gate> gates;
  gates.reserve(n + c.gates().size());
  for (std::size_t q = 0; q < n; ++q) gates.push_back({GateKind::RY, q, std::nullopt, q});
  for (auto g : c.gates()) {
    if (g.param_index) *g.param_index += n;
    gates.push_back(g);
  }
  std::vector<std::size_t> boundaries{0};
  for (auto b : c.layer_boundaries()) boundaries.push_back(b + n);
  if (c.gates().empty()) boundaries.resize(1);
  return ParamCircuit(n, std::move(gates), c.n_params() + n, std::move(boundaries));
}

namespace {

void append_cost_block(std::vector<Gate>& gates, const DiagonalHamiltonian& h, std::size_t gamma) {
  bool bound = false;
  for (const auto& term : h.terms()) {
    if (term.qubits.empty() || term.coefficient == 0.0) continue;  // global phase
    const auto& s = term.qubits;
    const std::size_t last = s.back();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) gates.push_back({GateKind::CNOT, s[i + 1], s[i], std::nullopt});
    gates.push_back({GateKind::RZ, last, std::nullopt, gamma, 2.0 * term.coefficient});
    for (std::size_t i = s.size() - 1; i > 0; --i) gates.push_back({GateKind::CNOT, s[i], s[i - 1], std::nullopt});
    bound = true;
  }
  // A constant cost is a global phase; keep gamma attached with a no-op rotation.
  if (!bound) gates.push_back({GateKind::RZ, 0, std::nullopt, gamma, 0.0});
}

}  // namespace

ParamCircuit qaoa_circuit(std::span<const DiagonalHamiltonian> costs) {
  if (costs.empty()) throw std::invalid_argument("qaoa_circuit: p must be >= 1");
  const std::size_t n = costs.front().n_qubits();
  if (n < 1) throw std::invalid_argument("qaoa_circuit: Hamiltonian has no qubits");
  std::vector<Gate> gates;
  std::vector<std::size_t> boundaries{0};
  for (std::size_t q = 0; q < n; ++q) gates.push_back({GateKind::H, q, std::nullopt, std::nullopt});
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (costs[i].n_qubits() != n) throw std::invalid_argument("qaoa_circuit: cost widths differ");
    if (i > 0) boundaries.push_back(gates.size());
    append_cost_block(gates, costs[i], 2 * i);
    for (std::size_t q = 0; q < n; ++q) gates.push_back({GateKind::RX, q, std::nullopt, 2 * i + 1, -2.0});
  }
  return ParamCircuit(n, std::move(gates), 2 * costs.size(), std::move(boundaries));
}

ParamCircuit qaoa_circuit(const DiagonalHamiltonian& h, std::size_t p) {
  if (p < 1) throw std::invalid_argument("qaoa_circuit: p must be >= 1");
  std::vector<DiagonalHamiltonian> costs(p, h);
  return qaoa_circuit(costs);
}

std::vector<double> qaoa_initial_params(std::size_t p) {
  if (p < 1) throw std::invalid_argument("qaoa_initial_params: p must be >= 1");
  std::vector<double> params;
  params.reserve(2 * p);
  const double pd = static_cast<double>(p);
  for (std::size_t i = 1; i <= p; ++i) {
    params.push_back(static_cast<double>(i) / pd);        // gamma_i
    params.push_back(static_cast<double>(p - i) / pd);    // beta_i = 1 - i/p, exactly rounded
  }
  return params;
}

}  // namespace sha
