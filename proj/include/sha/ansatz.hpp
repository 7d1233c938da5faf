#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sha/pauli_hamiltonian.hpp"
#include "sha/simulator.hpp"

namespace sha {

enum class Topology { none, ladder, ring, full };

/// How a template entangles neighbouring qubits.
///  - fixed: bare CNOT/CZ gates, parameter-free (not identity at zero).
///  - parameterized: one two-qubit rotation per pair that is the identity at
///    zero: CNOT.RZ(t).CNOT = exp(-i t ZZ/2) for CNOT, CZ.RX(t).CZ =
///    exp(-i t ZX/2) for CZ.
enum class EntanglerStyle { fixed, parameterized };

struct AnsatzTemplate {
  std::string id;
  /// Single-qubit rotation axes applied to every qubit, per layer; layer l
  /// uses rotation_axes[l % rotation_axes.size()].
  std::vector<std::vector<GateKind>> rotation_axes;
  Topology topology = Topology::none;
  GateKind entangler_gate = GateKind::CNOT;
  EntanglerStyle style = EntanglerStyle::parameterized;
  bool identity_at_zero = true;
};

/// The seven shipped templates.
const std::vector<AnsatzTemplate>& template_catalog();

/// Looks a template up by id; throws std::invalid_argument listing known ids.
const AnsatzTemplate& find_template(std::string_view id);

/// Qubit pairs (control, target) of an entangling layer.
std::vector<std::pair<std::size_t, std::size_t>> entangler_pairs(Topology t, std::size_t n_qubits);

/// Parameters contributed by layer `layer` (0-based) of t on n qubits.
std::size_t params_per_layer(const AnsatzTemplate& t, std::size_t n_qubits, std::size_t layer = 0);

/// `layers` repetitions of (rotation layer + entangler layer). Parameters are
/// numbered layer-major so a circuit with l+1 layers extends the parameter
/// vector of the l-layer circuit.
ParamCircuit build_ansatz(const AnsatzTemplate& t, std::size_t n_qubits, std::size_t layers);

/// Prepends RY(theta_q) on every qubit; new parameters take indices
/// 0..n-1 and existing indices shift by n.
ParamCircuit prepend_ry_layer(const ParamCircuit& c);

/// H wall followed by p blocks U_M(beta_i) U_C(gamma_i). U_C(gamma) =
/// exp(-i gamma H) is applied term by term (CNOT ladder, RZ(2 c gamma),
/// ladder back); U_M(beta) = exp(i beta sum X) = prod RX(-2 beta).
/// Parameters are ordered (gamma_1, beta_1, ..., gamma_p, beta_p).
ParamCircuit qaoa_circuit(const DiagonalHamiltonian& h, std::size_t p);

/// Same circuit with a separate cost Hamiltonian per block (block i uses
/// costs[i]); used when the cost function itself is assembled in stages.
ParamCircuit qaoa_circuit(std::span<const DiagonalHamiltonian> costs);

/// gamma_i = i/p, beta_i = 1 - i/p, interleaved as (gamma_1, beta_1, ...).
std::vector<double> qaoa_initial_params(std::size_t p);

}  // namespace sha
