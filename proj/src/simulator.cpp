#include "sha/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sha/rng.hpp"

namespace sha {

using cplx = std::complex<double>;

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

ParamCircuit::ParamCircuit(std::size_t n_qubits, std::vector<Gate> gates, std::size_t n_params,
                           std::vector<std::size_t> layer_boundaries)
    : n_qubits_(n_qubits),
      gates_(std::move(gates)),
      n_params_(n_params),
      layer_boundaries_(std::move(layer_boundaries)) {
  std::vector<bool> used(n_params_, false);
  for (const auto& g : gates_) {
    if (g.target >= n_qubits_) throw std::invalid_argument("ParamCircuit: target out of range");
    const bool two_qubit = g.kind == GateKind::CNOT || g.kind == GateKind::CZ;
    if (two_qubit != g.control.has_value()) {
      throw std::invalid_argument("ParamCircuit: control must be set exactly for CNOT/CZ");
    }
    if (g.control && (*g.control >= n_qubits_ || *g.control == g.target)) {
      throw std::invalid_argument("ParamCircuit: invalid control qubit");
    }
    if (is_rotation(g.kind) != g.param_index.has_value()) {
      throw std::invalid_argument("ParamCircuit: param_index must be set exactly for rotations");
    }
    if (g.param_index) {
      if (*g.param_index >= n_params_) throw std::invalid_argument("ParamCircuit: param_index out of range");
      used[*g.param_index] = true;
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw std::invalid_argument("ParamCircuit: unused parameter slot");
  }
  if (!layer_boundaries_.empty() && layer_boundaries_.front() != 0) {
    throw std::invalid_argument("ParamCircuit: first layer boundary must be 0");
  }
  for (std::size_t i = 1; i < layer_boundaries_.size(); ++i) {
    if (layer_boundaries_[i] <= layer_boundaries_[i - 1] || layer_boundaries_[i] > gates_.size()) {
      throw std::invalid_argument("ParamCircuit: layer boundaries must be strictly increasing");
    }
  }
}

Statevector::Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > kMaxSimulatorQubits) {
    throw std::length_error("Statevector: " + std::to_string(n_qubits) + " qubits exceeds the " +
                            std::to_string(kMaxSimulatorQubits) + "-qubit limit");
  }
  amplitudes_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

Statevector::Statevector(std::vector<cplx> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty() || !std::has_single_bit(amplitudes_.size())) {
    throw std::invalid_argument("Statevector: dimension must be a power of two");
  }
  n_qubits_ = static_cast<std::size_t>(std::countr_zero(amplitudes_.size()));
  if (n_qubits_ > kMaxSimulatorQubits) throw std::length_error("Statevector: too many qubits");
  if (std::abs(norm_squared() - 1.0) > 1e-10) {
    throw std::invalid_argument("Statevector: amplitudes are not normalized");
  }
}

Statevector Statevector::basis_state(std::size_t n_qubits, Bitstring bits) {
  Statevector sv(n_qubits);
  if (bits >= sv.dimension()) throw std::invalid_argument("basis_state: bitstring out of range");
  sv.amplitudes_[0] = 0.0;
  sv.amplitudes_[bits] = 1.0;
  return sv;
}

Statevector Statevector::uniform_superposition(std::size_t n_qubits) {
  Statevector sv(n_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(sv.dimension()));
  std::fill(sv.amplitudes_.begin(), sv.amplitudes_.end(), cplx{a, 0.0});
  return sv;
}

double Statevector::norm_squared() const {
  double n = 0.0;
  for (const auto& a : amplitudes_) n += std::norm(a);
  return n;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                 [](const cplx& a) { return std::norm(a); });
  return p;
}

void Statevector::apply_single(std::size_t target, const cplx (&u)[2][2]) {
  const std::size_t stride = std::size_t{1} << target;
  const std::size_t dim = amplitudes_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = amplitudes_[i];
      const cplx a1 = amplitudes_[i + stride];
      amplitudes_[i] = u[0][0] * a0 + u[0][1] * a1;
      amplitudes_[i + stride] = u[1][0] * a0 + u[1][1] * a1;
    }
  }
}

void Statevector::apply(const Gate& gate, double angle) {
  if (gate.target >= n_qubits_ || (gate.control && *gate.control >= n_qubits_)) {
    throw std::invalid_argument("Statevector::apply: qubit out of range");
  }
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const cplx i1{0.0, 1.0};
  switch (gate.kind) {
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2.0;
      const cplx u[2][2] = {{r, r}, {r, -r}};
      apply_single(gate.target, u);
      break;
    }
    case GateKind::RX: {
      const cplx u[2][2] = {{c, -i1 * s}, {-i1 * s, c}};
      apply_single(gate.target, u);
      break;
    }
    case GateKind::RY: {
      const cplx u[2][2] = {{c, -s}, {s, c}};
      apply_single(gate.target, u);
      break;
    }
    case GateKind::RZ: {
      const cplx u[2][2] = {{cplx{c, -s}, 0.0}, {0.0, cplx{c, s}}};
      apply_single(gate.target, u);
      break;
    }
    case GateKind::CNOT: {
      const std::size_t cm = std::size_t{1} << *gate.control;
      const std::size_t tm = std::size_t{1} << gate.target;
      for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & cm) && !(i & tm)) std::swap(amplitudes_[i], amplitudes_[i | tm]);
      }
      break;
    }
    case GateKind::CZ: {
      const std::size_t mask = (std::size_t{1} << *gate.control) | (std::size_t{1} << gate.target);
      for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & mask) == mask) amplitudes_[i] = -amplitudes_[i];
      }
      break;
    }
  }
}

Statevector run_circuit(const ParamCircuit& c, std::span<const double> params,
                        std::optional<Statevector> initial) {
  if (params.size() != c.n_params()) {
    throw std::invalid_argument("run_circuit: expected " + std::to_string(c.n_params()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  Statevector sv = initial ? std::move(*initial) : Statevector(c.n_qubits());
  if (sv.n_qubits() != c.n_qubits()) {
    throw std::invalid_argument("run_circuit: initial state width does not match circuit");
  }
  for (const auto& g : c.gates()) {
    sv.apply(g, g.param_index ? g.scale * params[*g.param_index] : 0.0);
  }
  return sv;
}

Counts sample(std::span<const double> probabilities, std::uint64_t shots, std::uint64_t seed) {
  std::vector<double> cdf(probabilities.size());
  double running = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    running += probabilities[i];
    cdf[i] = running;
  }
  CounterRng rng(seed);
  Counts counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Guard against u landing on the final boundary through rounding, and
    // never return a zero-probability outcome.
    std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    while (probabilities[idx] == 0.0 && idx > 0) --idx;
    ++counts[idx];
  }
  return counts;
}

Counts sample(const Statevector& sv, std::uint64_t shots, std::uint64_t seed) {
  const auto p = sv.probabilities();
  return sample(p, shots, seed);
}

double param_shift_gradient(const ParamCircuit& c, const DiagonalHamiltonian& h,
                            std::span<const double> params, std::size_t i) {
  if (i >= c.n_params()) throw std::invalid_argument("param_shift_gradient: parameter index out of range");
  std::size_t uses = 0;
  for (const auto& g : c.gates()) {
    if (g.param_index == i) {
      ++uses;
      if (std::abs(g.scale) != 1.0) {
        throw std::invalid_argument("param_shift_gradient: parameter drives a rotation with scale != +-1");
      }
    }
  }
  if (uses != 1) {
    throw std::invalid_argument("param_shift_gradient: parameter reused by " + std::to_string(uses) +
                                " gates; the two-term shift rule does not apply");
  }
  std::vector<double> shifted(params.begin(), params.end());
  shifted[i] = params[i] + std::numbers::pi / 2.0;
  const double plus = expectation_exact(h, run_circuit(c, shifted).amplitudes());
  shifted[i] = params[i] - std::numbers::pi / 2.0;
  const double minus = expectation_exact(h, run_circuit(c, shifted).amplitudes());
  return (plus - minus) / 2.0;
}

nlohmann::json to_json(const ParamCircuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : c.gates()) {
    nlohmann::json j = {{"kind", to_string(g.kind)}, {"target", g.target}};
    if (g.control) j["control"] = *g.control;
    if (g.param_index) {
      j["param"] = *g.param_index;
      if (g.scale != 1.0) j["scale"] = g.scale;
    }
    gates.push_back(std::move(j));
  }
  return {{"n_qubits", c.n_qubits()},
          {"n_params", c.n_params()},
          {"layer_boundaries", c.layer_boundaries()},
          {"gates", gates}};
}

}  // namespace sha
