#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sha/bits.hpp"
#include "sha/pauli_hamiltonian.hpp"

namespace sha {

inline constexpr std::size_t kMaxSimulatorQubits = 24;

enum class GateKind { H, RX, RY, RZ, CNOT, CZ };

std::string_view to_string(GateKind kind);
bool is_rotation(GateKind kind);

/// One gate. Rotation gates take the angle scale * params[param_index];
/// two-qubit gates use `control`.
struct Gate {
  GateKind kind = GateKind::H;
  std::size_t target = 0;
  std::optional<std::size_t> control;
  std::optional<std::size_t> param_index;
  double scale = 1.0;

  bool operator==(const Gate&) const = default;
};

/// Layered parameterized circuit U(theta). Validated on construction:
/// controls differ from targets, only rotations carry parameters, every
/// parameter slot is used, and layer boundaries are strictly increasing
/// gate offsets starting at 0.
class ParamCircuit {
 public:
  ParamCircuit() = default;
  ParamCircuit(std::size_t n_qubits, std::vector<Gate> gates, std::size_t n_params,
               std::vector<std::size_t> layer_boundaries);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t n_params() const { return n_params_; }
  const std::vector<std::size_t>& layer_boundaries() const { return layer_boundaries_; }
  std::size_t n_layers() const { return layer_boundaries_.size(); }

  bool operator==(const ParamCircuit&) const = default;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Gate> gates_;
  std::size_t n_params_ = 0;
  std::vector<std::size_t> layer_boundaries_;
};

/// Dense state, amplitude index = Bitstring (qubit 0 least significant).
class Statevector {
 public:
  /// |0...0> on n qubits; throws std::length_error above kMaxSimulatorQubits.
  explicit Statevector(std::size_t n_qubits);
  /// Takes ownership of amplitudes; size must be a power of two and the norm 1 within 1e-10.
  explicit Statevector(std::vector<std::complex<double>> amplitudes);

  static Statevector basis_state(std::size_t n_qubits, Bitstring bits);
  static Statevector uniform_superposition(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amplitudes_; }
  std::complex<double> operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm_squared() const;
  std::vector<double> probabilities() const;

  /// Applies a gate at a concrete rotation angle (ignored for H/CNOT/CZ).
  void apply(const Gate& gate, double angle = 0.0);

 private:
  void apply_single(std::size_t target, const std::complex<double> (&u)[2][2]);

  std::size_t n_qubits_;
  std::vector<std::complex<double>> amplitudes_;
};

/// Applies the gates of c in order to `initial` (default |0...0>).
/// Throws std::invalid_argument on a parameter-count or width mismatch.
Statevector run_circuit(const ParamCircuit& c, std::span<const double> params,
                        std::optional<Statevector> initial = std::nullopt);

/// Multinomial sample of `shots` measurements from |amplitude|^2 with a
/// CounterRng keyed by `seed`. Deterministic per (state, shots, seed).
Counts sample(const Statevector& sv, std::uint64_t shots, std::uint64_t seed);
Counts sample(std::span<const double> probabilities, std::uint64_t shots, std::uint64_t seed);

/// Parameter-shift derivative of <H>(theta) in parameter i:
/// (<H>(theta + pi/2 e_i) - <H>(theta - pi/2 e_i)) / 2.
/// The rule is exact only when parameter i drives a single rotation with
/// scale +-1; anything else throws std::invalid_argument.
double param_shift_gradient(const ParamCircuit& c, const DiagonalHamiltonian& h,
                            std::span<const double> params, std::size_t i);

/// Gate-list dump for debugging.
nlohmann::json to_json(const ParamCircuit& c);

}  // namespace sha
