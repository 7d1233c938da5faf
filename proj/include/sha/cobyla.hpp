#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sha {

struct OptimizerConfig {
  std::size_t max_iterations = 4000;  // objective evaluations
  double initial_trust_radius = 1.0;  // rhobeg
  double final_tolerance = 1e-4;      // rhoend
  /// Stop once the best loss improved by less than this over the last
  /// `progress_window` evaluations (checked after the initial simplex).
  double progress_threshold = 1e-6;
  std::size_t progress_window = 10;

  void validate() const;
};

enum class StopReason { budget, trust_radius, progress, no_parameters };

struct MinimizeResult {
  std::vector<double> x;         // best evaluated point
  double fx = 0.0;               // objective value recorded at x
  std::vector<double> losses;    // one entry per evaluation, in order
  std::size_t iterations = 0;    // == losses.size()
  StopReason reason = StopReason::budget;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free minimization in the style of Powell's COBYLA without
/// constraints: a linear model interpolated on a simplex of d+1 points,
/// steps of length rho along the model's descent direction, simplex geometry
/// repair, and rho halved down to final_tolerance when steps stop paying off.
/// Deterministic for a deterministic objective. With d = 0 returns x0 after
/// zero evaluations.
MinimizeResult minimize(const Objective& f, std::vector<double> x0, const OptimizerConfig& cfg);

}  // namespace sha
