#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sha/ansatz.hpp"
#include "sha/cobyla.hpp"
#include "sha/instances.hpp"
#include "sha/metrics.hpp"
#include "sha/partitioning.hpp"
#include "sha/simulator.hpp"

namespace sha {

struct TrainSettings {
  /// max_iterations is the global budget of a run; progress_threshold applies
  /// to the final stage.
  OptimizerConfig optimizer;
  /// Progress threshold of every stage before the last.
  double partial_progress_threshold = 0.8;
  std::uint64_t shots = 200;
  /// Enables accuracy metrics in the per-iteration snapshots and final_accuracy.
  const OracleReport* oracle = nullptr;
  /// Keep every evaluation's raw histogram in RunRecord::shot_trace.
  bool keep_shots = false;
};

/// One optimization stage of a run.
struct StageResult {
  std::string label;
  std::size_t first_iteration = 0;
  std::size_t budget = 0;
  double progress_threshold = 0.0;
  std::vector<double> params_in;   // full parameter vector entering the stage
  std::vector<double> params_out;
  std::size_t iterations_used = 0;
  StopReason reason = StopReason::budget;

  bool operator==(const StageResult&) const = default;
};

struct RunRecord {
  std::string method;
  std::string instance;
  std::string ansatz;
  std::uint64_t seed = 0;
  std::vector<double> loss_trace;            // concatenated over stages
  std::vector<MetricSnapshot> snapshots;     // one per iteration
  std::vector<StageResult> stages;
  std::vector<double> final_params;
  std::size_t total_iterations = 0;
  /// Exact expectation of the full training objective at final_params.
  double final_expectation = 0.0;
  /// Exact probability mass on valid/optimal bitstrings (oracle required).
  std::optional<double> final_accuracy;
  std::vector<Counts> shot_trace;            // only with keep_shots, not persisted

  bool operator==(const RunRecord& o) const;
};

/// Standard VQE: zero-initialized parameters, 200-shot expectation of the
/// full objective. Throws if the ansatz width differs from the instance.
RunRecord train_vqe(const ProblemInstance& instance, const ParamCircuit& ansatz, std::uint64_t seed,
                    const TrainSettings& settings);

/// SHA: stage k minimizes the objective restricted to the cumulative set S_k,
/// starting from stage k-1's parameters.
RunRecord train_sha(const ProblemInstance& instance, const ParamCircuit& ansatz,
                    const PartitionSchedule& schedule, std::uint64_t seed, const TrainSettings& settings);

/// Layerwise learning with s = p = q = 1 and r = 1: grow one layer at a
/// time training only the newest layer, then train every parameter.
/// Throws for templates that are not identity at zero.
RunRecord train_layerwise(const ProblemInstance& instance, const AnsatzTemplate& t, std::size_t layers,
                          std::uint64_t seed, const TrainSettings& settings);

/// Layer-VQE: RY layer plus one more template layer per stage, all
/// parameters trained each stage, no second phase.
RunRecord train_layer_vqe(const ProblemInstance& instance, const AnsatzTemplate& t, std::size_t layers,
                          std::uint64_t seed, const TrainSettings& settings);

/// QAOA of depth p, initialized from qaoa_initial_params, all 2p angles trained.
RunRecord train_qaoa(const ProblemInstance& instance, std::size_t p, std::uint64_t seed,
                     const TrainSettings& settings);

enum class HybridBase { layerwise, layer_vqe, qaoa };

/// SHA combined with a growing method. For layerwise/Layer-VQE every growth
/// stage runs the whole SHA sequence. For QAOA, layer l of p is built from
/// and trained against S_ceil(l*M/p).
RunRecord train_sha_hybrid(HybridBase base, const ProblemInstance& instance, const AnsatzTemplate& t,
                           std::size_t layers, const PartitionSchedule& schedule, std::size_t qaoa_p,
                           std::uint64_t seed, const TrainSettings& settings);

/// Index (0-based) into schedule.cumulative() for QAOA layer l (1-based) of p.
std::size_t qaoa_stage_for_layer(std::size_t layer, std::size_t p, std::size_t n_stages);

enum class MethodKind { vqe, sha, layerwise, layer_vqe, qaoa, sha_layerwise, sha_layer_vqe, sha_qaoa };

/// Parsed method id: "vqe", "sha:<strategy>", "ll", "lvqe", "qaoa:<p>",
/// "sha+ll:<strategy>", "sha+lvqe:<strategy>", "sha+qaoa:<strategy>:<p>".
struct MethodSpec {
  MethodKind kind = MethodKind::vqe;
  std::optional<StrategySpec> strategy;
  std::size_t qaoa_p = 3;

  std::string to_string() const;
  bool uses_ansatz() const { return kind != MethodKind::qaoa && kind != MethodKind::sha_qaoa; }
};

MethodSpec parse_method(std::string_view text);

/// Runs one method on one instance. `seed` drives shot noise and the
/// random/k-means partitioners.
RunRecord run_method(const MethodSpec& method, const ProblemInstance& instance, const AnsatzTemplate& t,
                     std::size_t layers, std::uint64_t seed, const TrainSettings& settings);

}  // namespace sha
