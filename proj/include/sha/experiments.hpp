#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sha/instances.hpp"
#include "sha/metrics.hpp"
#include "sha/training.hpp"

namespace sha {

/// Fraction of the trailing window whose modal bitstring was a valid/optimal
/// solution. The window is the last ceil(window_fraction * iterations) steps.
double most_likely_accuracy(const RunRecord& record, double window_fraction);

/// Optimum cut minus the best cut sampled in the trailing window, in cut
/// units. Throws std::invalid_argument for non-maxcut problems.
double energy_gap(const RunRecord& record, const OracleReport& oracle, ProblemKind kind,
                  double window_fraction = 0.02);

/// One instance entry: a fixture graph or a G(n, p) generator spec.
struct InstanceSpec {
  std::optional<std::filesystem::path> fixture;
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  /// For generated graphs: retry seed, seed+1, ... until the graph is connected.
  bool connected = true;
};

struct ExperimentConfig {
  std::vector<InstanceSpec> instances;
  ProblemKind kind = ProblemKind::coloring;
  std::size_t colors = 4;
  std::vector<std::string> methods;
  std::vector<std::string> ansatze{"ry_ladder_cnot"};
  std::size_t layers = 3;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::uint64_t shots = 200;
  OptimizerConfig optimizer;
  double partial_progress_threshold = 0.8;
  double window_fraction = 0.02;
  std::filesystem::path output_dir = "results";
  std::size_t workers = 1;

  /// Throws std::invalid_argument on an empty instance/method/seed list,
  /// zero shots or an unknown method/ansatz id.
  void validate() const;
};

/// Parses the JSON config document. Relative fixture paths resolve against `base_dir`.
ExperimentConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Graph for an instance spec; generated graphs are named gnp_n<n>_p<p>_s<seed>.
ProblemInstance build_instance(const InstanceSpec& spec, ProblemKind kind, std::size_t colors);

struct ProblemContext {
  ProblemKind kind = ProblemKind::coloring;
  std::size_t n_qubits = 0;
  std::uint64_t valid_count = 0;
  std::size_t optimum_cut = 0;
};

/// Persisted form of one experiment cell.
struct CellResult {
  RunRecord record;
  ProblemContext problem;
};

nlohmann::json to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const CellResult& cell);
CellResult cell_from_json(const nlohmann::json& doc);

/// Writes via a temporary file and rename so readers never see partial files.
void save_cell(const CellResult& cell, const std::filesystem::path& path);
CellResult load_cell(const std::filesystem::path& path);

struct SummaryRow {
  std::string method, instance, ansatz;
  std::uint64_t seed = 0;
  double final_accuracy = 0.0;
  double most_likely_accuracy = 0.0;
  std::size_t total_iterations = 0;
  std::optional<double> energy_gap;
  double final_expectation = 0.0;
};

SummaryRow summarize_cell(const CellResult& cell, double window_fraction);

struct MethodAggregate {
  std::string method;
  std::size_t runs = 0;
  double mean_accuracy = 0.0, median_accuracy = 0.0;
  double mean_most_likely = 0.0, median_most_likely = 0.0;
  double mean_iterations = 0.0, median_iterations = 0.0;
  std::optional<double> mean_energy_gap, median_energy_gap;
};

/// Mean/median per method, sorted by method id.
std::vector<MethodAggregate> aggregate_by_method(const std::vector<SummaryRow>& rows);

struct CellFailure {
  std::string method, instance, ansatz;
  std::uint64_t seed = 0;
  std::string error;
};

struct ExperimentOutcome {
  std::vector<CellResult> cells;  // successful cells in matrix order
  std::vector<CellFailure> failures;
  std::vector<SummaryRow> rows;
  std::vector<MethodAggregate> aggregates;
};

/// Worker count: SHA_WORKERS if set to a positive integer, else `fallback`.
std::size_t worker_count(std::size_t fallback);

/// Runs instances x methods x ansatze x seeds (QAOA-based methods ignore the
/// ansatz and run once per instance and seed). Each cell is persisted under
/// output_dir/records/ as soon as it finishes; failures are collected and the
/// rest of the matrix still runs. Writes the summary files at the end.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// Reads every record under dir/records and writes summary.csv,
/// summary_by_method.csv and the fig_*.csv tables into dir.
ExperimentOutcome summarize_directory(const std::filesystem::path& dir, double window_fraction);

void write_summary_files(const std::filesystem::path& dir, const std::vector<CellResult>& cells,
                         const std::vector<SummaryRow>& rows, const std::vector<MethodAggregate>& aggregates);

}  // namespace sha
