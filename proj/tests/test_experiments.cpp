#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sha/experiments.hpp"

namespace sha {
namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("sha_test_" + name);
  fs::remove_all(dir);
  return dir;
}

RunRecord record_with_peaks(std::vector<bool> valid, std::vector<std::int64_t> cuts = {}) {
  RunRecord r;
  for (std::size_t i = 0; i < valid.size(); ++i) {
    MetricSnapshot s;
    s.iteration = i;
    s.most_likely_valid = valid[i];
    s.best_cut_found = cuts.empty() ? -1 : cuts[i];
    r.snapshots.push_back(s);
    r.loss_trace.push_back(0.0);
  }
  r.total_iterations = valid.size();
  return r;
}

TEST(Metrics, OverallAccuracy) {
  const auto inst = coloring_hamiltonian(Graph(2, {{0, 1}}), 2);
  const auto oracle = brute_force_oracle(inst);
  EXPECT_EQ(overall_accuracy({{from_string("01"), 200}}, oracle, inst.kind), 1.0);
  EXPECT_EQ(overall_accuracy({{from_string("01"), 50}, {from_string("00"), 150}}, oracle, inst.kind), 0.25);
}

TEST(Metrics, UniformStateOnTriangle) {
  const auto inst = coloring_hamiltonian(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), 4);
  const auto oracle = brute_force_oracle(inst);
  const auto counts = sample(Statevector::uniform_superposition(6), 100000, 3);
  const double p = 24.0 / 64.0;
  EXPECT_NEAR(overall_accuracy(counts, oracle, inst.kind), p, 3.0 * std::sqrt(p * (1 - p) / 1e5));
  EXPECT_DOUBLE_EQ(exact_accuracy(Statevector::uniform_superposition(6).probabilities(), oracle, inst.kind), p);
}

TEST(Metrics, MostLikelyAccuracy) {
  EXPECT_EQ(most_likely_accuracy(record_with_peaks({false, true, true, true}), 0.5), 1.0);
  EXPECT_EQ(most_likely_accuracy(record_with_peaks({true, false}), 1.0), 0.5);
  // ceil(0.02 * 100) = 2, ceil(0.03 * 100) = 3.
  std::vector<bool> v(100, false);
  v[99] = true;
  v[97] = true;
  EXPECT_EQ(most_likely_accuracy(record_with_peaks(v), 0.02), 0.5);
  EXPECT_NEAR(most_likely_accuracy(record_with_peaks(v), 0.03), 2.0 / 3.0, 1e-15);
}

TEST(Metrics, MostLikelyTieBreak) {
  EXPECT_EQ(most_likely_bitstring({{from_string("10"), 5}, {from_string("01"), 5}}, 2), from_string("01"));
}

TEST(Metrics, EnergyGap) {
  const auto inst = maxcut_hamiltonian(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  const auto oracle = brute_force_oracle(inst);
  EXPECT_EQ(energy_gap(record_with_peaks({false, false}, {0, 0}), oracle, ProblemKind::maxcut, 1.0), 2.0);
  EXPECT_EQ(energy_gap(record_with_peaks({false, true}, {0, 2}), oracle, ProblemKind::maxcut, 1.0), 0.0);
  EXPECT_THROW(energy_gap(record_with_peaks({true}), oracle, ProblemKind::coloring, 1.0), std::invalid_argument);
  // Snapshot cuts come from the sampled histogram.
  const auto snap = make_snapshot(0, 0.0, {{from_string("000"), 10}, {from_string("100"), 1}}, inst, &oracle);
  EXPECT_EQ(snap.best_cut_found, 2);
  EXPECT_EQ(snap.most_likely, 0u);
  EXPECT_FALSE(snap.most_likely_valid);
}

TEST(Persistence, RecordRoundTrip) {
  const auto inst = maxcut_hamiltonian(Graph(4, {{0, 1}, {1, 2}, {2, 3}}));
  const auto oracle = brute_force_oracle(inst);
  TrainSettings s;
  s.oracle = &oracle;
  CellResult cell;
  cell.record = run_method(parse_method("sha+ll:nw:2"), inst, find_template("ry_ladder_cnot"), 2, 3, s);
  cell.problem = {inst.kind, inst.n_qubits(), oracle.valid_count, oracle.optimum_cut};
  const auto path = fresh_dir("persist") / "cell.json";
  save_cell(cell, path);
  const auto back = load_cell(path);
  EXPECT_EQ(back.record, cell.record);
  EXPECT_EQ(back.problem.optimum_cut, 3u);
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST(Config, ParsesAndValidates) {
  const auto doc = nlohmann::json::parse(R"({
    "problem": "maxcut",
    "instances": [{"fixture": 1}, {"gnp": {"n": 5, "p": 0.5, "seed": 2}}],
    "methods": ["vqe", "qaoa:3"],
    "seeds": [7],
    "optimizer": {"max_iterations": 100, "partial_progress_threshold": 0.5},
    "output_dir": "out"
  })");
  const auto cfg = config_from_json(doc, "/base");
  EXPECT_EQ(cfg.kind, ProblemKind::maxcut);
  EXPECT_EQ(*cfg.instances[0].fixture, fs::path("/base/fixtures/graph_01.txt"));
  EXPECT_EQ(cfg.instances[1].n, 5u);
  EXPECT_EQ(cfg.optimizer.max_iterations, 100u);
  EXPECT_EQ(cfg.partial_progress_threshold, 0.5);
  EXPECT_EQ(cfg.output_dir, fs::path("/base/out"));
  EXPECT_EQ(config_from_json(to_json(cfg)).methods, cfg.methods);
  auto bad = doc;
  bad["methods"] = {"nonsense"};
  EXPECT_THROW(config_from_json(bad), std::invalid_argument);
  bad = doc;
  bad["seeds"] = nlohmann::json::array();
  EXPECT_THROW(config_from_json(bad), std::invalid_argument);
}

TEST(Config, ConnectedGeneration) {
  InstanceSpec spec;
  spec.n = 5;
  spec.p = 0.3;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    spec.seed = seed;
    EXPECT_TRUE(build_instance(spec, ProblemKind::coloring, 2).graph.is_connected());
  }
}

TEST(Runner, SingleCellGivesOneRecord) {
  ExperimentConfig cfg;
  cfg.instances.push_back({std::nullopt, 3, 1.0, 0, true});
  cfg.kind = ProblemKind::coloring;
  cfg.colors = 4;
  cfg.methods = {"vqe"};
  cfg.seeds = {0};
  cfg.layers = 1;
  cfg.optimizer.max_iterations = 60;
  cfg.output_dir = fresh_dir("single");
  const auto out = run_experiment(cfg);
  EXPECT_EQ(out.cells.size(), 1u);
  EXPECT_TRUE(out.failures.empty());
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(cfg.output_dir / "records")) ++files;
  EXPECT_EQ(files, 1u);
}

TEST(Runner, MatrixSummaryAndOfflineRecompute) {
  ExperimentConfig cfg;
  cfg.instances.push_back({std::nullopt, 4, 0.7, 1, true});
  cfg.instances.push_back({std::nullopt, 4, 0.7, 5, true});
  cfg.kind = ProblemKind::maxcut;
  cfg.methods = {"vqe", "sha:nw:2", "qaoa:2"};
  cfg.ansatze = {"ry_ladder_cnot", "rx_rz"};
  cfg.seeds = {0, 1};
  cfg.layers = 1;
  cfg.optimizer.max_iterations = 80;
  cfg.workers = 3;
  cfg.output_dir = fresh_dir("matrix");
  const auto out = run_experiment(cfg);
  // QAOA ignores the ansatz axis: 2 instances x (2 + 2 + 1) x 2 seeds.
  EXPECT_EQ(out.cells.size(), 20u);
  EXPECT_TRUE(out.failures.empty());

  for (const auto& agg : out.aggregates) {
    double acc = 0.0, gap = 0.0;
    std::size_t n = 0;
    for (const auto& cell : out.cells) {
      if (cell.record.method != agg.method) continue;
      acc += *cell.record.final_accuracy;
      gap += energy_gap(cell.record, OracleReport{.optimum_cut = cell.problem.optimum_cut}, ProblemKind::maxcut,
                        cfg.window_fraction);
      ++n;
    }
    EXPECT_EQ(agg.runs, n);
    EXPECT_NEAR(agg.mean_accuracy, acc / static_cast<double>(n), 1e-12);
    EXPECT_NEAR(*agg.mean_energy_gap, gap / static_cast<double>(n), 1e-12);
  }

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto online = slurp(cfg.output_dir / "summary.csv");
  const auto online_by_method = slurp(cfg.output_dir / "summary_by_method.csv");
  const auto offline = summarize_directory(cfg.output_dir, cfg.window_fraction);
  EXPECT_EQ(offline.rows.size(), 20u);
  EXPECT_EQ(slurp(cfg.output_dir / "summary.csv"), online);
  EXPECT_EQ(slurp(cfg.output_dir / "summary_by_method.csv"), online_by_method);
  EXPECT_EQ(online.substr(0, online.find('\n')),
            "method,instance,ansatz,seed,final_accuracy,most_likely_accuracy,total_iterations,energy_gap,"
            "final_expectation");
  for (const char* f : {"fig_accuracy.csv", "fig_most_likely_2pct.csv", "fig_most_likely_3pct.csv",
                        "fig_iterations.csv", "fig_energy_gap.csv", "fig_strategies.csv"}) {
    EXPECT_TRUE(fs::exists(cfg.output_dir / f)) << f;
  }
}

TEST(Runner, FailuresAreIsolated) {
  ExperimentConfig cfg;
  cfg.instances.push_back({std::nullopt, 3, 1.0, 0, true});
  cfg.kind = ProblemKind::maxcut;
  cfg.methods = {"vqe", "sha:nw:9"};
  cfg.seeds = {0};
  cfg.layers = 1;
  cfg.optimizer.max_iterations = 40;
  cfg.output_dir = fresh_dir("failures");
  const auto out = run_experiment(cfg);
  EXPECT_EQ(out.cells.size(), 1u);
  ASSERT_EQ(out.failures.size(), 1u);
  EXPECT_EQ(out.failures[0].method, "sha:nw:9");
  EXPECT_TRUE(fs::exists(cfg.output_dir / "failures.json"));
}

TEST(Runner, WorkerCountFromEnvironment) {
  ::setenv("SHA_WORKERS", "6", 1);
  EXPECT_EQ(worker_count(2), 6u);
  ::setenv("SHA_WORKERS", "zero", 1);
  EXPECT_EQ(worker_count(2), 2u);
  ::unsetenv("SHA_WORKERS");
  EXPECT_EQ(worker_count(0), 1u);
}

TEST(Runner, ParallelMatchesSerial) {
  ExperimentConfig cfg;
  cfg.instances.push_back({std::nullopt, 4, 0.8, 2, true});
  cfg.kind = ProblemKind::coloring;
  cfg.colors = 2;
  cfg.methods = {"vqe", "ll"};
  cfg.seeds = {0, 1, 2};
  cfg.layers = 2;
  cfg.optimizer.max_iterations = 50;
  cfg.output_dir = fresh_dir("serial");
  cfg.workers = 1;
  const auto serial = run_experiment(cfg);
  cfg.output_dir = fresh_dir("parallel");
  cfg.workers = 4;
  const auto parallel = run_experiment(cfg);
  ASSERT_EQ(serial.cells.size(), parallel.cells.size());
  for (std::size_t i = 0; i < serial.cells.size(); ++i) EXPECT_EQ(serial.cells[i].record, parallel.cells[i].record);
}

}  // namespace
}  // namespace sha
