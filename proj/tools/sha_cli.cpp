// Command-line front end: graph generation, brute-force oracle, single runs,
// experiment matrices and result summaries.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "sha/experiments.hpp"

namespace {

using nlohmann::json;

void emit(const json& doc, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << doc.dump(2) << '\n';
}

sha::ProblemInstance load_instance(const std::string& graph, const std::string& problem, std::size_t colors) {
  sha::InstanceSpec spec;
  spec.fixture = graph;
  return sha::build_instance(spec, sha::problem_kind_from_string(problem), colors);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational optimization workbench"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a G(n, p) graph in fixture format");
  std::size_t gen_n = 8;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 0;
  bool gen_connected = false;
  std::string gen_out;
  gen->add_option("-n,--nodes", gen_n, "Number of nodes")->required();
  gen->add_option("-p,--prob", gen_p, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
  gen->add_option("-s,--seed", gen_seed, "Generator seed");
  gen->add_flag("--connected", gen_connected, "Advance the seed until the graph is connected");
  gen->add_option("-o,--out", gen_out, "Output file")->required();

  auto* orc = app.add_subcommand("oracle", "Brute-force the valid or optimal bitstrings of an instance");
  std::string orc_graph, orc_problem = "coloring", orc_out;
  std::size_t orc_colors = 4;
  orc->add_option("-g,--graph", orc_graph, "Graph file")->required()->check(CLI::ExistingFile);
  orc->add_option("--problem", orc_problem, "coloring or maxcut")->check(CLI::IsMember({"coloring", "maxcut"}));
  orc->add_option("-k,--colors", orc_colors, "Number of colors (power of two)");
  orc->add_option("-o,--out", orc_out, "Output JSON file (default stdout)");

  auto* tr = app.add_subcommand("train", "Train one method on one instance");
  std::string tr_graph, tr_problem = "coloring", tr_method = "vqe", tr_ansatz = "ry_ladder_cnot", tr_out;
  std::size_t tr_colors = 4, tr_layers = 3;
  std::uint64_t tr_seed = 0, tr_shots = 200;
  tr->add_option("-g,--graph", tr_graph, "Graph file")->required()->check(CLI::ExistingFile);
  tr->add_option("--problem", tr_problem, "coloring or maxcut")->check(CLI::IsMember({"coloring", "maxcut"}));
  tr->add_option("-k,--colors", tr_colors, "Number of colors (power of two)");
  tr->add_option("-m,--method", tr_method, "Method id, e.g. vqe, sha:nw:4, qaoa:3, sha+ll:sq:3");
  tr->add_option("-a,--ansatz", tr_ansatz, "Ansatz template id");
  tr->add_option("-L,--layers", tr_layers, "Ansatz layers");
  tr->add_option("-s,--seed", tr_seed, "Run seed");
  tr->add_option("--shots", tr_shots, "Shots per evaluation");
  tr->add_option("-o,--out", tr_out, "Output JSON file (default stdout)");

  auto* run = app.add_subcommand("run", "Run an experiment matrix from a JSON config");
  std::string run_config;
  std::size_t run_workers = 0;
  run->add_option("config", run_config, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("-j,--workers", run_workers, "Worker threads (overrides the config)");

  auto* sum = app.add_subcommand("summarize", "Rebuild summary tables from a results directory");
  std::string sum_dir;
  double sum_window = 0.02;
  sum->add_option("dir", sum_dir, "Results directory")->required()->check(CLI::ExistingDirectory);
  sum->add_option("-w,--window", sum_window, "Most-likely window fraction")->check(CLI::Range(0.0, 1.0));

  auto* tmpl = app.add_subcommand("templates", "List ansatz templates");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      sha::Graph g = sha::gnp_random_graph(gen_n, gen_p, gen_seed);
      while (gen_connected && !g.is_connected()) g = sha::gnp_random_graph(gen_n, gen_p, ++gen_seed);
      sha::write_graph(g, gen_out);
      std::cerr << "wrote " << gen_out << " (" << g.edges().size() << " edges, seed " << gen_seed << ")\n";
    } else if (*orc) {
      const auto inst = load_instance(orc_graph, orc_problem, orc_colors);
      emit(sha::to_json(sha::brute_force_oracle(inst), inst), orc_out);
    } else if (*tr) {
      const auto inst = load_instance(tr_graph, tr_problem, tr_colors);
      const auto oracle = sha::brute_force_oracle(inst);
      sha::TrainSettings settings;
      settings.shots = tr_shots;
      settings.oracle = &oracle;
      sha::CellResult cell;
      cell.record = sha::run_method(sha::parse_method(tr_method), inst, sha::find_template(tr_ansatz), tr_layers,
                                    tr_seed, settings);
      cell.problem = {inst.kind, inst.n_qubits(), oracle.valid_count, oracle.optimum_cut};
      const auto row = sha::summarize_cell(cell, 0.02);
      std::cerr << row.method << ": iterations " << row.total_iterations << ", accuracy " << row.final_accuracy
                << ", most-likely " << row.most_likely_accuracy << '\n';
      emit(sha::to_json(cell), tr_out);
    } else if (*run) {
      std::ifstream in(run_config);
      const std::filesystem::path cfg_path = run_config;
      auto cfg = sha::config_from_json(json::parse(in), cfg_path.parent_path());
      if (run_workers > 0) cfg.workers = run_workers;
      const auto outcome = sha::run_experiment(cfg);
      for (const auto& a : outcome.aggregates) {
        std::printf("%-24s runs=%zu mean_acc=%.4f mean_ml=%.4f mean_iter=%.1f\n", a.method.c_str(), a.runs,
                    a.mean_accuracy, a.mean_most_likely, a.mean_iterations);
      }
      for (const auto& f : outcome.failures) {
        std::fprintf(stderr, "FAILED %s %s %s seed=%llu: %s\n", f.method.c_str(), f.instance.c_str(),
                     f.ansatz.c_str(), static_cast<unsigned long long>(f.seed), f.error.c_str());
      }
      return outcome.failures.empty() ? 0 : 2;
    } else if (*sum) {
      const auto outcome = sha::summarize_directory(sum_dir, sum_window);
      std::cerr << "summarized " << outcome.rows.size() << " records\n";
    } else if (*tmpl) {
      for (const auto& t : sha::template_catalog()) {
        std::cout << t.id << (t.identity_at_zero ? "" : " (not identity at zero)") << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
