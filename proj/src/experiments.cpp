#include "sha/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace sha {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::size_t window_length(std::size_t iterations, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("window_fraction must lie in (0, 1]");
  }
  const auto w = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(iterations) - 1e-9));
  return std::clamp<std::size_t>(w, 1, std::max<std::size_t>(iterations, 1));
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::string sanitize(std::string s) {
  for (auto& c : s) {
    if (c == ':') c = '-';
    else if (c == '+') c = 'p';
    else if (c == '/' || c == ' ') c = '_';
  }
  return s;
}

std::string_view reason_name(StopReason r) {
  switch (r) {
    case StopReason::budget: return "budget";
    case StopReason::trust_radius: return "trust_radius";
    case StopReason::progress: return "progress";
    case StopReason::no_parameters: return "no_parameters";
  }
  return "budget";
}

StopReason reason_from_name(std::string_view s) {
  if (s == "trust_radius") return StopReason::trust_radius;
  if (s == "progress") return StopReason::progress;
  if (s == "no_parameters") return StopReason::no_parameters;
  return StopReason::budget;
}

}  // namespace

double most_likely_accuracy(const RunRecord& record, double window_fraction) {
  const auto& snaps = record.snapshots;
  if (snaps.empty()) return 0.0;
  const std::size_t w = window_length(snaps.size(), window_fraction);
  std::size_t hits = 0;
  for (std::size_t i = snaps.size() - w; i < snaps.size(); ++i) hits += snaps[i].most_likely_valid ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(w);
}

double energy_gap(const RunRecord& record, const OracleReport& oracle, ProblemKind kind, double window_fraction) {
  if (kind != ProblemKind::maxcut) throw std::invalid_argument("energy_gap: defined for maxcut runs only");
  const auto& snaps = record.snapshots;
  if (snaps.empty()) throw std::invalid_argument("energy_gap: record has no iterations");
  const std::size_t w = window_length(snaps.size(), window_fraction);
  std::int64_t best = -1;
  for (std::size_t i = snaps.size() - w; i < snaps.size(); ++i) best = std::max(best, snaps[i].best_cut_found);
  if (best < 0) throw std::invalid_argument("energy_gap: record carries no cut values");
  return static_cast<double>(static_cast<std::int64_t>(oracle.optimum_cut) - best);
}

void ExperimentConfig::validate() const {
  if (instances.empty()) throw std::invalid_argument("experiment: at least one instance required");
  if (methods.empty()) throw std::invalid_argument("experiment: at least one method required");
  if (seeds.empty()) throw std::invalid_argument("experiment: at least one seed required");
  if (ansatze.empty()) throw std::invalid_argument("experiment: at least one ansatz required");
  if (shots < 1) throw std::invalid_argument("experiment: shots must be >= 1");
  if (layers < 1) throw std::invalid_argument("experiment: layers must be >= 1");
  for (const auto& m : methods) parse_method(m);
  for (const auto& a : ansatze) find_template(a);
  optimizer.validate();
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw std::invalid_argument("experiment: window_fraction must lie in (0, 1]");
  }
}

ExperimentConfig config_from_json(const json& doc, const fs::path& base_dir) {
  ExperimentConfig cfg;
  cfg.kind = problem_kind_from_string(doc.value("problem", std::string("coloring")));
  cfg.colors = doc.value("colors", cfg.colors);
  const fs::path fixtures_dir = base_dir / doc.value("fixtures_dir", std::string("fixtures"));
  for (const auto& entry : doc.at("instances")) {
    InstanceSpec spec;
    if (entry.contains("fixture")) {
      const auto& f = entry.at("fixture");
      if (f.is_number_integer()) {
        char name[32];
        std::snprintf(name, sizeof name, "graph_%02d.txt", f.get<int>());
        spec.fixture = fixtures_dir / name;
      } else {
        const fs::path p = f.get<std::string>();
        spec.fixture = p.is_absolute() ? p : base_dir / p;
      }
    } else {
      const auto& g = entry.at("gnp");
      spec.n = g.at("n").get<std::size_t>();
      spec.p = g.at("p").get<double>();
      spec.seed = g.value("seed", std::uint64_t{0});
      spec.connected = entry.value("connected", true);
    }
    cfg.instances.push_back(spec);
  }
  cfg.methods = doc.at("methods").get<std::vector<std::string>>();
  if (doc.contains("ansatze")) cfg.ansatze = doc.at("ansatze").get<std::vector<std::string>>();
  cfg.layers = doc.value("layers", cfg.layers);
  if (doc.contains("seeds")) cfg.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
  cfg.shots = doc.value("shots", cfg.shots);
  if (doc.contains("optimizer")) {
    const auto& o = doc.at("optimizer");
    cfg.optimizer.max_iterations = o.value("max_iterations", cfg.optimizer.max_iterations);
    cfg.optimizer.initial_trust_radius = o.value("initial_trust_radius", cfg.optimizer.initial_trust_radius);
    cfg.optimizer.final_tolerance = o.value("final_tolerance", cfg.optimizer.final_tolerance);
    cfg.optimizer.progress_threshold = o.value("progress_threshold", cfg.optimizer.progress_threshold);
    cfg.optimizer.progress_window = o.value("progress_window", cfg.optimizer.progress_window);
    cfg.partial_progress_threshold = o.value("partial_progress_threshold", cfg.partial_progress_threshold);
  }
  cfg.window_fraction = doc.value("window_fraction", cfg.window_fraction);
  const fs::path out = doc.value("output_dir", std::string("results"));
  cfg.output_dir = out.is_absolute() ? out : base_dir / out;
  cfg.workers = doc.value("workers", cfg.workers);
  cfg.validate();
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json instances = json::array();
  for (const auto& s : cfg.instances) {
    if (s.fixture) {
      instances.push_back({{"fixture", s.fixture->string()}});
    } else {
      instances.push_back({{"gnp", {{"n", s.n}, {"p", s.p}, {"seed", s.seed}}}, {"connected", s.connected}});
    }
  }
  return {{"problem", to_string(cfg.kind)},
          {"colors", cfg.colors},
          {"instances", instances},
          {"methods", cfg.methods},
          {"ansatze", cfg.ansatze},
          {"layers", cfg.layers},
          {"seeds", cfg.seeds},
          {"shots", cfg.shots},
          {"optimizer",
           {{"max_iterations", cfg.optimizer.max_iterations},
            {"initial_trust_radius", cfg.optimizer.initial_trust_radius},
            {"final_tolerance", cfg.optimizer.final_tolerance},
            {"progress_threshold", cfg.optimizer.progress_threshold},
            {"progress_window", cfg.optimizer.progress_window},
            {"partial_progress_threshold", cfg.partial_progress_threshold}}},
          {"window_fraction", cfg.window_fraction},
          {"output_dir", cfg.output_dir.string()},
          {"workers", cfg.workers}};
}

ProblemInstance build_instance(const InstanceSpec& spec, ProblemKind kind, std::size_t colors) {
  Graph g;
  std::string name;
  if (spec.fixture) {
    g = read_graph(*spec.fixture);
    name = spec.fixture->stem().string();
  } else {
    std::uint64_t seed = spec.seed;
    g = gnp_random_graph(spec.n, spec.p, seed);
    for (int attempt = 0; spec.connected && !g.is_connected(); ++attempt) {
      if (attempt > 10000) throw std::runtime_error("build_instance: no connected G(n, p) graph found");
      g = gnp_random_graph(spec.n, spec.p, ++seed);
    }
    std::ostringstream os;
    os << "gnp_n" << spec.n << "_p" << spec.p << "_s" << seed;
    name = os.str();
  }
  ProblemInstance inst = kind == ProblemKind::coloring ? coloring_hamiltonian(g, colors) : maxcut_hamiltonian(g);
  inst.name = name;
  return inst;
}

json to_json(const RunRecord& r) {
  json snaps = {{"iteration", json::array()}, {"loss", json::array()},
                {"overall_accuracy", json::array()}, {"most_likely", json::array()},
                {"most_likely_valid", json::array()}, {"best_cut_found", json::array()}};
  for (const auto& s : r.snapshots) {
    snaps["iteration"].push_back(s.iteration);
    snaps["loss"].push_back(s.loss);
    snaps["overall_accuracy"].push_back(s.overall_accuracy);
    snaps["most_likely"].push_back(s.most_likely);
    snaps["most_likely_valid"].push_back(s.most_likely_valid);
    snaps["best_cut_found"].push_back(s.best_cut_found);
  }
  json stages = json::array();
  for (const auto& st : r.stages) {
    stages.push_back({{"label", st.label},
                      {"first_iteration", st.first_iteration},
                      {"budget", st.budget},
                      {"progress_threshold", st.progress_threshold},
                      {"params_in", st.params_in},
                      {"params_out", st.params_out},
                      {"iterations_used", st.iterations_used},
                      {"reason", reason_name(st.reason)}});
  }
  return {{"method", r.method},
          {"instance", r.instance},
          {"ansatz", r.ansatz},
          {"seed", r.seed},
          {"total_iterations", r.total_iterations},
          {"final_expectation", r.final_expectation},
          {"final_accuracy", r.final_accuracy ? json(*r.final_accuracy) : json(nullptr)},
          {"final_params", r.final_params},
          {"loss_trace", r.loss_trace},
          {"snapshots", snaps},
          {"stages", stages}};
}

RunRecord run_record_from_json(const json& doc) {
  RunRecord r;
  r.method = doc.at("method").get<std::string>();
  r.instance = doc.at("instance").get<std::string>();
  r.ansatz = doc.at("ansatz").get<std::string>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.total_iterations = doc.at("total_iterations").get<std::size_t>();
  r.final_expectation = doc.at("final_expectation").get<double>();
  if (!doc.at("final_accuracy").is_null()) r.final_accuracy = doc.at("final_accuracy").get<double>();
  r.final_params = doc.at("final_params").get<std::vector<double>>();
  r.loss_trace = doc.at("loss_trace").get<std::vector<double>>();
  const auto& s = doc.at("snapshots");
  const auto n = s.at("iteration").size();
  for (std::size_t i = 0; i < n; ++i) {
    MetricSnapshot m;
    m.iteration = s["iteration"][i].get<std::size_t>();
    m.loss = s["loss"][i].get<double>();
    m.overall_accuracy = s["overall_accuracy"][i].get<double>();
    m.most_likely = s["most_likely"][i].get<Bitstring>();
    m.most_likely_valid = s["most_likely_valid"][i].get<bool>();
    m.best_cut_found = s["best_cut_found"][i].get<std::int64_t>();
    r.snapshots.push_back(m);
  }
  for (const auto& st : doc.at("stages")) {
    StageResult x;
    x.label = st.at("label").get<std::string>();
    x.first_iteration = st.at("first_iteration").get<std::size_t>();
    x.budget = st.at("budget").get<std::size_t>();
    x.progress_threshold = st.at("progress_threshold").get<double>();
    x.params_in = st.at("params_in").get<std::vector<double>>();
    x.params_out = st.at("params_out").get<std::vector<double>>();
    x.iterations_used = st.at("iterations_used").get<std::size_t>();
    x.reason = reason_from_name(st.at("reason").get<std::string>());
    r.stages.push_back(std::move(x));
  }
  return r;
}

json to_json(const CellResult& cell) {
  return {{"record", to_json(cell.record)},
          {"problem",
           {{"kind", to_string(cell.problem.kind)},
            {"n_qubits", cell.problem.n_qubits},
            {"valid_count", cell.problem.valid_count},
            {"optimum_cut", cell.problem.optimum_cut}}}};
}

CellResult cell_from_json(const json& doc) {
  CellResult cell;
  cell.record = run_record_from_json(doc.at("record"));
  const auto& p = doc.at("problem");
  cell.problem.kind = problem_kind_from_string(p.at("kind").get<std::string>());
  cell.problem.n_qubits = p.at("n_qubits").get<std::size_t>();
  cell.problem.valid_count = p.at("valid_count").get<std::uint64_t>();
  cell.problem.optimum_cut = p.at("optimum_cut").get<std::size_t>();
  return cell;
}

void save_cell(const CellResult& cell, const fs::path& path) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("save_cell: cannot write " + tmp.string());
    out << to_json(cell).dump() << '\n';
    if (!out) throw std::runtime_error("save_cell: write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

CellResult load_cell(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_cell: cannot open " + path.string());
  return cell_from_json(json::parse(in));
}

SummaryRow summarize_cell(const CellResult& cell, double window_fraction) {
  const auto& r = cell.record;
  SummaryRow row;
  row.method = r.method;
  row.instance = r.instance;
  row.ansatz = r.ansatz;
  row.seed = r.seed;
  row.final_accuracy = r.final_accuracy.value_or(r.snapshots.empty() ? 0.0 : r.snapshots.back().overall_accuracy);
  row.most_likely_accuracy = most_likely_accuracy(r, window_fraction);
  row.total_iterations = r.total_iterations;
  row.final_expectation = r.final_expectation;
  if (cell.problem.kind == ProblemKind::maxcut) {
    OracleReport oracle;
    oracle.optimum_cut = cell.problem.optimum_cut;
    row.energy_gap = energy_gap(r, oracle, ProblemKind::maxcut, window_fraction);
  }
  return row;
}

std::vector<MethodAggregate> aggregate_by_method(const std::vector<SummaryRow>& rows) {
  std::map<std::string, std::vector<const SummaryRow*>> groups;
  for (const auto& row : rows) groups[row.method].push_back(&row);
  std::vector<MethodAggregate> out;
  for (const auto& [method, members] : groups) {
    std::vector<double> acc, ml, it, gap;
    for (const auto* row : members) {
      acc.push_back(row->final_accuracy);
      ml.push_back(row->most_likely_accuracy);
      it.push_back(static_cast<double>(row->total_iterations));
      if (row->energy_gap) gap.push_back(*row->energy_gap);
    }
    MethodAggregate a;
    a.method = method;
    a.runs = acc.size();
    a.mean_accuracy = mean(acc);
    a.median_accuracy = median(acc);
    a.mean_most_likely = mean(ml);
    a.median_most_likely = median(ml);
    a.mean_iterations = mean(it);
    a.median_iterations = median(it);
    if (!gap.empty()) {
      a.mean_energy_gap = mean(gap);
      a.median_energy_gap = median(gap);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::size_t worker_count(std::size_t fallback) {
  if (const char* env = std::getenv("SHA_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(fallback, 1);
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);
}

std::string opt_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

void write_summary_files(const fs::path& dir, const std::vector<CellResult>& cells,
                         const std::vector<SummaryRow>& unsorted, const std::vector<MethodAggregate>& aggregates) {
  if (cells.size() != unsorted.size()) throw std::invalid_argument("write_summary_files: cells and rows differ in size");
  fs::create_directories(dir);
  // Row order is fixed by key so online and offline summaries are byte-identical.
  std::vector<std::size_t> order(unsorted.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = unsorted[a];
    const auto& y = unsorted[b];
    return std::tie(x.method, x.instance, x.ansatz, x.seed) < std::tie(y.method, y.instance, y.ansatz, y.seed);
  });
  std::vector<SummaryRow> rows;
  for (auto i : order) rows.push_back(unsorted[i]);

  std::ostringstream summary;
  summary << "method,instance,ansatz,seed,final_accuracy,most_likely_accuracy,total_iterations,energy_gap,"
             "final_expectation\n";
  for (const auto& r : rows) {
    summary << r.method << ',' << r.instance << ',' << r.ansatz << ',' << r.seed << ','
            << format_double(r.final_accuracy) << ',' << format_double(r.most_likely_accuracy) << ','
            << r.total_iterations << ',' << opt_cell(r.energy_gap) << ',' << format_double(r.final_expectation)
            << '\n';
  }
  write_text(dir / "summary.csv", summary.str());

  std::ostringstream by_method;
  by_method << "method,runs,mean_accuracy,median_accuracy,mean_most_likely,median_most_likely,"
               "mean_iterations,median_iterations,mean_energy_gap,median_energy_gap\n";
  for (const auto& a : aggregates) {
    by_method << a.method << ',' << a.runs << ',' << format_double(a.mean_accuracy) << ','
              << format_double(a.median_accuracy) << ',' << format_double(a.mean_most_likely) << ','
              << format_double(a.median_most_likely) << ',' << format_double(a.mean_iterations) << ','
              << format_double(a.median_iterations) << ',' << opt_cell(a.mean_energy_gap) << ','
              << opt_cell(a.median_energy_gap) << '\n';
  }
  write_text(dir / "summary_by_method.csv", by_method.str());

  // Tidy per-figure tables: one row per run, one value column.
  const std::string header = "method,instance,ansatz,seed,value\n";
  std::ostringstream acc, ml2, ml3, iters, gap, strategies;
  acc << header;
  ml2 << header;
  ml3 << header;
  iters << header;
  gap << header;
  strategies << "strategy,partitions,instance,ansatz,seed,value\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string key = r.method + ',' + r.instance + ',' + r.ansatz + ',' + std::to_string(r.seed) + ',';
    acc << key << format_double(r.final_accuracy) << '\n';
    ml2 << key << format_double(most_likely_accuracy(cells[order[i]].record, 0.02)) << '\n';
    ml3 << key << format_double(most_likely_accuracy(cells[order[i]].record, 0.03)) << '\n';
    iters << key << r.total_iterations << '\n';
    if (r.energy_gap) gap << key << format_double(*r.energy_gap) << '\n';
    if (r.method.starts_with("sha:")) {
      const auto spec = parse_strategy(r.method.substr(4));
      strategies << spec.to_string().substr(0, 2) << ',' << spec.count << ',' << r.instance << ',' << r.ansatz
                 << ',' << r.seed << ',' << format_double(r.final_accuracy) << '\n';
    }
  }
  write_text(dir / "fig_accuracy.csv", acc.str());
  write_text(dir / "fig_most_likely_2pct.csv", ml2.str());
  write_text(dir / "fig_most_likely_3pct.csv", ml3.str());
  write_text(dir / "fig_iterations.csv", iters.str());
  write_text(dir / "fig_strategies.csv", strategies.str());
  if (std::any_of(rows.begin(), rows.end(), [](const SummaryRow& r) { return r.energy_gap.has_value(); })) {
    write_text(dir / "fig_energy_gap.csv", gap.str());
  }
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  struct Prepared {
    ProblemInstance instance;
    OracleReport oracle;
  };
  std::vector<Prepared> prepared;
  for (const auto& spec : cfg.instances) {
    auto inst = build_instance(spec, cfg.kind, cfg.colors);
    auto oracle = brute_force_oracle(inst);
    prepared.push_back({std::move(inst), std::move(oracle)});
  }

  struct Cell {
    std::size_t instance;
    MethodSpec method;
    std::string ansatz;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    for (const auto& m : cfg.methods) {
      const auto method = parse_method(m);
      const std::size_t n_ansatze = method.uses_ansatz() ? cfg.ansatze.size() : 1;
      for (std::size_t a = 0; a < n_ansatze; ++a) {
        for (auto seed : cfg.seeds) cells.push_back({i, method, cfg.ansatze[a], seed});
      }
    }
  }

  std::vector<std::optional<CellResult>> results(cells.size());
  std::vector<std::optional<std::string>> errors(cells.size());
  std::atomic<std::size_t> next{0};
  const fs::path records_dir = cfg.output_dir / "records";
  fs::create_directories(records_dir);

  auto work = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      const auto& cell = cells[c];
      const auto& prep = prepared[cell.instance];
      try {
        TrainSettings settings;
        settings.optimizer = cfg.optimizer;
        settings.partial_progress_threshold = cfg.partial_progress_threshold;
        settings.shots = cfg.shots;
        settings.oracle = &prep.oracle;
        CellResult result;
        result.record = run_method(cell.method, prep.instance, find_template(cell.ansatz), cfg.layers, cell.seed,
                                   settings);
        result.problem = {prep.instance.kind, prep.instance.n_qubits(), prep.oracle.valid_count,
                          prep.oracle.optimum_cut};
        const auto& r = result.record;
        save_cell(result, records_dir / (sanitize(r.method) + "__" + r.instance + "__" + r.ansatz + "__s" +
                                         std::to_string(r.seed) + ".json"));
        results[c] = std::move(result);
      } catch (const std::exception& e) {
        errors[c] = e.what();
      }
    }
  };

  const std::size_t n_workers = std::min(worker_count(cfg.workers), std::max<std::size_t>(cells.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();

  ExperimentOutcome outcome;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (results[c]) {
      outcome.rows.push_back(summarize_cell(*results[c], cfg.window_fraction));
      outcome.cells.push_back(std::move(*results[c]));
    } else {
      const auto& cell = cells[c];
      outcome.failures.push_back({cell.method.to_string(), prepared[cell.instance].instance.name,
                                  cell.method.uses_ansatz() ? cell.ansatz : "qaoa", cell.seed,
                                  errors[c].value_or("unknown error")});
    }
  }
  outcome.aggregates = aggregate_by_method(outcome.rows);
  write_summary_files(cfg.output_dir, outcome.cells, outcome.rows, outcome.aggregates);
  if (!outcome.failures.empty()) {
    json failures = json::array();
    for (const auto& f : outcome.failures) {
      failures.push_back({{"method", f.method}, {"instance", f.instance}, {"ansatz", f.ansatz},
                          {"seed", f.seed}, {"error", f.error}});
    }
    write_text(cfg.output_dir / "failures.json", failures.dump(2) + "\n");
  }
  return outcome;
}

ExperimentOutcome summarize_directory(const fs::path& dir, double window_fraction) {
  ExperimentOutcome outcome;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir / "records")) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto cell = load_cell(f);
    outcome.rows.push_back(summarize_cell(cell, window_fraction));
    outcome.cells.push_back(std::move(cell));
  }
  outcome.aggregates = aggregate_by_method(outcome.rows);
  write_summary_files(dir, outcome.cells, outcome.rows, outcome.aggregates);
  return outcome;
}

}  // namespace sha
