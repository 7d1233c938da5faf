#include "sha/training.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

#include "sha/rng.hpp"

namespace sha {

bool RunRecord::operator==(const RunRecord& o) const {
  return method == o.method && instance == o.instance && ansatz == o.ansatz && seed == o.seed &&
         loss_trace == o.loss_trace && snapshots == o.snapshots && stages == o.stages &&
         final_params == o.final_params && total_iterations == o.total_iterations &&
         final_expectation == o.final_expectation && final_accuracy == o.final_accuracy;
}

namespace {

std::vector<std::size_t> index_range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> idx(last - first);
  std::iota(idx.begin(), idx.end(), first);
  return idx;
}

// Drives the stages of one run: owns the global evaluation counter, splits
// the iteration budget and appends every evaluation to the record.
class Trainer {
 public:
  Trainer(const ProblemInstance& instance, std::uint64_t seed, const TrainSettings& settings,
          std::size_t n_stages, RunRecord& record)
      : instance_(instance), seed_(seed), settings_(settings), record_(record), n_stages_(n_stages) {
    settings_.optimizer.validate();
    if (settings_.shots < 1) throw std::invalid_argument("TrainSettings: shots must be >= 1");
    if (n_stages_ < 1) throw std::invalid_argument("Trainer: at least one stage required");
    const std::size_t total = settings_.optimizer.max_iterations;
    const std::size_t even = total / n_stages_;
    budgets_.assign(n_stages_, std::max<std::size_t>(even, 1));
    budgets_.back() = total > even * (n_stages_ - 1) ? total - even * (n_stages_ - 1) : 1;
    objective_ = instance_.objective();
    record_.seed = seed;
    record_.instance = instance_.name;
  }

  /// Minimizes <h> over the parameters listed in `trainable`; all others stay
  /// frozen at their values in `params`. Returns the full parameter vector.
  std::vector<double> run_stage(const ParamCircuit& circuit, const DiagonalHamiltonian& h,
                                std::vector<double> params, const std::vector<std::size_t>& trainable,
                                std::string label) {
    if (stage_ >= n_stages_) throw std::logic_error("Trainer: more stages than planned");
    if (circuit.n_qubits() != instance_.n_qubits()) {
      throw std::invalid_argument("training: circuit acts on " + std::to_string(circuit.n_qubits()) +
                                  " qubits, instance needs " + std::to_string(instance_.n_qubits()));
    }
    const bool final_stage = stage_ + 1 == n_stages_;
    StageResult stage;
    stage.label = std::move(label);
    stage.first_iteration = record_.loss_trace.size();
    stage.progress_threshold = final_stage ? settings_.optimizer.progress_threshold
                                           : settings_.partial_progress_threshold;
    const std::size_t remaining = settings_.optimizer.max_iterations - record_.loss_trace.size();
    stage.budget = std::min(budgets_[stage_], remaining);
    stage.params_in = params;
    ++stage_;

    const auto spectrum = h.spectrum();
    auto evaluate = [&](std::span<const double> full) {
      const auto probs = run_circuit(circuit, full).probabilities();
      const auto counts = sample(probs, settings_.shots, CounterRng::derive(seed_, record_.loss_trace.size()));
      const double loss = expectation_from_counts(spectrum, counts);
      record_.snapshots.push_back(
          make_snapshot(record_.loss_trace.size(), loss, counts, instance_, settings_.oracle));
      record_.loss_trace.push_back(loss);
      if (settings_.keep_shots) record_.shot_trace.push_back(counts);
      return loss;
    };

    if (stage.budget == 0) {
      stage.reason = StopReason::budget;
    } else if (h.is_constant()) {
      // Nothing to optimize: one evaluation records the constant loss.
      evaluate(params);
      stage.reason = StopReason::progress;
    } else {
      std::vector<double> full = params;
      std::vector<double> x0;
      for (auto i : trainable) x0.push_back(params[i]);
      Objective f = [&](std::span<const double> x) {
        for (std::size_t k = 0; k < trainable.size(); ++k) full[trainable[k]] = x[k];
        return evaluate(full);
      };
      OptimizerConfig cfg = settings_.optimizer;
      cfg.max_iterations = stage.budget;
      cfg.progress_threshold = stage.progress_threshold;
      const auto result = minimize(f, std::move(x0), cfg);
      for (std::size_t k = 0; k < trainable.size(); ++k) params[trainable[k]] = result.x[k];
      stage.reason = result.reason;
    }
    stage.iterations_used = record_.loss_trace.size() - stage.first_iteration;
    stage.params_out = params;
    record_.stages.push_back(std::move(stage));
    return params;
  }

  void finish(const ParamCircuit& circuit, const std::vector<double>& params) {
    record_.final_params = params;
    record_.total_iterations = record_.loss_trace.size();
    const auto state = run_circuit(circuit, params);
    record_.final_expectation = expectation_exact(objective_, state.amplitudes());
    if (settings_.oracle) {
      record_.final_accuracy = exact_accuracy(state.probabilities(), *settings_.oracle, instance_.kind);
    }
  }

  const DiagonalHamiltonian& objective() const { return objective_; }

 private:
  const ProblemInstance& instance_;
  std::uint64_t seed_;
  TrainSettings settings_;
  RunRecord& record_;
  std::size_t n_stages_;
  std::size_t stage_ = 0;
  std::vector<std::size_t> budgets_;
  DiagonalHamiltonian objective_;
};

void check_schedule(const PartitionSchedule& schedule, const ProblemInstance& instance) {
  if (schedule.n_terms() != instance.hamiltonian.size()) {
    throw std::invalid_argument("schedule covers " + std::to_string(schedule.n_terms()) +
                                " terms but the instance has " + std::to_string(instance.hamiltonian.size()));
  }
}

void require_identity(const AnsatzTemplate& t, const char* who) {
  if (!t.identity_at_zero) {
    throw std::invalid_argument(std::string(who) + ": template '" + t.id +
                                "' is not identity at zero, zero-initialized growth would change the state");
  }
}

std::string stage_label(std::size_t k, std::size_t m) {
  return "S" + std::to_string(k + 1) + "/" + std::to_string(m);
}

// Runs the SHA stage sequence on a fixed circuit.
std::vector<double> run_sha_stages(Trainer& trainer, const ParamCircuit& circuit, std::vector<double> params,
                                   const std::vector<std::size_t>& trainable, const PartitionSchedule& schedule,
                                   const std::string& prefix) {
  const auto& stages = schedule.cumulative();
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto h = partial_hamiltonian(trainer.objective(), stages[k]);
    params = trainer.run_stage(circuit, h, std::move(params), trainable, prefix + stage_label(k, stages.size()));
  }
  return params;
}

// Shared growth loop of layerwise learning and Layer-VQE, optionally with SHA inside each growth stage.
RunRecord grow(const ProblemInstance& instance, const AnsatzTemplate& t, std::size_t layers, std::uint64_t seed,
               const TrainSettings& settings, bool layer_vqe, const PartitionSchedule* schedule) {
  require_identity(t, layer_vqe ? "train_layer_vqe" : "train_layerwise");
  if (layers < 1) throw std::invalid_argument("layer count must be >= 1");
  if (schedule) check_schedule(*schedule, instance);
  const std::size_t n = instance.n_qubits();
  const std::size_t per_growth = schedule ? schedule->size() : 1;
  const std::size_t n_stages = layers * per_growth + (layer_vqe ? 0 : 1);

  RunRecord record;
  record.ansatz = t.id;
  Trainer trainer(instance, seed, settings, n_stages, record);
  std::vector<double> params;
  ParamCircuit circuit;
  for (std::size_t l = 1; l <= layers; ++l) {
    circuit = build_ansatz(t, n, l);
    if (layer_vqe) circuit = prepend_ry_layer(circuit);
    const std::size_t old = params.size();
    params.resize(circuit.n_params(), 0.0);
    const auto trainable = layer_vqe ? index_range(0, params.size()) : index_range(old, params.size());
    const std::string prefix = "L" + std::to_string(l);
    if (schedule) {
      params = run_sha_stages(trainer, circuit, std::move(params), trainable, *schedule, prefix + ":");
    } else {
      params = trainer.run_stage(circuit, trainer.objective(), std::move(params), trainable, prefix);
    }
  }
  if (!layer_vqe) {
    params = trainer.run_stage(circuit, trainer.objective(), std::move(params), index_range(0, params.size()),
                               "phase2");
  }
  trainer.finish(circuit, params);
  return record;
}

}  // namespace

RunRecord train_vqe(const ProblemInstance& instance, const ParamCircuit& ansatz, std::uint64_t seed,
                    const TrainSettings& settings) {
  RunRecord record;
  record.method = "vqe";
  Trainer trainer(instance, seed, settings, 1, record);
  auto params = trainer.run_stage(ansatz, trainer.objective(), std::vector<double>(ansatz.n_params(), 0.0),
                                  index_range(0, ansatz.n_params()), "full");
  trainer.finish(ansatz, params);
  return record;
}

RunRecord train_sha(const ProblemInstance& instance, const ParamCircuit& ansatz,
                    const PartitionSchedule& schedule, std::uint64_t seed, const TrainSettings& settings) {
  check_schedule(schedule, instance);
  RunRecord record;
  record.method = "sha";
  Trainer trainer(instance, seed, settings, schedule.size(), record);
  auto params = run_sha_stages(trainer, ansatz, std::vector<double>(ansatz.n_params(), 0.0),
                               index_range(0, ansatz.n_params()), schedule, "");
  trainer.finish(ansatz, params);
  return record;
}

RunRecord train_layerwise(const ProblemInstance& instance, const AnsatzTemplate& t, std::size_t layers,
                          std::uint64_t seed, const TrainSettings& settings) {
  auto record = grow(instance, t, layers, seed, settings, false, nullptr);
  record.method = "ll";
  return record;
}

RunRecord train_layer_vqe(const ProblemInstance& instance, const AnsatzTemplate& t, std::size_t layers,
                          std::uint64_t seed, const TrainSettings& settings) {
  auto record = grow(instance, t, layers, seed, settings, true, nullptr);
  record.method = "lvqe";
  return record;
}

RunRecord train_qaoa(const ProblemInstance& instance, std::size_t p, std::uint64_t seed,
                     const TrainSettings& settings) {
  RunRecord record;
  record.method = "qaoa:" + std::to_string(p);
  record.ansatz = "qaoa";
  Trainer trainer(instance, seed, settings, 1, record);
  const auto circuit = qaoa_circuit(trainer.objective(), p);
  auto params = trainer.run_stage(circuit, trainer.objective(), qaoa_initial_params(p),
                                  index_range(0, circuit.n_params()), "full");
  trainer.finish(circuit, params);
  return record;
}

std::size_t qaoa_stage_for_layer(std::size_t layer, std::size_t p, std::size_t n_stages) {
  if (layer < 1 || layer > p) throw std::invalid_argument("qaoa_stage_for_layer: layer outside [1, p]");
  return (layer * n_stages + p - 1) / p - 1;  // ceil(l*M/p), 0-based
}

RunRecord train_sha_hybrid(HybridBase base, const ProblemInstance& instance, const AnsatzTemplate& t,
                           std::size_t layers, const PartitionSchedule& schedule, std::size_t qaoa_p,
                           std::uint64_t seed, const TrainSettings& settings) {
  switch (base) {
    case HybridBase::layerwise: {
      auto record = grow(instance, t, layers, seed, settings, false, &schedule);
      record.method = "sha+ll";
      return record;
    }
    case HybridBase::layer_vqe: {
      auto record = grow(instance, t, layers, seed, settings, true, &schedule);
      record.method = "sha+lvqe";
      return record;
    }
    case HybridBase::qaoa:
      break;
  }
  check_schedule(schedule, instance);
  if (qaoa_p < 1) throw std::invalid_argument("train_sha_hybrid: p must be >= 1");
  RunRecord record;
  record.method = "sha+qaoa";
  record.ansatz = "qaoa";
  Trainer trainer(instance, seed, settings, qaoa_p, record);
  const auto init = qaoa_initial_params(qaoa_p);
  std::vector<DiagonalHamiltonian> costs;
  std::vector<double> params;
  ParamCircuit circuit;
  for (std::size_t l = 1; l <= qaoa_p; ++l) {
    const auto k = qaoa_stage_for_layer(l, qaoa_p, schedule.size());
    costs.push_back(partial_hamiltonian(trainer.objective(), schedule.cumulative()[k]));
    circuit = qaoa_circuit(costs);
    params.push_back(init[2 * (l - 1)]);
    params.push_back(init[2 * (l - 1) + 1]);
    params = trainer.run_stage(circuit, costs.back(), std::move(params), index_range(0, params.size()),
                               "L" + std::to_string(l) + ":" + stage_label(k, schedule.size()));
  }
  trainer.finish(circuit, params);
  return record;
}

std::string MethodSpec::to_string() const {
  const std::string s = strategy ? strategy->to_string() : "";
  switch (kind) {
    case MethodKind::vqe: return "vqe";
    case MethodKind::sha: return "sha:" + s;
    case MethodKind::layerwise: return "ll";
    case MethodKind::layer_vqe: return "lvqe";
    case MethodKind::qaoa: return "qaoa:" + std::to_string(qaoa_p);
    case MethodKind::sha_layerwise: return "sha+ll:" + s;
    case MethodKind::sha_layer_vqe: return "sha+lvqe:" + s;
    case MethodKind::sha_qaoa: return "sha+qaoa:" + s + ":" + std::to_string(qaoa_p);
  }
  return "?";
}

namespace {

std::size_t parse_count(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw std::invalid_argument("method '" + std::string(whole) + "' has an invalid depth");
  }
  return value;
}

}  // namespace

MethodSpec parse_method(std::string_view text) {
  MethodSpec spec;
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto need_rest = [&] {
    if (rest.empty()) throw std::invalid_argument("method '" + std::string(text) + "' needs an argument");
  };
  if (head == "vqe" && rest.empty()) {
    spec.kind = MethodKind::vqe;
  } else if (head == "ll" && rest.empty()) {
    spec.kind = MethodKind::layerwise;
  } else if (head == "lvqe" && rest.empty()) {
    spec.kind = MethodKind::layer_vqe;
  } else if (head == "qaoa") {
    need_rest();
    spec.kind = MethodKind::qaoa;
    spec.qaoa_p = parse_count(rest, text);
  } else if (head == "sha" || head == "sha+ll" || head == "sha+lvqe") {
    need_rest();
    spec.kind = head == "sha" ? MethodKind::sha : head == "sha+ll" ? MethodKind::sha_layerwise
                                                                     : MethodKind::sha_layer_vqe;
    spec.strategy = parse_strategy(rest);
  } else if (head == "sha+qaoa") {
    need_rest();
    const auto last = rest.rfind(':');
    if (last == std::string_view::npos || rest.find(':') == last) {
      throw std::invalid_argument("method '" + std::string(text) + "' must look like sha+qaoa:<strategy>:<p>");
    }
    spec.kind = MethodKind::sha_qaoa;
    spec.strategy = parse_strategy(rest.substr(0, last));
    spec.qaoa_p = parse_count(rest.substr(last + 1), text);
  } else {
    throw std::invalid_argument("unknown method '" + std::string(text) + "'");
  }
  return spec;
}

RunRecord run_method(const MethodSpec& method, const ProblemInstance& instance, const AnsatzTemplate& t,
                     std::size_t layers, std::uint64_t seed, const TrainSettings& settings) {
  RunRecord record;
  auto schedule = [&] { return make_schedule(*method.strategy, instance, seed); };
  switch (method.kind) {
    case MethodKind::vqe:
      record = train_vqe(instance, build_ansatz(t, instance.n_qubits(), layers), seed, settings);
      break;
    case MethodKind::sha:
      record = train_sha(instance, build_ansatz(t, instance.n_qubits(), layers), schedule(), seed, settings);
      break;
    case MethodKind::layerwise:
      record = train_layerwise(instance, t, layers, seed, settings);
      break;
    case MethodKind::layer_vqe:
      record = train_layer_vqe(instance, t, layers, seed, settings);
      break;
    case MethodKind::qaoa:
      record = train_qaoa(instance, method.qaoa_p, seed, settings);
      break;
    case MethodKind::sha_layerwise:
      record = train_sha_hybrid(HybridBase::layerwise, instance, t, layers, schedule(), 0, seed, settings);
      break;
    case MethodKind::sha_layer_vqe:
      record = train_sha_hybrid(HybridBase::layer_vqe, instance, t, layers, schedule(), 0, seed, settings);
      break;
    case MethodKind::sha_qaoa:
      record = train_sha_hybrid(HybridBase::qaoa, instance, t, layers, schedule(), method.qaoa_p, seed, settings);
      break;
  }
  record.method = method.to_string();
  if (method.uses_ansatz()) record.ansatz = t.id;
  return record;
}

}  // namespace sha
