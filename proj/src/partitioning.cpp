#include "sha/partitioning.hpp"

#include <algorithm>
#include <charconv>
#include <iostream>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "sha/rng.hpp"

namespace sha {

PartitionSchedule::PartitionSchedule(std::size_t n_terms, std::vector<std::vector<std::size_t>> parts)
    : n_terms_(n_terms) {
  std::vector<bool> covered(n_terms, false);
  std::vector<std::size_t> running;
  for (auto& part : parts) {
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());
    if (part.empty()) continue;
    if (part.back() >= n_terms) throw std::invalid_argument("PartitionSchedule: term index out of range");
    for (auto i : part) covered[i] = true;
    std::vector<std::size_t> merged;
    std::set_union(running.begin(), running.end(), part.begin(), part.end(), std::back_inserter(merged));
    running = std::move(merged);
    parts_.push_back(std::move(part));
    cumulative_.push_back(running);
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw std::invalid_argument("PartitionSchedule: partitions do not cover every term");
  }
  if (parts_.empty() && n_terms == 0) {
    // An empty Hamiltonian still gets one (empty) stage to train against.
    parts_.emplace_back();
    cumulative_.emplace_back();
  }
}

namespace {

std::vector<std::vector<std::size_t>> balanced_blocks(const std::vector<std::size_t>& order, std::size_t m) {
  const std::size_t n = order.size();
  std::vector<std::vector<std::size_t>> blocks(m);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < m; ++b) {
    const std::size_t len = n / m + (b < n % m ? 1 : 0);
    blocks[b].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                     order.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return blocks;
}

void check_count(std::size_t m, std::size_t n_terms, const char* who) {
  if (m < 1 || m > n_terms) {
    throw std::invalid_argument(std::string(who) + ": partition count " + std::to_string(m) +
                                " outside [1, " + std::to_string(n_terms) + "]");
  }
}

std::vector<std::vector<std::size_t>> terms_by_node_label(const ProblemInstance& inst,
                                                          const std::vector<std::size_t>& label,
                                                          std::size_t n_labels) {
  std::vector<std::vector<std::size_t>> parts(n_labels);
  for (std::size_t t = 0; t < inst.term_edge.size(); ++t) {
    const auto [u, v] = inst.graph.edges()[inst.term_edge[t]];
    parts[label[std::min(u, v)]].push_back(t);
  }
  return parts;
}

}  // namespace

PartitionSchedule sequential_partition(std::size_t n_terms, std::size_t m) {
  check_count(m, n_terms, "sequential_partition");
  std::vector<std::size_t> order(n_terms);
  std::iota(order.begin(), order.end(), 0);
  return PartitionSchedule(n_terms, balanced_blocks(order, m));
}

PartitionSchedule random_partition(std::size_t n_terms, std::size_t m, std::uint64_t seed) {
  check_count(m, n_terms, "random_partition");
  std::vector<std::size_t> order(n_terms);
  std::iota(order.begin(), order.end(), 0);
  CounterRng rng(CounterRng::derive(seed, 0x7264));
  shuffle(order.begin(), order.end(), rng);
  return PartitionSchedule(n_terms, balanced_blocks(order, m));
}

std::vector<std::size_t> kmeans_node_labels(const Graph& g, std::size_t k, std::uint64_t seed) {
  constexpr int kRestarts = 10;
  constexpr int kMaxIter = 300;
  const std::size_t n = g.n_nodes();
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: k outside [1, n_nodes]");

  std::vector<std::vector<double>> x(n, std::vector<double>(n, 0.0));
  for (auto [u, v] : g.edges()) x[u][v] = x[v][u] = 1.0;
  auto dist2 = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return d;
  };

  std::vector<std::size_t> best_label(n, 0);
  double best_inertia = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < kRestarts; ++restart) {
    CounterRng rng(CounterRng::derive(seed, 0x6b6d + static_cast<std::uint64_t>(restart)));

    // k-means++ seeding.
    std::vector<std::vector<double>> centers;
    centers.push_back(x[rng.below(n)]);
    std::vector<double> closest(n);
    while (centers.size() < k) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        closest[i] = std::numeric_limits<double>::infinity();
        for (const auto& c : centers) closest[i] = std::min(closest[i], dist2(x[i], c));
        total += closest[i];
      }
      std::size_t pick = 0;
      if (total > 0.0) {
        double u = rng.uniform() * total;
        for (pick = 0; pick + 1 < n; ++pick) {
          if (u < closest[pick]) break;
          u -= closest[pick];
        }
        while (closest[pick] == 0.0 && pick > 0) --pick;
      } else {
        pick = rng.below(n);
      }
      centers.push_back(x[pick]);
    }

    // Lloyd iterations.
    std::vector<std::size_t> label(n, 0);
    for (int it = 0; it < kMaxIter; ++it) {
      bool changed = it == 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t arg = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
          const double d = dist2(x[i], centers[c]);
          if (d < best) {
            best = d;
            arg = c;
          }
        }
        if (label[i] != arg) changed = true;
        label[i] = arg;
      }
      if (!changed) break;
      for (std::size_t c = 0; c < k; ++c) {
        std::vector<double> mean(n, 0.0);
        std::size_t members = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (label[i] != c) continue;
          ++members;
          for (std::size_t d = 0; d < n; ++d) mean[d] += x[i][d];
        }
        if (members == 0) continue;  // keep the old center
        for (auto& v : mean) v /= static_cast<double>(members);
        centers[c] = std::move(mean);
      }
    }
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) inertia += dist2(x[i], centers[label[i]]);
    if (inertia < best_inertia) {
      best_inertia = inertia;
      best_label = label;
    }
  }

  // Renumber clusters by first appearance in node order.
  std::vector<std::size_t> remap(k, k);
  std::size_t next = 0;
  for (auto& l : best_label) {
    if (remap[l] == k) remap[l] = next++;
    l = remap[l];
  }
  return best_label;
}

PartitionSchedule kmeans_partition(const ProblemInstance& instance, std::size_t m, std::uint64_t seed) {
  const std::size_t n = instance.graph.n_nodes();
  if (m < 2 || m > n) {
    throw std::invalid_argument("kmeans_partition: cluster count " + std::to_string(m) +
                                " outside [2, " + std::to_string(n) + "]");
  }
  const auto labels = kmeans_node_labels(instance.graph, m, seed);
  auto parts = terms_by_node_label(instance, labels, m);
  const auto empty = static_cast<std::size_t>(
      std::count_if(parts.begin(), parts.end(), [](const auto& p) { return p.empty(); }));
  if (empty > 0) {
    std::clog << "warning: kmeans_partition dropped " << empty << " empty partition(s) of " << m << '\n';
  }
  return PartitionSchedule(instance.hamiltonian.size(), std::move(parts));
}

std::vector<std::vector<std::size_t>> bfs_node_groups(const Graph& g, std::size_t j) {
  const std::size_t n = g.n_nodes();
  if (j < 1 || j > n) throw std::invalid_argument("bfs_node_groups: group count out of range");
  const auto adj = g.adjacency_lists();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> order;
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    seen[root] = true;
    while (!frontier.empty()) {
      const auto u = frontier.front();
      frontier.pop();
      order.push_back(u);
      for (auto v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          frontier.push(v);
        }
      }
    }
  }
  return balanced_blocks(order, j);
}

PartitionSchedule nodewise_partition(const ProblemInstance& instance, std::size_t j) {
  const std::size_t n = instance.graph.n_nodes();
  if (j < 2 || j > n) {
    throw std::invalid_argument("nodewise_partition: group count " + std::to_string(j) +
                                " outside [2, " + std::to_string(n) + "]");
  }
  const auto groups = bfs_node_groups(instance.graph, j);
  std::vector<std::size_t> group_of(n);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (auto v : groups[g]) group_of[v] = g;
  }
  std::vector<std::vector<std::size_t>> parts(j);
  for (std::size_t t = 0; t < instance.term_edge.size(); ++t) {
    const auto [u, v] = instance.graph.edges()[instance.term_edge[t]];
    parts[group_of[u]].push_back(t);
    if (group_of[v] != group_of[u]) parts[group_of[v]].push_back(t);
  }
  return PartitionSchedule(instance.hamiltonian.size(), std::move(parts));
}

std::string StrategySpec::to_string() const {
  const char* prefix = "nw";
  switch (kind) {
    case StrategyKind::random: prefix = "rd"; break;
    case StrategyKind::sequential: prefix = "sq"; break;
    case StrategyKind::cluster: prefix = "cl"; break;
    case StrategyKind::nodewise: prefix = "nw"; break;
  }
  return std::string(prefix) + ":" + std::to_string(count);
}

StrategySpec parse_strategy(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("strategy '" + std::string(text) + "' must look like rd:<m>, sq:<m>, cl:<m> or nw:<j>");
  }
  const auto prefix = text.substr(0, colon);
  const auto number = text.substr(colon + 1);
  StrategySpec spec;
  if (prefix == "rd") spec.kind = StrategyKind::random;
  else if (prefix == "sq") spec.kind = StrategyKind::sequential;
  else if (prefix == "cl") spec.kind = StrategyKind::cluster;
  else if (prefix == "nw") spec.kind = StrategyKind::nodewise;
  else throw std::invalid_argument("unknown strategy prefix '" + std::string(prefix) + "'");
  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), spec.count);
  if (ec != std::errc{} || ptr != number.data() + number.size() || spec.count == 0) {
    throw std::invalid_argument("strategy '" + std::string(text) + "' has an invalid count");
  }
  return spec;
}

PartitionSchedule make_schedule(const StrategySpec& spec, const ProblemInstance& instance,
                                std::uint64_t seed) {
  const std::size_t n_terms = instance.hamiltonian.size();
  switch (spec.kind) {
    case StrategyKind::random: return random_partition(n_terms, spec.count, seed);
    case StrategyKind::sequential: return sequential_partition(n_terms, spec.count);
    case StrategyKind::cluster: return kmeans_partition(instance, spec.count, seed);
    case StrategyKind::nodewise: return nodewise_partition(instance, spec.count);
  }
  throw std::logic_error("unreachable");
}

}  // namespace sha
