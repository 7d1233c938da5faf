#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "sha/partitioning.hpp"
#include "sha/rng.hpp"

namespace sha {
namespace {

std::vector<std::size_t> iota(std::size_t a, std::size_t b) {
  std::vector<std::size_t> v(b - a);
  std::iota(v.begin(), v.end(), a);
  return v;
}

std::vector<std::size_t> terms_of_edges(const ProblemInstance& inst, std::set<std::size_t> edges) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < inst.term_edge.size(); ++t) {
    if (edges.contains(inst.term_edge[t])) out.push_back(t);
  }
  return out;
}

void expect_valid_schedule(const PartitionSchedule& s) {
  ASSERT_FALSE(s.cumulative().empty());
  EXPECT_EQ(s.cumulative().back(), iota(0, s.n_terms()));
  for (std::size_t k = 1; k < s.cumulative().size(); ++k) {
    EXPECT_TRUE(std::includes(s.cumulative()[k].begin(), s.cumulative()[k].end(), s.cumulative()[k - 1].begin(),
                              s.cumulative()[k - 1].end()));
  }
}

void expect_disjoint(const PartitionSchedule& s) {
  std::size_t total = 0;
  for (const auto& p : s.partitions()) total += p.size();
  EXPECT_EQ(total, s.n_terms());
}

TEST(Sequential, Examples) {
  EXPECT_EQ(sequential_partition(10, 2).partitions(), (std::vector<std::vector<std::size_t>>{iota(0, 5), iota(5, 10)}));
  EXPECT_EQ(sequential_partition(10, 1).partitions(), (std::vector<std::vector<std::size_t>>{iota(0, 10)}));
  const auto s = sequential_partition(7, 3);
  EXPECT_EQ(s.partitions()[0].size(), 3u);
  EXPECT_EQ(s.partitions()[1].size(), 2u);
  EXPECT_EQ(s.partitions()[2].size(), 2u);
  EXPECT_THROW(sequential_partition(3, 4), std::invalid_argument);
  EXPECT_THROW(sequential_partition(3, 0), std::invalid_argument);
}

TEST(Random, CoverageDeterminismDisjointness) {
  CounterRng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    const std::size_t m = 1 + rng.below(n);
    const std::uint64_t seed = rng();
    const auto s = random_partition(n, m, seed);
    EXPECT_EQ(s.size(), m);
    expect_valid_schedule(s);
    expect_disjoint(s);
    EXPECT_EQ(s, random_partition(n, m, seed));
  }
}

TEST(Random, SingletonsFormPermutation) {
  const auto s = random_partition(4, 4, 123);
  std::set<std::size_t> seen;
  for (const auto& p : s.partitions()) {
    ASSERT_EQ(p.size(), 1u);
    seen.insert(p[0]);
  }
  EXPECT_EQ(seen, (std::set<std::size_t>{0, 1, 2, 3}));
}

TEST(Schedule, RejectsIncompleteCover) {
  EXPECT_THROW(PartitionSchedule(3, {{0}, {1}}), std::invalid_argument);
  EXPECT_THROW(PartitionSchedule(2, {{0, 1, 2}}), std::invalid_argument);
  const PartitionSchedule empty(0, {});
  EXPECT_EQ(empty.size(), 1u);
}

TEST(Kmeans, TrianglesJoinedByBridge) {
  const Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  const auto inst = coloring_hamiltonian(g, 2);
  const auto labels = kmeans_node_labels(g, 2, 7);
  EXPECT_EQ(labels[0], labels[1]);
  EXPECT_EQ(labels[1], labels[2]);
  EXPECT_EQ(labels[3], labels[4]);
  EXPECT_EQ(labels[4], labels[5]);
  EXPECT_NE(labels[0], labels[3]);
  const auto s = kmeans_partition(inst, 2, 7);
  ASSERT_EQ(s.size(), 2u);
  const auto left = terms_of_edges(inst, {0, 1, 2});   // edges (0,1) (0,2) (1,2)
  const auto right = terms_of_edges(inst, {4, 5, 6});  // edges (3,4) (3,5) (4,5)
  const auto& p0 = s.partitions()[0];
  const auto& p1 = s.partitions()[1];
  auto contains_all = [](const std::vector<std::size_t>& hay, const std::vector<std::size_t>& needles) {
    return std::includes(hay.begin(), hay.end(), needles.begin(), needles.end());
  };
  EXPECT_TRUE((contains_all(p0, left) && contains_all(p1, right)) || (contains_all(p0, right) && contains_all(p1, left)));
  EXPECT_EQ(s, kmeans_partition(inst, 2, 7));
  expect_valid_schedule(s);
  expect_disjoint(s);
}

TEST(Kmeans, OneClusterPerNode) {
  const auto g = gnp_random_graph(6, 0.6, 4);
  const auto labels = kmeans_node_labels(g, 6, 2);
  EXPECT_EQ(std::set<std::size_t>(labels.begin(), labels.end()).size(), 6u);
}

TEST(Nodewise, PathGraph) {
  const auto inst = maxcut_hamiltonian(Graph(4, {{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(bfs_node_groups(inst.graph, 2), (std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}}));
  const auto s = nodewise_partition(inst, 2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.partitions()[0], terms_of_edges(inst, {0, 1}));
  EXPECT_EQ(s.partitions()[1], terms_of_edges(inst, {1, 2}));
}

TEST(Nodewise, TriangleOneGroupPerNode) {
  const auto inst = coloring_hamiltonian(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), 4);
  const auto s = nodewise_partition(inst, 3);
  ASSERT_EQ(s.size(), 3u);
  std::vector<std::size_t> appearances(inst.hamiltonian.size(), 0);
  for (const auto& p : s.partitions()) {
    EXPECT_EQ(p.size(), 2u * 4u);
    for (auto t : p) ++appearances[t];
  }
  for (auto a : appearances) EXPECT_EQ(a, 2u);
  // Node 0 touches edges (0,1) and (0,2).
  EXPECT_EQ(s.partitions()[0], terms_of_edges(inst, {0, 1}));
}

TEST(Strategies, CoverageAndMonotonicityOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gnp_random_graph(7, 0.5, seed);
    if (g.edges().size() < 4) continue;
    for (auto kind : {ProblemKind::coloring, ProblemKind::maxcut}) {
      const auto inst = kind == ProblemKind::coloring ? coloring_hamiltonian(g, 2) : maxcut_hamiltonian(g);
      for (const char* text : {"rd:3", "sq:4", "cl:3", "nw:2", "nw:7"}) {
        const auto s = make_schedule(parse_strategy(text), inst, seed);
        expect_valid_schedule(s);
        if (text[0] == 'r' || text[0] == 's' || text[0] == 'c') expect_disjoint(s);
      }
    }
  }
}

TEST(Strategies, Parsing) {
  EXPECT_EQ(parse_strategy("nw:4").to_string(), "nw:4");
  EXPECT_EQ(parse_strategy("cl:2").kind, StrategyKind::cluster);
  EXPECT_THROW(parse_strategy("xx:2"), std::invalid_argument);
  EXPECT_THROW(parse_strategy("nw"), std::invalid_argument);
  EXPECT_THROW(parse_strategy("nw:0"), std::invalid_argument);
}

}  // namespace
}  // namespace sha
