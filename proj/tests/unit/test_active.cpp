#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "acthom/active.hpp"
#include "acthom/error.hpp"
#include "oracles.hpp"
#include "s2_trace.hpp"

using namespace acthom;

namespace {

NeighborGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return NeighborGraph::from_edges(n, e);
}

std::vector<Label> step_labels(std::size_t n, std::size_t cut) {
  std::vector<Label> y(n, 0);
  for (std::size_t i = cut; i < n; ++i) y[i] = 1;
  return y;
}

int ceil_log2(std::size_t n) { return static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))); }

void check_log_invariants(const NeighborGraph& g, const LabelOracle& o, const QueryLog& log) {
  std::set<Vertex> seen;
  for (const auto& e : log.entries) {
    CHECK(seen.insert(e.vertex).second);
    CHECK(e.label == o.query(e.vertex));
  }
  CHECK(log.size() <= log.budget);
  for (const auto& e : log.found_cut_edges) {
    CHECK(g.has_edge(e.first, e.second));
    CHECK(seen.contains(e.first));
    CHECK(seen.contains(e.second));
    CHECK(o.query(e.first) != o.query(e.second));
  }
}

}  // namespace

TEST_CASE("mssp") {
  const auto p = path_graph(10);
  PartialLabels none(10);
  CHECK(!mssp(p, none));
  PartialLabels ends(10);
  ends[0] = 0;
  ends[9] = 1;
  CHECK(mssp(p, ends) == Vertex{4});
  PartialLabels adjacent(10);
  adjacent[3] = 0;
  adjacent[4] = 1;
  CHECK(!mssp(p, adjacent));
  PartialLabels same(10);
  same[0] = 1;
  same[9] = 1;
  CHECK(!mssp(p, same));

  SUBCASE("random partial labelings agree with the all-pairs oracle") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const auto g = oracle::random_graph(25, 0.08 + 0.002 * static_cast<double>(seed), seed);
      SplitMix64 rng(seed * 31 + 1);
      PartialLabels lab(25);
      for (auto& l : lab)
        if (rng.uniform() < 0.3) l = static_cast<Label>(rng.below(2));
      CHECK(mssp(g, lab) == oracle::mssp(g, lab));
    }
  }
}

TEST_CASE("s2 run") {
  SUBCASE("budget 0 gives an empty log") {
    const auto g = path_graph(5);
    CHECK(s2_run(g, LabelOracle({0, 0, 1, 1, 1}), 0, 1).entries.empty());
  }
  SUBCASE("single-label oracle never bisects") {
    const auto g = oracle::random_connected_graph(30, 20, 4);
    const auto log = s2_run(g, LabelOracle(std::vector<Label>(30, 1)), 30, 8);
    CHECK(log.size() == 30);
    for (const auto& e : log.entries) CHECK(e.phase == QueryPhase::kUniform);
    CHECK(log.found_cut_edges.empty());
  }
  SUBCASE("budget above the vertex count is rejected") {
    CHECK_THROWS_AS(s2_run(path_graph(3), LabelOracle({0, 0, 1}), 4, 1), InvalidParameter);
  }
  SUBCASE("path of 16 with a cut between 7 and 8") {
    const auto g = path_graph(16);
    const LabelOracle o(step_labels(16, 8));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto log = s2_run(g, o, 16, seed);
      CHECK(log.found_cut_edges == std::vector<Edge>{{7, 8}});
      const auto b = oracle::bisections_before_cut(g, log);
      REQUIRE(b);
      CHECK(*b <= 5);
    }
  }
  SUBCASE("full budget finds exactly the cut set, and every log is sound") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const std::size_t n = 20 + 6 * seed;
      const auto g = oracle::random_connected_graph(n, n, seed);
      const auto y = oracle::random_cloud(n, 1, seed + 500).labels();
      const LabelOracle o(y);
      const auto log = s2_run(g, o, n, seed);
      check_log_invariants(g, o, log);
      std::set<Edge> found(log.found_cut_edges.begin(), log.found_cut_edges.end());
      const auto cuts = cut_structures(g, y);
      CHECK(found == std::set<Edge>(cuts.cut_set.begin(), cuts.cut_set.end()));
      const auto partial = s2_run(g, o, n / 3, seed);
      check_log_invariants(g, o, partial);
      CHECK(partial.size() == n / 3);
    }
  }
  SUBCASE("bisection bound on single-cut paths") {
    for (std::size_t n : {16u, 64u, 256u, 1024u}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SplitMix64 rng(seed + n);
        const std::size_t cut = 1 + rng.below(n - 1);
        const auto g = path_graph(n);
        const auto log = s2_run(g, LabelOracle(step_labels(n, cut)), n, seed);
        const auto b = oracle::bisections_before_cut(g, log);
        REQUIRE(b);
        CHECK(static_cast<int>(*b) <= ceil_log2(n) + 1);
      }
    }
  }
  SUBCASE("deterministic and graph left untouched") {
    const auto g = oracle::random_connected_graph(60, 60, 2);
    const auto copy = g;
    const LabelOracle o(oracle::random_cloud(60, 1, 2).labels());
    CHECK(s2_run(g, o, 40, 5) == s2_run(g, o, 40, 5));
    CHECK(g == copy);
  }
}

TEST_CASE("passive run") {
  const auto cloud = oracle::random_cloud(20, 2, 3);
  const auto o = LabelOracle::from_cloud(cloud);
  SUBCASE("budget n is a permutation") {
    const auto log = passive_run(cloud, o, 20, 4);
    std::set<std::size_t> s;
    for (auto v : log.queried_indices()) s.insert(v);
    CHECK(s.size() == 20);
    for (const auto& e : log.entries) CHECK(e.phase == QueryPhase::kUniform);
  }
  CHECK(passive_run(cloud, o, 0, 4).entries.empty());
  CHECK_THROWS_AS(passive_run(cloud, o, 21, 4), InvalidParameter);
  CHECK(passive_run(cloud, o, 7, 4) == passive_run(cloud, o, 7, 4));
  SUBCASE("inclusion frequency at half budget") {
    std::vector<std::size_t> hits(20, 0);
    const std::size_t runs = 10000;
    for (std::uint64_t seed = 0; seed < runs; ++seed)
      for (auto v : passive_run(cloud, o, 10, seed).queried_indices()) ++hits[v];
    const double sigma = std::sqrt(0.25 / static_cast<double>(runs));
    for (auto h : hits) CHECK(std::abs(static_cast<double>(h) / runs - 0.5) <= 3 * sigma);
  }
}

TEST_CASE("query log csv") {
  const auto g = oracle::random_connected_graph(30, 30, 1);
  const LabelOracle o(oracle::random_cloud(30, 1, 1).labels());
  const auto log = s2_run(g, o, 20, 3);
  const auto back = parse_query_log_csv(format_query_log_csv(log));
  CHECK(back.entries == log.entries);
  CHECK(parse_query_log_csv("step,vertex,label,phase\n").entries.empty());
  CHECK_THROWS_AS(parse_query_log_csv("0,1,2,uniform\n"), ParseError);
  CHECK_THROWS_AS(parse_query_log_csv("0,1,1,sideways\n"), ParseError);
  CHECK_THROWS_AS(parse_query_log_csv("1,1,1,uniform\n"), ParseError);
}
