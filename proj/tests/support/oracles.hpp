#pragma once

// Independent brute-force reference implementations used by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acthom/complex.hpp"
#include "acthom/datasets.hpp"
#include "acthom/graph.hpp"
#include "acthom/persistence.hpp"
#include "acthom/rng.hpp"

namespace oracle {

using acthom::Edge;
using acthom::Label;
using acthom::LabeledPointCloud;
using acthom::NeighborGraph;
using acthom::Vertex;

inline LabeledPointCloud random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed,
                                      double scale = 1.0) {
  acthom::SplitMix64 rng(seed);
  std::vector<double> coords(n * dim);
  for (auto& x : coords) x = rng.uniform(-scale, scale);
  std::vector<Label> labels(n);
  for (auto& y : labels) y = rng.uniform() < 0.5 ? 1 : 0;
  return LabeledPointCloud(dim, std::move(coords), std::move(labels));
}

// Points on a coarse integer lattice so that distance ties are common.
inline LabeledPointCloud lattice_cloud(std::size_t n, std::uint64_t seed) {
  acthom::SplitMix64 rng(seed);
  std::vector<double> coords(2 * n);
  for (auto& x : coords) x = static_cast<double>(rng.below(6));
  std::vector<Label> labels(n);
  for (auto& y : labels) y = static_cast<Label>(rng.below(2));
  return LabeledPointCloud(2, std::move(coords), std::move(labels));
}

inline NeighborGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
  acthom::SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (rng.uniform() < p) edges.push_back({i, j});
  return NeighborGraph::from_edges(n, edges);
}

// Random spanning tree plus extra edges.
inline NeighborGraph random_connected_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  acthom::SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back(Edge::make(v, static_cast<Vertex>(rng.below(v))));
  for (std::size_t e = 0; e < extra; ++e) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a != b) edges.push_back(Edge::make(a, b));
  }
  return NeighborGraph::from_edges(n, edges);
}

inline std::set<Edge> radius_edges(const LabeledPointCloud& c, double r) {
  std::set<Edge> out;
  for (Vertex i = 0; i < c.size(); ++i)
    for (Vertex j = i + 1; j < c.size(); ++j) {
      double s = 0.0;
      for (std::size_t d = 0; d < c.dim(); ++d) s += std::pow(c.point(i)[d] - c.point(j)[d], 2);
      if (std::sqrt(s) <= r) out.insert({i, j});
    }
  return out;
}

inline std::set<Edge> knn_edges(const LabeledPointCloud& c, std::size_t k) {
  std::set<Edge> out;
  for (Vertex i = 0; i < c.size(); ++i) {
    std::vector<std::pair<double, Vertex>> all;
    for (Vertex j = 0; j < c.size(); ++j)
      if (j != i) all.push_back({acthom::squared_distance(c.point(i), c.point(j)), j});
    std::sort(all.begin(), all.end());
    for (std::size_t r = 0; r < k; ++r) out.insert(Edge::make(i, all[r].second));
  }
  return out;
}

inline std::vector<int> bfs(const NeighborGraph& g, Vertex s) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<Vertex> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop_front();
    for (Vertex u = 0; u < g.vertex_count(); ++u)
      if (dist[u] < 0 && g.has_edge(u, v)) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
  }
  return dist;
}

// Flood fill; component ids ordered by smallest member.
inline std::vector<std::uint32_t> flood_components(const NeighborGraph& g) {
  std::vector<std::uint32_t> id(g.vertex_count(), UINT32_MAX);
  std::uint32_t next = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (id[s] != UINT32_MAX) continue;
    const auto d = bfs(g, s);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (d[v] >= 0) id[v] = next;
    ++next;
  }
  return id;
}

// Midpoint chosen by scanning every oppositely labelled pair.
inline std::optional<Vertex> mssp(const NeighborGraph& g,
                                  const std::vector<std::optional<Label>>& labeled) {
  int best = std::numeric_limits<int>::max();
  Vertex bi = 0, bj = 0;
  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    if (!labeled[i]) continue;
    const auto d = bfs(g, i);
    for (Vertex j = i + 1; j < g.vertex_count(); ++j) {
      if (!labeled[j] || *labeled[j] == *labeled[i] || d[j] < 0) continue;
      if (d[j] < best) {
        best = d[j];
        bi = i;
        bj = j;
      }
    }
  }
  if (best == std::numeric_limits<int>::max() || best <= 1) return std::nullopt;
  // Lexicographically smallest shortest path: greedily take the smallest
  // neighbour that stays on a shortest path.
  const auto to_end = bfs(g, bj);
  std::vector<Vertex> path{bi};
  while (path.back() != bj) {
    const Vertex v = path.back();
    for (Vertex u = 0; u < g.vertex_count(); ++u)
      if (g.has_edge(u, v) && to_end[u] == to_end[v] - 1) {
        path.push_back(u);
        break;
      }
  }
  return path[static_cast<std::size_t>(best) / 2];
}

// Betti numbers of the sub-complex {value <= t} by dense Z/2 rank.
inline std::size_t rank_z2(std::vector<std::vector<std::uint8_t>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && !m[pivot][c]) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && m[r][c])
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
    ++rank;
  }
  return rank;
}

struct DenseBetti {
  std::size_t b0 = 0;
  std::size_t b1 = 0;
};

inline DenseBetti dense_betti(const acthom::FiltrationComplex& f, double t) {
  std::vector<Vertex> verts;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::array<Vertex, 3>> tris;
  for (const auto& s : f.simplices()) {
    if (s.value > t) continue;
    if (s.count == 1) verts.push_back(s.v[0]);
    if (s.count == 2) edges.push_back({s.v[0], s.v[1]});
    if (s.count == 3) tris.push_back({s.v[0], s.v[1], s.v[2]});
  }
  std::map<Vertex, std::size_t> vi;
  for (std::size_t i = 0; i < verts.size(); ++i) vi[verts[i]] = i;
  std::map<std::pair<Vertex, Vertex>, std::size_t> ei;
  for (std::size_t i = 0; i < edges.size(); ++i) ei[edges[i]] = i;

  std::vector<std::vector<std::uint8_t>> d1(verts.size(), std::vector<std::uint8_t>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    d1[vi.at(edges[e].first)][e] = 1;
    d1[vi.at(edges[e].second)][e] = 1;
  }
  std::vector<std::vector<std::uint8_t>> d2(edges.size(), std::vector<std::uint8_t>(tris.size()));
  for (std::size_t k = 0; k < tris.size(); ++k) {
    const auto& v = tris[k];
    d2[ei.at({v[0], v[1]})][k] = 1;
    d2[ei.at({v[0], v[2]})][k] = 1;
    d2[ei.at({v[1], v[2]})][k] = 1;
  }
  const std::size_t r1 = edges.empty() ? 0 : rank_z2(d1);
  const std::size_t r2 = tris.empty() ? 0 : rank_z2(d2);
  return {verts.size() - r1, edges.size() - r1 - r2};
}

// Random face-closed, monotone filtration on up to `max_points` vertices.
inline acthom::FiltrationComplex random_filtration(std::size_t max_points, std::uint64_t seed) {
  acthom::SplitMix64 rng(seed);
  const auto n = static_cast<Vertex>(2 + rng.below(max_points - 1));
  auto value = [&]() { return static_cast<double>(rng.below(8)) / 2.0; };
  std::vector<acthom::Simplex> s;
  std::vector<double> vval(n);
  for (Vertex v = 0; v < n; ++v) {
    vval[v] = rng.uniform() < 0.7 ? 0.0 : value();
    s.push_back(acthom::Simplex::vertex(v, vval[v]));
  }
  std::map<std::pair<Vertex, Vertex>, double> eval;
  const double p_edge = 0.3 + 0.6 * rng.uniform();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (rng.uniform() < p_edge) {
        const double v = std::max({vval[a], vval[b], value()});
        eval[{a, b}] = v;
        s.push_back(acthom::Simplex::edge(a, b, v));
      }
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c) {
        auto ab = eval.find({a, b}), ac = eval.find({a, c}), bc = eval.find({b, c});
        if (ab == eval.end() || ac == eval.end() || bc == eval.end()) continue;
        if (rng.uniform() < 0.5) continue;
        const double v = std::max({ab->second, ac->second, bc->second, value()});
        s.push_back(acthom::Simplex::triangle(a, b, c, v));
      }
  return acthom::FiltrationComplex(std::move(s));
}

// Exact bottleneck distance by enumerating every assignment of a's points to
// b's points or the diagonal. Finite points only.
inline double bottleneck_bruteforce(std::vector<std::pair<double, double>> a,
                                    std::vector<std::pair<double, double>> b) {
  auto diag = [](const std::pair<double, double>& p) { return (p.second - p.first) / 2.0; };
  auto linf = [](const std::pair<double, double>& p, const std::pair<double, double>& q) {
    return std::max(std::abs(p.first - q.first), std::abs(p.second - q.second));
  };
  const std::size_t m = a.size(), n = b.size();
  // Slot j < n means b[j]; slots n.. are diagonal.
  std::vector<std::size_t> slots(m + n);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    std::vector<bool> b_used(n, false);
    for (std::size_t i = 0; i < m; ++i) {
      if (slots[i] < n) {
        worst = std::max(worst, linf(a[i], b[slots[i]]));
        b_used[slots[i]] = true;
      } else {
        worst = std::max(worst, diag(a[i]));
      }
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!b_used[j]) worst = std::max(worst, diag(b[j]));
    best = std::min(best, worst);
  } while (std::next_permutation(slots.begin(), slots.end()));
  return best;
}

// Fewest arcs of half-angle theta, placed greedily, that cover the circle.
inline std::size_t greedy_arc_cover(double tau, double r) {
  if (r >= 2.0 * tau) return 1;
  const double half = 2.0 * std::asin(r / (2.0 * tau));
  const double two_pi = 2.0 * std::acos(-1.0);
  std::size_t count = 0;
  double covered = 0.0;
  while (covered < two_pi - 1e-12) {
    covered += 2.0 * half;
    ++count;
  }
  return count;
}

inline double monte_carlo_lens(double r1, double r2, double d, std::size_t samples,
                               std::uint64_t seed, double* stderr_out = nullptr) {
  acthom::SplitMix64 rng(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = rng.uniform(-r1, r1), y = rng.uniform(-r1, r1);
    if (x * x + y * y <= r1 * r1 && (x - d) * (x - d) + y * y <= r2 * r2) ++hits;
  }
  const double box = 4.0 * r1 * r1;
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  if (stderr_out) *stderr_out = box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return box * p;
}

// Rows of a CSV file with a header, split on commas.
inline std::vector<std::map<std::string, std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::map<std::string, std::string>> rows;
  std::string line;
  std::vector<std::string> header;
  auto split = [](const std::string& s) {
    std::vector<std::string> f;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    return f;
  };
  if (!std::getline(in, line)) return rows;
  header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < f.size(); ++i) row[header[i]] = f[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

inline double relative_error(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

}  // namespace oracle
