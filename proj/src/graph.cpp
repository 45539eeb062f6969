#include "acthom/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "acthom/error.hpp"
#include "acthom/io.hpp"
#include "acthom/union_find.hpp"

namespace acthom {

NeighborGraph::NeighborGraph(std::size_t vertex_count, GraphConstruction construction)
    : adjacency_(vertex_count), construction_(construction) {
  if (vertex_count > std::numeric_limits<Vertex>::max())
    throw InvalidParameter("too many vertices");
}

NeighborGraph NeighborGraph::from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                                        GraphConstruction construction) {
  NeighborGraph g(vertex_count, construction);
  for (const Edge& e : edges) {
    if (e.first == e.second) throw InvalidParameter("self-loops are not allowed");
    if (e.first >= vertex_count || e.second >= vertex_count)
      throw InvalidParameter("edge endpoint out of range");
    g.adjacency_[e.first].push_back(e.second);
    g.adjacency_[e.second].push_back(e.first);
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return g;
}

std::size_t NeighborGraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& list : adjacency_) twice += list.size();
  return twice / 2;
}

bool NeighborGraph::has_edge(Vertex a, Vertex b) const {
  const auto& list = adjacency_.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<Edge> NeighborGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < adjacency_.size(); ++v)
    for (Vertex u : adjacency_[v])
      if (v < u) out.push_back({v, u});
  return out;
}

bool NeighborGraph::remove_edge(Vertex a, Vertex b) {
  auto erase_from = [](std::vector<Vertex>& list, Vertex x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) return false;
    list.erase(it);
    return true;
  };
  if (!erase_from(adjacency_.at(a), b)) return false;
  erase_from(adjacency_.at(b), a);
  return true;
}

bool NeighborGraph::check_invariants() const {
  for (Vertex v = 0; v < adjacency_.size(); ++v) {
    const auto& list = adjacency_[v];
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k] == v || list[k] >= adjacency_.size()) return false;
      if (k > 0 && list[k - 1] >= list[k]) return false;
      if (!has_edge(list[k], v)) return false;
    }
  }
  return true;
}

NeighborGraph build_radius_graph(const LabeledPointCloud& cloud, double radius) {
  if (!(radius > 0.0)) throw InvalidParameter("graph radius must be positive");
  const std::size_t n = cloud.size();
  NeighborGraph g(n, {GraphConstruction::Kind::kRadius, radius});
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    const auto pi = cloud.point(i);
    for (Vertex j = i + 1; j < n; ++j)
      if (distance(pi, cloud.point(j)) <= radius) edges.push_back({i, j});
  }
  return NeighborGraph::from_edges(n, edges, g.construction());
}

NeighborGraph build_knn_graph(const LabeledPointCloud& cloud, std::size_t k) {
  const std::size_t n = cloud.size();
  if (k < 1 || k >= n) throw InvalidParameter("knn graph needs 1 <= k < vertex count");
  std::vector<Edge> edges;
  edges.reserve(n * k);
  std::vector<std::pair<double, Vertex>> candidates;
  candidates.reserve(n);
  for (Vertex i = 0; i < n; ++i) {
    candidates.clear();
    const auto pi = cloud.point(i);
    for (Vertex j = 0; j < n; ++j)
      if (j != i) candidates.emplace_back(distance(pi, cloud.point(j)), j);
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                      candidates.end());
    for (std::size_t r = 0; r < k; ++r) edges.push_back(Edge::make(i, candidates[r].second));
  }
  return NeighborGraph::from_edges(n, edges,
                                   {GraphConstruction::Kind::kKnn, static_cast<double>(k)});
}

CutStructures cut_structures(const NeighborGraph& graph, std::span<const Label> labels) {
  if (labels.size() != graph.vertex_count())
    throw InvalidParameter("label count does not match vertex count");
  CutStructures out;
  std::vector<char> on_boundary(graph.vertex_count(), 0);
  for (const Edge& e : graph.edges()) {
    if (labels[e.first] != labels[e.second]) {
      out.cut_set.push_back(e);
      on_boundary[e.first] = on_boundary[e.second] = 1;
    }
  }
  for (Vertex v = 0; v < graph.vertex_count(); ++v)
    if (on_boundary[v]) out.cut_boundary.push_back(v);
  return out;
}

std::vector<int> bfs_distances(const NeighborGraph& graph, Vertex source) {
  std::vector<int> dist(graph.vertex_count(), -1);
  std::deque<Vertex> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : graph.neighbors(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::optional<std::vector<Vertex>> shortest_path(const NeighborGraph& graph, Vertex src,
                                                 Vertex dst) {
  if (src >= graph.vertex_count() || dst >= graph.vertex_count())
    throw InvalidParameter("path endpoint out of range");
  // Distances to dst, then a greedy walk from src that always steps to the
  // smallest neighbour one hop closer.
  const std::vector<int> to_dst = bfs_distances(graph, dst);
  if (to_dst[src] < 0) return std::nullopt;
  std::vector<Vertex> path{src};
  Vertex v = src;
  while (v != dst) {
    for (Vertex u : graph.neighbors(v)) {
      if (to_dst[u] == to_dst[v] - 1) {
        v = u;
        break;
      }
    }
    path.push_back(v);
  }
  return path;
}

Components connected_components(const NeighborGraph& graph) {
  const std::size_t n = graph.vertex_count();
  UnionFind uf(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : graph.neighbors(v))
      if (v < u) uf.unite(v, u);
  Components out;
  out.id.assign(n, 0);
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> root_id(n, kUnset);
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t r = uf.find(v);
    if (root_id[r] == kUnset) {
      root_id[r] = static_cast<std::uint32_t>(out.sizes.size());
      out.sizes.push_back(0);
    }
    out.id[v] = root_id[r];
    ++out.sizes[root_id[r]];
  }
  return out;
}

double smallest_label_component_fraction(const NeighborGraph& graph,
                                         std::span<const Label> labels) {
  NeighborGraph pruned = graph;
  for (const Edge& e : cut_structures(graph, labels).cut_set) pruned.remove_edge(e.first, e.second);
  const Components comps = connected_components(pruned);
  if (comps.count() == 0) return 0.0;
  const std::size_t smallest = *std::min_element(comps.sizes.begin(), comps.sizes.end());
  return static_cast<double>(smallest) / static_cast<double>(graph.vertex_count());
}

double max_cut_boundary_offset(const LabeledPointCloud& cloud, const CutStructures& cuts,
                               const BoundaryDescriptor& boundary) {
  if (cloud.dim() != 2) throw InvalidParameter("boundary offsets need planar points");
  double worst = 0.0;
  for (Vertex v : cuts.cut_boundary) {
    const auto p = cloud.point(v);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : boundary.circles)
      best = std::min(best, std::abs(std::hypot(p[0] - c.cx, p[1] - c.cy) - c.radius));
    worst = std::max(worst, best);
  }
  return worst;
}

std::string format_edge_csv(const NeighborGraph& graph) {
  std::string out;
  for (const Edge& e : graph.edges()) {
    out += std::to_string(e.first);
    out += ',';
    out += std::to_string(e.second);
    out += '\n';
  }
  return out;
}

NeighborGraph parse_edge_csv(const std::string& text, std::size_t vertex_count) {
  std::vector<Edge> edges;
  for (const auto& line : io::lines(text)) {
    const auto fields = io::split_commas(line.text);
    std::size_t a, b;
    if (fields.size() != 2 || !io::parse_index(fields[0], a) || !io::parse_index(fields[1], b))
      throw ParseError("expected `i,j`", line.number);
    if (a >= vertex_count || b >= vertex_count)
      throw ParseError("vertex index out of range", line.number);
    if (a == b) throw ParseError("self-loop", line.number);
    edges.push_back(Edge::make(static_cast<Vertex>(a), static_cast<Vertex>(b)));
  }
  return NeighborGraph::from_edges(vertex_count, edges);
}

void save_edge_csv(const NeighborGraph& graph, const std::filesystem::path& path) {
  io::write_text(path, format_edge_csv(graph));
}

NeighborGraph load_edge_csv(const std::filesystem::path& path, std::size_t vertex_count) {
  return parse_edge_csv(io::read_text(path), vertex_count);
}

}  // namespace acthom
