#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "acthom/datasets.hpp"

namespace acthom {

using Vertex = std::uint32_t;

// Undirected edge, always stored with first < second.
struct Edge {
  Vertex first;
  Vertex second;

  static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  auto operator<=>(const Edge&) const = default;
};

struct GraphConstruction {
  enum class Kind { kNone, kRadius, kKnn };
  Kind kind = Kind::kNone;
  double parameter = 0.0;

  bool operator==(const GraphConstruction&) const = default;
};

// Simple undirected graph with sorted, duplicate-free adjacency lists.
class NeighborGraph {
 public:
  NeighborGraph() = default;
  explicit NeighborGraph(std::size_t vertex_count, GraphConstruction construction = {});

  // Builds from an edge list; self-loops rejected, duplicates collapsed.
  static NeighborGraph from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                                  GraphConstruction construction = {});

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept;
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  const std::vector<std::vector<Vertex>>& adjacency() const noexcept { return adjacency_; }
  const GraphConstruction& construction() const noexcept { return construction_; }

  bool has_edge(Vertex a, Vertex b) const;
  // All edges with first < second, ordered lexicographically.
  std::vector<Edge> edges() const;

  // Removes an edge if present; returns whether it existed.
  bool remove_edge(Vertex a, Vertex b);

  // Symmetric, loop-free, sorted and duplicate-free.
  bool check_invariants() const;

  bool operator==(const NeighborGraph&) const = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  GraphConstruction construction_;
};

struct CutStructures {
  std::vector<Edge> cut_set;
  std::vector<Vertex> cut_boundary;
};

NeighborGraph build_radius_graph(const LabeledPointCloud& cloud, double radius);
NeighborGraph build_knn_graph(const LabeledPointCloud& cloud, std::size_t k);

CutStructures cut_structures(const NeighborGraph& graph, std::span<const Label> labels);

// Unweighted BFS distances from `source`; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const NeighborGraph& graph, Vertex source);

// Lexicographically smallest among the shortest src->dst paths, or nullopt.
std::optional<std::vector<Vertex>> shortest_path(const NeighborGraph& graph, Vertex src,
                                                 Vertex dst);

struct Components {
  std::vector<std::uint32_t> id;    // per vertex; ids ordered by smallest member
  std::vector<std::size_t> sizes;   // indexed by id
  std::size_t count() const noexcept { return sizes.size(); }
};

Components connected_components(const NeighborGraph& graph);

// Fraction of points in the smallest connected component whose members all
// share one label, after removing the cut-set. Used as the beta estimate.
double smallest_label_component_fraction(const NeighborGraph& graph, std::span<const Label> labels);

// Diagnostic for the boundary-tube containment of the cut boundary: the largest
// distance from a cut-boundary point to the analytic circle boundary.
double max_cut_boundary_offset(const LabeledPointCloud& cloud, const CutStructures& cuts,
                               const BoundaryDescriptor& boundary);

std::string format_edge_csv(const NeighborGraph& graph);
NeighborGraph parse_edge_csv(const std::string& text, std::size_t vertex_count);
void save_edge_csv(const NeighborGraph& graph, const std::filesystem::path& path);
NeighborGraph load_edge_csv(const std::filesystem::path& path, std::size_t vertex_count);

}  // namespace acthom
