#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acthom/datasets.hpp"
#include "acthom/graph.hpp"

namespace acthom {

enum class QueryPhase : std::uint8_t { kUniform, kBisect };

struct QueryEntry {
  Vertex vertex;
  Label label;
  QueryPhase phase;

  bool operator==(const QueryEntry&) const = default;
};

struct QueryLog {
  std::vector<QueryEntry> entries;
  std::size_t budget = 0;
  std::vector<Edge> found_cut_edges;  // in discovery order

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<std::size_t> queried_indices() const;
  std::vector<Label> queried_labels() const;

  bool operator==(const QueryLog&) const = default;
};

using PartialLabels = std::vector<std::optional<Label>>;

// Midpoint of the shortest path between any two oppositely labelled vertices.
// Ties on length go to the lexicographically smallest pair (i < j); the path is
// the lexicographically smallest shortest i->j path and the midpoint is the
// vertex at position floor(L/2). Returns nullopt when no opposite pair is
// connected or when the shortest such path is a single edge.
std::optional<Vertex> mssp(const NeighborGraph& graph, std::span<const std::optional<Label>> labeled);

// Shortest-shortest-path active querying. The caller's graph is not modified.
QueryLog s2_run(const NeighborGraph& graph, const LabelOracle& oracle, std::size_t budget,
                std::uint64_t seed);

// Uniform sampling without replacement.
QueryLog passive_run(const LabeledPointCloud& cloud, const LabelOracle& oracle, std::size_t budget,
                     std::uint64_t seed);

std::string phase_name(QueryPhase phase);

// CSV `step,vertex,label,phase` with a header row.
std::string format_query_log_csv(const QueryLog& log);
QueryLog parse_query_log_csv(const std::string& text);
void save_query_log(const QueryLog& log, const std::filesystem::path& path);
QueryLog load_query_log(const std::filesystem::path& path);

}  // namespace acthom
