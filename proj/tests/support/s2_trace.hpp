#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "acthom/active.hpp"

namespace oracle {

// Bisection queries issued after the log first holds both labels, up to and
// including the query that exposes the first cut edge. nullopt if no cut edge
// is exposed.
inline std::optional<std::size_t> bisections_before_cut(const acthom::NeighborGraph& graph,
                                                        const acthom::QueryLog& log) {
  std::vector<std::optional<acthom::Label>> seen(graph.vertex_count());
  bool both = false;
  bool has[2] = {false, false};
  std::size_t count = 0;
  for (const auto& e : log.entries) {
    if (both && e.phase == acthom::QueryPhase::kBisect) ++count;
    seen[e.vertex] = e.label;
    for (acthom::Vertex u : graph.neighbors(e.vertex))
      if (seen[u] && *seen[u] != e.label) return count;
    has[e.label] = true;
    both = has[0] && has[1];
  }
  return std::nullopt;
}

}  // namespace oracle
