#pragma once

#include <span>
#include <utility>

#include "acthom/persistence.hpp"

namespace acthom {

// Exact bottleneck distance between the `dim` parts of two diagrams. Essential
// points match only essential points; differing counts give +inf.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

// Bank member closest to `query`; ties go to the lowest index.
std::pair<std::size_t, double> select_min_distance(const PersistenceDiagram& query,
                                                   std::span<const PersistenceDiagram> bank,
                                                   int dim);

}  // namespace acthom
