#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "acthom/complex.hpp"

namespace acthom {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;

  bool essential() const noexcept { return death == kInfinity; }
  bool zero_persistence() const noexcept { return birth == death; }

  bool operator==(const PersistencePair&) const = default;
};

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;

  // Pairs of one dimension sorted by (birth, death).
  std::vector<PersistencePair> in_dim(int dim, bool include_zero = true) const;
  std::size_t count(int dim) const;
};

// Z/2 column reduction with clearing. Throws InvalidFiltration when a face is
// missing or enters after one of its cofaces.
PersistenceDiagram compute_persistence(const FiltrationComplex& filtration);

// Number of pairs of `dim` with birth <= t < death.
std::size_t betti_at(const PersistenceDiagram& diagram, int dim, double t);

// Components of the 1-skeleton restricted to values <= t.
std::size_t betti0_unionfind(const FiltrationComplex& filtration, double t);

// Components of the 1-skeleton at t that contain at least one edge.
std::size_t edge_component_count(const FiltrationComplex& filtration, double t);

// Maximal half-open intervals [lo, hi) on which betti_at(diagram, dim, .) == value.
struct ScaleWindow {
  double lo;
  double hi;
};
std::vector<ScaleWindow> betti_windows(const PersistenceDiagram& diagram, int dim,
                                       std::size_t value);

// {"dim0": [[b, d], ...], "dim1": [...]} with infinite deaths as "inf".
std::string diagram_to_json(const PersistenceDiagram& diagram, bool include_zero = false);
PersistenceDiagram diagram_from_json(const std::string& text);
void save_diagram(const PersistenceDiagram& diagram, const std::filesystem::path& path,
                  bool include_zero = false);
PersistenceDiagram load_diagram(const std::filesystem::path& path);

}  // namespace acthom
