#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "acthom/datasets.hpp"
#include "acthom/graph.hpp"

namespace acthom {

// A simplex of dimension 0..2 with strictly increasing vertex indices.
struct Simplex {
  std::array<Vertex, 3> v{};
  std::uint8_t count = 1;
  double value = 0.0;

  static Simplex vertex(Vertex a, double value = 0.0) { return {{a, 0, 0}, 1, value}; }
  static Simplex edge(Vertex a, Vertex b, double value);
  static Simplex triangle(Vertex a, Vertex b, Vertex c, double value);

  int dim() const noexcept { return count - 1; }
  std::span<const Vertex> vertices() const noexcept { return {v.data(), count}; }

  bool operator==(const Simplex&) const = default;
};

// Total order used by filtrations: (value, dim, vertices).
bool filtration_less(const Simplex& a, const Simplex& b);

class FiltrationComplex {
 public:
  FiltrationComplex() = default;
  // Sorts into filtration order. Does not validate; see validate().
  explicit FiltrationComplex(std::vector<Simplex> simplices);

  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  std::size_t count(int dim) const;

  bool is_face_closed() const;
  bool is_monotone() const;
  // Throws InvalidFiltration on malformed simplices, missing faces or
  // non-monotone values.
  void validate() const;

  // Simplices with value <= t.
  FiltrationComplex truncated(double t) const;

 private:
  std::vector<Simplex> simplices_;
};

struct LocalScales {
  std::vector<double> rho;
  std::size_t k_opposite = 1;
};

// rho[i] = distance from point i to its k-th nearest opposite-class point.
LocalScales local_scales(const LabeledPointCloud& cloud, std::size_t k_opposite = 1);

// Entry value of the cross-class edge (i, j): |xi - xj| / sqrt(rho_i rho_j).
double lslvr_cross_value(double dist, double rho_i, double rho_j);

// Locally scaled labelled Vietoris-Rips filtration, truncated at kappa_max.
// Cross-class edges enter at their scaled length; same-class edges enter when
// their endpoints first share a cross-class neighbour; triangles enter at the
// largest of their edge values.
FiltrationComplex build_lslvr_filtration(const LabeledPointCloud& cloud, const LocalScales& scales,
                                         double kappa_max);

// Radius of the smallest ball enclosing three points (any dimension).
double min_enclosing_ball_radius(std::span<const double> a, std::span<const double> b,
                                 std::span<const double> c);

// (epsilon, gamma)-labelled Cech complex on the class-0 points witnessed by a
// class-1 point within gamma. Vertex ids index `class0`; every simplex carries
// the value epsilon.
FiltrationComplex build_lc_complex(const LabeledPointCloud& class0, const LabeledPointCloud& class1,
                                   double epsilon, double gamma);

// Betti number of the sub-complex {value <= kappa} for each grid value.
std::vector<std::size_t> betti_window_scan(const FiltrationComplex& filtration, int dim,
                                           std::span<const double> kappa_grid);

// CSV `filtration_value,dim,v0[,v1[,v2]]` in stored order.
std::string format_complex_csv(const FiltrationComplex& filtration);
FiltrationComplex parse_complex_csv(const std::string& text);
void save_complex_csv(const FiltrationComplex& filtration, const std::filesystem::path& path);

}  // namespace acthom
