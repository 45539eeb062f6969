#include "acthom/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "acthom/error.hpp"
#include "acthom/io.hpp"
#include "acthom/persistence.hpp"

namespace acthom {

Simplex Simplex::edge(Vertex a, Vertex b, double value) {
  if (a > b) std::swap(a, b);
  return {{a, b, 0}, 2, value};
}

Simplex Simplex::triangle(Vertex a, Vertex b, Vertex c, double value) {
  std::array<Vertex, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return {v, 3, value};
}

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.count != b.count) return a.count < b.count;
  return std::lexicographical_compare(a.v.begin(), a.v.begin() + a.count, b.v.begin(),
                                      b.v.begin() + b.count);
}

FiltrationComplex::FiltrationComplex(std::vector<Simplex> simplices)
    : simplices_(std::move(simplices)) {
  std::sort(simplices_.begin(), simplices_.end(), filtration_less);
}

std::size_t FiltrationComplex::count(int dim) const {
  return static_cast<std::size_t>(std::count_if(simplices_.begin(), simplices_.end(),
                                                [dim](const Simplex& s) { return s.dim() == dim; }));
}

namespace {

std::uint64_t key2(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct FaceIndex {
  std::unordered_map<Vertex, double> vertices;
  std::unordered_map<std::uint64_t, double> edges;
};

FaceIndex index_faces(const std::vector<Simplex>& simplices) {
  FaceIndex idx;
  for (const auto& s : simplices) {
    if (s.count == 1) idx.vertices.emplace(s.v[0], s.value);
    if (s.count == 2) idx.edges.emplace(key2(s.v[0], s.v[1]), s.value);
  }
  return idx;
}

bool well_formed(const Simplex& s) {
  if (s.count < 1 || s.count > 3) return false;
  for (int k = 1; k < s.count; ++k)
    if (s.v[k - 1] >= s.v[k]) return false;
  return std::isfinite(s.value) && s.value >= 0.0;
}

}  // namespace

bool FiltrationComplex::is_face_closed() const {
  const FaceIndex idx = index_faces(simplices_);
  for (const auto& s : simplices_) {
    if (s.count >= 2)
      for (int k = 0; k < s.count; ++k)
        if (!idx.vertices.contains(s.v[k])) return false;
    if (s.count == 3) {
      if (!idx.edges.contains(key2(s.v[0], s.v[1])) || !idx.edges.contains(key2(s.v[0], s.v[2])) ||
          !idx.edges.contains(key2(s.v[1], s.v[2])))
        return false;
    }
  }
  return true;
}

bool FiltrationComplex::is_monotone() const {
  const FaceIndex idx = index_faces(simplices_);
  for (const auto& s : simplices_) {
    if (s.count >= 2) {
      for (int k = 0; k < s.count; ++k) {
        auto it = idx.vertices.find(s.v[k]);
        if (it != idx.vertices.end() && it->second > s.value) return false;
      }
    }
    if (s.count == 3) {
      for (auto key : {key2(s.v[0], s.v[1]), key2(s.v[0], s.v[2]), key2(s.v[1], s.v[2])}) {
        auto it = idx.edges.find(key);
        if (it != idx.edges.end() && it->second > s.value) return false;
      }
    }
  }
  return true;
}

void FiltrationComplex::validate() const {
  for (const auto& s : simplices_)
    if (!well_formed(s)) throw InvalidFiltration("malformed simplex");
  if (!is_face_closed()) throw InvalidFiltration("filtration is not closed under faces");
  if (!is_monotone()) throw InvalidFiltration("a face enters after one of its cofaces");
}

FiltrationComplex FiltrationComplex::truncated(double t) const {
  FiltrationComplex out;
  for (const auto& s : simplices_)
    if (s.value <= t) out.simplices_.push_back(s);
  return out;
}

LocalScales local_scales(const LabeledPointCloud& cloud, std::size_t k_opposite) {
  if (k_opposite < 1) throw InvalidParameter("k_opposite must be >= 1");
  const auto& labels = cloud.labels();
  const std::size_t n = cloud.size();
  std::array<std::size_t, 2> class_size{0, 0};
  for (Label y : labels) ++class_size[y];
  for (int y = 0; y < 2; ++y) {
    if (class_size[1 - y] > 0 && class_size[y] < k_opposite)
      throw InsufficientData("class " + std::to_string(y) + " has " + std::to_string(class_size[y]) +
                             " points, fewer than k_opposite = " + std::to_string(k_opposite));
  }
  LocalScales out;
  out.k_opposite = k_opposite;
  out.rho.resize(n);
  std::vector<double> dists;
  for (std::size_t i = 0; i < n; ++i) {
    dists.clear();
    const auto pi = cloud.point(i);
    for (std::size_t j = 0; j < n; ++j)
      if (labels[j] != labels[i]) dists.push_back(distance(pi, cloud.point(j)));
    auto kth = dists.begin() + static_cast<std::ptrdiff_t>(k_opposite - 1);
    std::nth_element(dists.begin(), kth, dists.end());
    out.rho[i] = *kth;
  }
  return out;
}

double lslvr_cross_value(double dist, double rho_i, double rho_j) {
  const double scale = std::sqrt(rho_i * rho_j);
  if (scale > 0.0) return dist / scale;
  return dist == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

FiltrationComplex build_lslvr_filtration(const LabeledPointCloud& cloud, const LocalScales& scales,
                                         double kappa_max) {
  const std::size_t n = cloud.size();
  if (scales.rho.size() != n) throw InvalidParameter("local scales do not match the cloud");
  const auto& labels = cloud.labels();

  std::vector<Simplex> simplices;
  for (Vertex i = 0; i < n; ++i) simplices.push_back(Simplex::vertex(i));

  // Weighted adjacency over all edges, cross-class first.
  std::vector<std::vector<std::pair<Vertex, double>>> cross(n);
  for (Vertex i = 0; i < n; ++i) {
    if (labels[i] != 0) continue;
    const auto pi = cloud.point(i);
    for (Vertex j = 0; j < n; ++j) {
      if (labels[j] != 1) continue;
      const double kappa =
          lslvr_cross_value(distance(pi, cloud.point(j)), scales.rho[i], scales.rho[j]);
      if (kappa <= kappa_max) {
        cross[i].emplace_back(j, kappa);
        cross[j].emplace_back(i, kappa);
      }
    }
  }
  for (auto& list : cross) std::sort(list.begin(), list.end());

  // Same-class edges: earliest scale at which the endpoints share a cross neighbour.
  std::unordered_map<std::uint64_t, double> same;
  for (Vertex pivot = 0; pivot < n; ++pivot) {
    const auto& list = cross[pivot];
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        const double value = std::max(list[a].second, list[b].second);
        auto [it, inserted] = same.try_emplace(key2(list[a].first, list[b].first), value);
        if (!inserted && value < it->second) it->second = value;
      }
    }
  }

  std::vector<std::vector<std::pair<Vertex, double>>> adj = cross;
  for (const auto& [key, value] : same) {
    const auto a = static_cast<Vertex>(key >> 32);
    const auto b = static_cast<Vertex>(key & 0xffffffffu);
    adj[a].emplace_back(b, value);
    adj[b].emplace_back(a, value);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  for (Vertex a = 0; a < n; ++a)
    for (const auto& [b, value] : adj[a])
      if (a < b) simplices.push_back(Simplex::edge(a, b, value));

  // Flag closure in dimension 2.
  for (Vertex a = 0; a < n; ++a) {
    const auto& la = adj[a];
    for (const auto& [b, ab] : la) {
      if (b <= a) continue;
      const auto& lb = adj[b];
      auto ia = std::upper_bound(la.begin(), la.end(), std::make_pair(b, std::numeric_limits<double>::infinity()));
      auto ib = std::upper_bound(lb.begin(), lb.end(), std::make_pair(b, std::numeric_limits<double>::infinity()));
      while (ia != la.end() && ib != lb.end()) {
        if (ia->first < ib->first) {
          ++ia;
        } else if (ib->first < ia->first) {
          ++ib;
        } else {
          const double value = std::max({ab, ia->second, ib->second});
          simplices.push_back(Simplex::triangle(a, b, ia->first, value));
          ++ia;
          ++ib;
        }
      }
    }
  }
  return FiltrationComplex(std::move(simplices));
}

double min_enclosing_ball_radius(std::span<const double> a, std::span<const double> b,
                                 std::span<const double> c) {
  const double ab = squared_distance(a, b);
  const double ac = squared_distance(a, c);
  const double bc = squared_distance(b, c);
  const double longest = std::max({ab, ac, bc});
  // Right or obtuse (including collinear): the longest side is a diameter.
  if (longest >= (ab + ac + bc) - longest) return std::sqrt(longest) / 2.0;
  // Acute: circumradius R = |ab||ac||bc| / (4 * area), area from the Gram determinant.
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double u = b[k] - a[k];
    const double v = c[k] - a[k];
    uu += u * u;
    vv += v * v;
    uv += u * v;
  }
  const double gram = uu * vv - uv * uv;
  if (!(gram > 0.0)) return std::sqrt(longest) / 2.0;
  return std::sqrt(ab * ac * bc / (4.0 * gram));
}

FiltrationComplex build_lc_complex(const LabeledPointCloud& class0, const LabeledPointCloud& class1,
                                   double epsilon, double gamma) {
  if (!(epsilon > 0.0) || !(gamma > 0.0))
    throw InvalidParameter("epsilon and gamma must be positive");
  if (!class0.empty() && !class1.empty() && class0.dim() != class1.dim())
    throw InvalidParameter("point dimensions differ");

  std::vector<Vertex> witnessed;
  for (Vertex i = 0; i < class0.size(); ++i) {
    for (std::size_t j = 0; j < class1.size(); ++j) {
      if (distance(class0.point(i), class1.point(j)) <= gamma) {
        witnessed.push_back(i);
        break;
      }
    }
  }

  std::vector<Simplex> simplices;
  for (Vertex v : witnessed) simplices.push_back(Simplex::vertex(v, epsilon));
  const std::size_t m = witnessed.size();
  std::vector<std::vector<char>> linked(m, std::vector<char>(m, 0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (distance(class0.point(witnessed[a]), class0.point(witnessed[b])) <= 2.0 * epsilon) {
        linked[a][b] = linked[b][a] = 1;
        simplices.push_back(Simplex::edge(witnessed[a], witnessed[b], epsilon));
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      if (!linked[a][b]) continue;
      for (std::size_t c = b + 1; c < m; ++c) {
        if (!linked[a][c] || !linked[b][c]) continue;
        if (min_enclosing_ball_radius(class0.point(witnessed[a]), class0.point(witnessed[b]),
                                      class0.point(witnessed[c])) <= epsilon)
          simplices.push_back(Simplex::triangle(witnessed[a], witnessed[b], witnessed[c], epsilon));
      }
    }
  return FiltrationComplex(std::move(simplices));
}

std::vector<std::size_t> betti_window_scan(const FiltrationComplex& filtration, int dim,
                                           std::span<const double> kappa_grid) {
  if (!std::is_sorted(kappa_grid.begin(), kappa_grid.end()))
    throw InvalidParameter("kappa grid must be sorted ascending");
  const PersistenceDiagram diagram = compute_persistence(filtration);
  std::vector<std::size_t> out;
  out.reserve(kappa_grid.size());
  for (double kappa : kappa_grid) out.push_back(betti_at(diagram, dim, kappa));
  return out;
}

std::string format_complex_csv(const FiltrationComplex& filtration) {
  std::string out;
  for (const auto& s : filtration.simplices()) {
    out += format_double(s.value);
    out += ',';
    out += std::to_string(s.dim());
    for (Vertex v : s.vertices()) {
      out += ',';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

FiltrationComplex parse_complex_csv(const std::string& text) {
  std::vector<Simplex> simplices;
  for (const auto& line : io::lines(text)) {
    const auto f = io::split_commas(line.text);
    double value;
    std::size_t dim;
    if (f.size() < 3 || !io::parse_double(f[0], value) || !io::parse_index(f[1], dim) || dim > 2 ||
        f.size() != dim + 3)
      throw ParseError("expected `filtration_value,dim,v0[,v1[,v2]]`", line.number);
    Simplex s;
    s.count = static_cast<std::uint8_t>(dim + 1);
    s.value = value;
    for (std::size_t k = 0; k <= dim; ++k) {
      std::size_t v;
      if (!io::parse_index(f[2 + k], v)) throw ParseError("bad vertex index", line.number);
      s.v[k] = static_cast<Vertex>(v);
    }
    std::sort(s.v.begin(), s.v.begin() + s.count);
    simplices.push_back(s);
  }
  return FiltrationComplex(std::move(simplices));
}

void save_complex_csv(const FiltrationComplex& filtration, const std::filesystem::path& path) {
  io::write_text(path, format_complex_csv(filtration));
}

}  // namespace acthom
