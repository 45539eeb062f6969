#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace acthom {

using Label = std::uint8_t;

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 1.0;

  bool operator==(const Circle&) const = default;
};

// Analytic description of a synthetic decision boundary made of circles.
struct BoundaryDescriptor {
  std::vector<Circle> circles;
  int betti0 = 0;
  int betti1 = 0;

  // Two unit circles at (-2, 0) and (2, 0).
  static BoundaryDescriptor two_circles_default();

  // Throws InvalidGeometry on non-positive radii or intersecting circles.
  void validate_disjoint() const;

  bool operator==(const BoundaryDescriptor&) const = default;
};

// Points in R^d stored row-major, with optional binary labels.
class LabeledPointCloud {
 public:
  LabeledPointCloud() = default;
  explicit LabeledPointCloud(std::size_t dim);
  LabeledPointCloud(std::size_t dim, std::vector<double> coords,
                    std::optional<std::vector<Label>> labels = std::nullopt);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coords() const noexcept { return coords_; }

  bool has_labels() const noexcept { return labels_.has_value(); }
  const std::vector<Label>& labels() const;
  Label label(std::size_t i) const { return labels().at(i); }

  const std::optional<BoundaryDescriptor>& boundary() const noexcept { return boundary_; }
  void set_boundary(BoundaryDescriptor b) { boundary_ = std::move(b); }

  void push_back(std::span<const double> p);
  void push_back(std::span<const double> p, Label y);

  // Sub-cloud of the given rows, labels carried along. Descriptor dropped.
  LabeledPointCloud subset(std::span<const std::size_t> rows) const;
  LabeledPointCloud with_labels(std::vector<Label> labels) const;

  bool operator==(const LabeledPointCloud&) const = default;

 private:
  void check_invariants() const;

  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::optional<std::vector<Label>> labels_;
  std::optional<BoundaryDescriptor> boundary_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

// Deterministic label source for querying strategies.
class LabelOracle {
 public:
  explicit LabelOracle(std::vector<Label> labels);
  static LabelOracle from_cloud(const LabeledPointCloud& cloud);
  // CSV rows `index,label`; every index in [0, n) must appear exactly once.
  static LabelOracle from_file(const std::filesystem::path& path, std::size_t n);

  Label query(std::size_t index) const;
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<Label>& labels() const noexcept { return labels_; }

 private:
  std::vector<Label> labels_;
};

LabeledPointCloud generate_two_circles(std::size_t n, std::uint64_t seed,
                                       const BoundaryDescriptor& geometry =
                                           BoundaryDescriptor::two_circles_default(),
                                       double noise = 0.0);

// Uniform points on the 5x5 square centred at the origin with a circular
// boundary of radius tau; labels inside the tube |r - tau| < w are fair coins.
LabeledPointCloud generate_annulus_cloud(std::size_t n, std::uint64_t seed, double tau,
                                         double w);

// Noise-free membership rule used by generate_two_circles: 1 inside any circle.
Label circle_membership(const BoundaryDescriptor& geometry, double x, double y);

// Label of (x, y) in the annulus scenario outside the overlap tube; nullopt
// inside the tube, where the label is random.
std::optional<Label> annulus_label(double x, double y, double tau, double w);

// Rows `x1,...,xd[,label]`. When `labeled` is true the final column is the label.
LabeledPointCloud load_point_csv(const std::filesystem::path& path, bool labeled = true);
void save_point_csv(const LabeledPointCloud& cloud, const std::filesystem::path& path);

LabeledPointCloud parse_point_csv(const std::string& text, bool labeled = true);
std::string format_point_csv(const LabeledPointCloud& cloud);

std::string descriptor_to_json(const BoundaryDescriptor& d);
BoundaryDescriptor descriptor_from_json(const std::string& text);
void save_descriptor(const BoundaryDescriptor& d, const std::filesystem::path& path);
BoundaryDescriptor load_descriptor(const std::filesystem::path& path);

// Shortest decimal that round-trips exactly.
std::string format_double(double v);

}  // namespace acthom
