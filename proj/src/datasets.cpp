#include "acthom/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include <nlohmann/json.hpp>

#include "acthom/error.hpp"
#include "acthom/io.hpp"
#include "acthom/rng.hpp"

namespace acthom {

BoundaryDescriptor BoundaryDescriptor::two_circles_default() {
  BoundaryDescriptor d;
  d.circles = {{-2.0, 0.0, 1.0}, {2.0, 0.0, 1.0}};
  d.betti0 = 2;
  d.betti1 = 2;
  return d;
}

void BoundaryDescriptor::validate_disjoint() const {
  for (const auto& c : circles) {
    if (!(c.radius > 0.0) || !std::isfinite(c.radius))
      throw InvalidGeometry("circle radius must be positive");
  }
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      const double d = std::hypot(circles[i].cx - circles[j].cx, circles[i].cy - circles[j].cy);
      if (!(d > circles[i].radius + circles[j].radius))
        throw InvalidGeometry("circles " + std::to_string(i) + " and " + std::to_string(j) +
                              " overlap");
    }
  }
}

LabeledPointCloud::LabeledPointCloud(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidParameter("point dimension must be >= 1");
}

LabeledPointCloud::LabeledPointCloud(std::size_t dim, std::vector<double> coords,
                                     std::optional<std::vector<Label>> labels)
    : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)) {
  check_invariants();
}

void LabeledPointCloud::check_invariants() const {
  if (dim_ == 0) throw InvalidParameter("point dimension must be >= 1");
  if (coords_.size() % dim_ != 0)
    throw InvalidParameter("coordinate count is not a multiple of the dimension");
  if (labels_) {
    if (labels_->size() != size()) throw InvalidParameter("label count does not match points");
    for (Label y : *labels_)
      if (y > 1) throw InvalidParameter("labels must be 0 or 1");
  }
}

const std::vector<Label>& LabeledPointCloud::labels() const {
  if (!labels_) throw InvalidParameter("point cloud has no labels");
  return *labels_;
}

void LabeledPointCloud::push_back(std::span<const double> p) {
  if (p.size() != dim_) throw InvalidParameter("point dimension mismatch");
  if (labels_) throw InvalidParameter("labeled cloud requires a label");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

void LabeledPointCloud::push_back(std::span<const double> p, Label y) {
  if (p.size() != dim_) throw InvalidParameter("point dimension mismatch");
  if (y > 1) throw InvalidParameter("labels must be 0 or 1");
  if (!labels_) {
    if (!coords_.empty()) throw InvalidParameter("unlabeled cloud cannot take a label");
    labels_.emplace();
  }
  coords_.insert(coords_.end(), p.begin(), p.end());
  labels_->push_back(y);
}

LabeledPointCloud LabeledPointCloud::subset(std::span<const std::size_t> rows) const {
  std::vector<double> coords;
  coords.reserve(rows.size() * dim_);
  std::optional<std::vector<Label>> labels;
  if (labels_) labels.emplace().reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= size()) throw InvalidParameter("subset row out of range");
    auto p = point(r);
    coords.insert(coords.end(), p.begin(), p.end());
    if (labels) labels->push_back((*labels_)[r]);
  }
  return LabeledPointCloud(dim_, std::move(coords), std::move(labels));
}

LabeledPointCloud LabeledPointCloud::with_labels(std::vector<Label> labels) const {
  LabeledPointCloud out(dim_, coords_, std::move(labels));
  out.boundary_ = boundary_;
  return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

LabelOracle::LabelOracle(std::vector<Label> labels) : labels_(std::move(labels)) {
  for (Label y : labels_)
    if (y > 1) throw InvalidParameter("oracle labels must be 0 or 1");
}

LabelOracle LabelOracle::from_cloud(const LabeledPointCloud& cloud) {
  return LabelOracle(cloud.labels());
}

LabelOracle LabelOracle::from_file(const std::filesystem::path& path, std::size_t n) {
  const std::string text = io::read_text(path);
  std::vector<int> labels(n, -1);
  for (const auto& line : io::lines(text)) {
    const auto fields = io::split_commas(line.text);
    std::size_t index = 0;
    std::size_t value = 0;
    if (fields.size() != 2 || !io::parse_index(fields[0], index) ||
        !io::parse_index(fields[1], value))
      throw ParseError("expected `index,label`", line.number);
    if (index >= n) throw ParseError("index out of range", line.number);
    if (value > 1) throw ParseError("label must be 0 or 1", line.number);
    if (labels[index] != -1) throw ParseError("duplicate index", line.number);
    labels[index] = static_cast<int>(value);
  }
  std::vector<Label> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < 0) throw ParseError("label file has no entry for index " + std::to_string(i));
    out[i] = static_cast<Label>(labels[i]);
  }
  return LabelOracle(std::move(out));
}

Label LabelOracle::query(std::size_t index) const {
  if (index >= labels_.size()) throw InvalidParameter("oracle index out of range");
  return labels_[index];
}

namespace {

double signed_circle_distance(const BoundaryDescriptor& g, double x, double y) {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& c : g.circles) s = std::min(s, std::hypot(x - c.cx, y - c.cy) - c.radius);
  return s;
}

}  // namespace

Label circle_membership(const BoundaryDescriptor& geometry, double x, double y) {
  for (const auto& c : geometry.circles)
    if (std::hypot(x - c.cx, y - c.cy) < c.radius) return 1;
  return 0;
}

LabeledPointCloud generate_two_circles(std::size_t n, std::uint64_t seed,
                                       const BoundaryDescriptor& geometry, double noise) {
  if (geometry.circles.size() != 2)
    throw InvalidGeometry("two-circles geometry needs exactly two circles");
  geometry.validate_disjoint();
  if (!(noise >= 0.0)) throw InvalidParameter("noise must be nonnegative");

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin, rmax = 0.0;
  for (const auto& c : geometry.circles) {
    xmin = std::min(xmin, c.cx - c.radius);
    xmax = std::max(xmax, c.cx + c.radius);
    ymin = std::min(ymin, c.cy - c.radius);
    ymax = std::max(ymax, c.cy + c.radius);
    rmax = std::max(rmax, c.radius);
  }
  xmin -= rmax, xmax += rmax, ymin -= rmax, ymax += rmax;

  SplitMix64 rng(seed);
  std::vector<double> coords;
  std::vector<Label> labels;
  coords.reserve(2 * n);
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(xmin, xmax);
    const double y = rng.uniform(ymin, ymax);
    Label label;
    if (noise > 0.0) {
      label = signed_circle_distance(geometry, x, y) + noise * rng.normal() < 0.0 ? 1 : 0;
    } else {
      label = circle_membership(geometry, x, y);
    }
    coords.push_back(x);
    coords.push_back(y);
    labels.push_back(label);
  }
  LabeledPointCloud cloud(2, std::move(coords), std::move(labels));
  BoundaryDescriptor d = geometry;
  d.betti0 = 2;
  d.betti1 = 2;
  cloud.set_boundary(std::move(d));
  return cloud;
}

std::optional<Label> annulus_label(double x, double y, double tau, double w) {
  const double r = std::hypot(x, y);
  if (std::abs(r - tau) < w) return std::nullopt;
  return r < tau ? Label{1} : Label{0};
}

LabeledPointCloud generate_annulus_cloud(std::size_t n, std::uint64_t seed, double tau,
                                         double w) {
  constexpr double half_side = 2.5;
  if (!(tau > 0.0)) throw InvalidGeometry("tau must be positive");
  if (!(w >= 0.0) || !(w < tau)) throw InvalidGeometry("w must satisfy 0 <= w < tau");
  if (tau + w > half_side) throw InvalidGeometry("circle of radius tau+w does not fit the square");

  SplitMix64 rng(seed);
  std::vector<double> coords;
  std::vector<Label> labels;
  coords.reserve(2 * n);
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(-half_side, half_side);
    const double y = rng.uniform(-half_side, half_side);
    const auto fixed = annulus_label(x, y, tau, w);
    const Label label = fixed ? *fixed : (rng.uniform() < 0.5 ? Label{1} : Label{0});
    coords.push_back(x);
    coords.push_back(y);
    labels.push_back(label);
  }
  LabeledPointCloud cloud(2, std::move(coords), std::move(labels));
  BoundaryDescriptor d;
  d.circles = {{0.0, 0.0, tau}};
  d.betti0 = 1;
  d.betti1 = 1;
  cloud.set_boundary(std::move(d));
  return cloud;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

LabeledPointCloud parse_point_csv(const std::string& text, bool labeled) {
  std::size_t dim = 0;
  std::vector<double> coords;
  std::vector<Label> labels;
  for (const auto& line : io::lines(text)) {
    const auto fields = io::split_commas(line.text);
    const std::size_t d = labeled ? fields.size() - 1 : fields.size();
    if (d == 0) throw ParseError("row has no coordinates", line.number);
    if (dim == 0) {
      dim = d;
    } else if (d != dim) {
      throw ParseError("ragged row: expected " + std::to_string(dim) + " coordinates, got " +
                           std::to_string(d),
                       line.number);
    }
    for (std::size_t k = 0; k < d; ++k) {
      double v;
      if (!io::parse_double(fields[k], v)) throw ParseError("non-numeric field", line.number);
      coords.push_back(v);
    }
    if (labeled) {
      std::size_t y;
      if (!io::parse_index(fields.back(), y) || y > 1)
        throw ParseError("label must be 0 or 1", line.number);
      labels.push_back(static_cast<Label>(y));
    }
  }
  if (dim == 0) {
    // Empty file: a labeled 2-d cloud with no rows.
    return LabeledPointCloud(2, {}, labeled ? std::optional<std::vector<Label>>(std::vector<Label>{})
                                            : std::nullopt);
  }
  return LabeledPointCloud(dim, std::move(coords),
                           labeled ? std::optional<std::vector<Label>>(std::move(labels))
                                   : std::nullopt);
}

std::string format_point_csv(const LabeledPointCloud& cloud) {
  std::string out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out += ',';
      out += format_double(p[k]);
    }
    if (cloud.has_labels()) {
      out += ',';
      out += cloud.label(i) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

LabeledPointCloud load_point_csv(const std::filesystem::path& path, bool labeled) {
  return parse_point_csv(io::read_text(path), labeled);
}

void save_point_csv(const LabeledPointCloud& cloud, const std::filesystem::path& path) {
  io::write_text(path, format_point_csv(cloud));
}

std::string descriptor_to_json(const BoundaryDescriptor& d) {
  nlohmann::json j;
  j["circles"] = nlohmann::json::array();
  for (const auto& c : d.circles) j["circles"].push_back({{"c", {c.cx, c.cy}}, {"r", c.radius}});
  j["betti0"] = d.betti0;
  j["betti1"] = d.betti1;
  return j.dump(2) + "\n";
}

BoundaryDescriptor descriptor_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    BoundaryDescriptor d;
    for (const auto& c : j.at("circles")) {
      const auto& center = c.at("c");
      if (center.size() != 2) throw ParseError("circle centre must have two coordinates");
      d.circles.push_back({center[0].get<double>(), center[1].get<double>(), c.at("r").get<double>()});
    }
    d.betti0 = j.at("betti0").get<int>();
    d.betti1 = j.at("betti1").get<int>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("descriptor JSON: ") + e.what());
  }
}

void save_descriptor(const BoundaryDescriptor& d, const std::filesystem::path& path) {
  io::write_text(path, descriptor_to_json(d));
}

BoundaryDescriptor load_descriptor(const std::filesystem::path& path) {
  return descriptor_from_json(io::read_text(path));
}

}  // namespace acthom
