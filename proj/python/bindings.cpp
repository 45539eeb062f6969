#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "acthom/active.hpp"
#include "acthom/bounds.hpp"
#include "acthom/datasets.hpp"
#include "acthom/error.hpp"
#include "acthom/graph.hpp"
#include "acthom/metrics.hpp"
#include "acthom/pipeline.hpp"

namespace py = pybind11;
using namespace acthom;

namespace {

using Points = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Labels = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using Pairs = std::vector<std::pair<double, double>>;

LabeledPointCloud to_cloud(const Points& points) {
  if (points.ndim() != 2) throw InvalidParameter("points must be a 2-d array");
  const auto n = static_cast<std::size_t>(points.shape(0));
  const auto d = static_cast<std::size_t>(points.shape(1));
  return LabeledPointCloud(d, std::vector<double>(points.data(), points.data() + n * d));
}

LabeledPointCloud to_cloud(const Points& points, const Labels& labels) {
  const LabeledPointCloud cloud = to_cloud(points);
  if (static_cast<std::size_t>(labels.size()) != cloud.size())
    throw InvalidParameter("labels do not match points");
  return cloud.with_labels(std::vector<Label>(labels.data(), labels.data() + labels.size()));
}

py::tuple from_cloud(const LabeledPointCloud& cloud) {
  Points points({cloud.size(), cloud.dim()});
  std::copy(cloud.coords().begin(), cloud.coords().end(), points.mutable_data());
  Labels labels(cloud.size());
  std::copy(cloud.labels().begin(), cloud.labels().end(), labels.mutable_data());
  return py::make_tuple(points, labels);
}

py::list log_entries(const QueryLog& log) {
  py::list out;
  for (const auto& e : log.entries) out.append(py::make_tuple(e.vertex, e.label, phase_name(e.phase)));
  return out;
}

PersistenceDiagram to_diagram(const Pairs& pairs, int dim) {
  PersistenceDiagram d;
  for (const auto& [b, death] : pairs) d.pairs.push_back({dim, b, death});
  return d;
}

}  // namespace

PYBIND11_MODULE(_acthom, m) {
  m.doc() = "Active recovery of decision-boundary homology.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<Infeasible>(m, "Infeasible", error.ptr());
  py::register_exception<InsufficientData>(m, "InsufficientData", error.ptr());
  py::register_exception<InvalidFiltration>(m, "InvalidFiltration", error.ptr());

  m.def("two_circles",
        [](std::size_t n, std::uint64_t seed, double noise) {
          return from_cloud(generate_two_circles(n, seed, BoundaryDescriptor::two_circles_default(), noise));
        },
        py::arg("n"), py::arg("seed"), py::arg("noise") = 0.0,
        "Points and labels for the two-circles boundary.");

  m.def("annulus",
        [](std::size_t n, std::uint64_t seed, double tau, double w) {
          return from_cloud(generate_annulus_cloud(n, seed, tau, w));
        },
        py::arg("n"), py::arg("seed"), py::arg("tau"), py::arg("w"));

  m.def("radius_graph_edges",
        [](const Points& points, double radius) {
          std::vector<std::pair<Vertex, Vertex>> out;
          for (const Edge& e : build_radius_graph(to_cloud(points), radius).edges())
            out.emplace_back(e.first, e.second);
          return out;
        },
        py::arg("points"), py::arg("radius"));

  m.def("s2_query",
        [](const Points& points, const Labels& labels, std::size_t budget, std::uint64_t seed,
           double radius) {
          const LabeledPointCloud cloud = to_cloud(points, labels);
          return log_entries(
              s2_run(build_radius_graph(cloud, radius), LabelOracle::from_cloud(cloud), budget, seed));
        },
        py::arg("points"), py::arg("labels"), py::arg("budget"), py::arg("seed"),
        py::arg("radius") = kDefaultGraphRadius,
        "S2 query log as (vertex, label, phase) tuples.");

  m.def("passive_query",
        [](const Points& points, const Labels& labels, std::size_t budget, std::uint64_t seed) {
          const LabeledPointCloud cloud = to_cloud(points, labels);
          return log_entries(passive_run(cloud, LabelOracle::from_cloud(cloud), budget, seed));
        },
        py::arg("points"), py::arg("labels"), py::arg("budget"), py::arg("seed"));

  m.def("persistence",
        [](const Points& points, const Labels& labels, std::size_t k_opposite, double kappa_max) {
          const PersistenceDiagram d = lslvr_diagram(to_cloud(points, labels), k_opposite, kappa_max);
          py::dict out;
          for (int dim = 0; dim <= 1; ++dim) {
            Pairs pairs;
            for (const auto& p : d.in_dim(dim, false)) pairs.emplace_back(p.birth, p.death);
            out[py::int_(dim)] = pairs;
          }
          return out;
        },
        py::arg("points"), py::arg("labels"), py::arg("k_opposite") = 1, py::arg("kappa_max"),
        "LS-LVR persistence pairs per dimension, zero-persistence pairs dropped.");

  m.def("bottleneck",
        [](const Pairs& a, const Pairs& b) {
          return bottleneck_distance(to_diagram(a, 1), to_diagram(b, 1), 1);
        },
        py::arg("a"), py::arg("b"), "Bottleneck distance between two lists of (birth, death).");

  m.def("feasible_gamma", &feasible_gamma, py::arg("tau"), py::arg("w"));
  m.def("covering_number_circle", &covering_number_circle, py::arg("tau"), py::arg("r"));

  m.def("ratio_scan",
        [](const std::string& mode, const std::vector<double>& grid, double delta, double fixed) {
          if (mode != "vary-tau" && mode != "vary-w") throw InvalidParameter("mode must be vary-tau or vary-w");
          const auto rows = complexity_ratio_scan(
              mode == "vary-tau" ? ScanMode::kVaryTau : ScanMode::kVaryW, grid, delta, fixed);
          py::list out;
          for (const auto& r : rows) {
            py::dict row;
            row["param"] = r.param;
            row["feasible"] = r.feasible;
            row["gamma"] = r.scenario.gamma;
            row["active_bound"] = r.active_bound;
            row["passive_bound"] = r.passive_bound;
            row["ratio"] = r.ratio;
            out.append(row);
          }
          return out;
        },
        py::arg("mode"), py::arg("grid"), py::arg("delta"), py::arg("fixed"));
}
