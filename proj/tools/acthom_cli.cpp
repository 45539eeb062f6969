#include <cstdio>
#include <iostream>
#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acthom/active.hpp"
#include "acthom/bounds.hpp"
#include "acthom/complex.hpp"
#include "acthom/datasets.hpp"
#include "acthom/error.hpp"
#include "acthom/graph.hpp"
#include "acthom/io.hpp"
#include "acthom/metrics.hpp"
#include "acthom/persistence.hpp"
#include "acthom/pipeline.hpp"
#include "acthom/selection.hpp"

namespace {

using namespace acthom;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_text(path, text);
}

struct GenerateArgs {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double noise = 0.0;
  double tau = 0.0;
  double w = 0.0;
  std::string out;
  std::string descriptor;
};

struct GraphArgs {
  std::string points;
  std::optional<double> radius;
  std::optional<std::size_t> knn;
  std::string out;
};

struct QueryArgs {
  std::string points;
  std::string labels;
  std::string graph;
  std::optional<double> radius;
  std::optional<std::size_t> knn;
  std::string strategy = "s2";
  std::optional<std::size_t> budget;
  std::optional<double> fraction;
  std::uint64_t seed = 0;
  std::string out;
};

struct PersistenceArgs {
  std::string points;
  std::string log;
  std::size_t k_opposite = 1;
  double kappa_max = 0.0;
  std::string out;
  bool include_zero = false;
  std::string betti_grid;
  std::string betti_out;
  std::string complex_out;
};

struct BottleneckArgs {
  std::string a;
  std::string b;
  int dim = 1;
};

struct BoundsArgs {
  std::string mode;
  double delta = 0.1;
  std::optional<double> w;
  std::optional<double> tau;
  std::string grid;
  std::string out;
};

struct SelectArgs {
  std::string query;
  std::vector<std::string> bank;
  std::size_t point_dim = 2;
  std::size_t k_opposite = 1;
  double kappa_max = 0.0;
  int dim = 1;
  std::string validation_log;
  std::string ensemble_out;
  std::string out;
};

struct SweepArgs {
  std::string config;
  std::string out;
  std::string summary_out;
};

NeighborGraph graph_for(const LabeledPointCloud& cloud, std::optional<double> radius,
                        std::optional<std::size_t> knn) {
  if (radius && knn) throw InvalidParameter("use only one of --radius and --knn");
  if (knn) return build_knn_graph(cloud, *knn);
  return build_radius_graph(cloud, radius.value_or(kDefaultGraphRadius));
}

int run_generate(const std::string& kind, const GenerateArgs& a) {
  LabeledPointCloud cloud = kind == "two-circles"
                                ? generate_two_circles(a.n, a.seed,
                                                       BoundaryDescriptor::two_circles_default(),
                                                       a.noise)
                                : generate_annulus_cloud(a.n, a.seed, a.tau, a.w);
  save_point_csv(cloud, a.out);
  if (!a.descriptor.empty()) save_descriptor(*cloud.boundary(), a.descriptor);
  return kExitOk;
}

int run_graph(const GraphArgs& a) {
  const LabeledPointCloud cloud = load_point_csv(a.points, true);
  const NeighborGraph g = graph_for(cloud, a.radius, a.knn);
  save_edge_csv(g, a.out);
  const CutStructures cuts = cut_structures(g, cloud.labels());
  std::printf("vertices %zu edges %zu cut_edges %zu cut_boundary %zu\n", g.vertex_count(),
              g.edge_count(), cuts.cut_set.size(), cuts.cut_boundary.size());
  return kExitOk;
}

int run_query(const QueryArgs& a) {
  const bool has_labels_file = !a.labels.empty();
  const LabeledPointCloud cloud = load_point_csv(a.points, !has_labels_file);
  const LabelOracle oracle =
      has_labels_file ? LabelOracle::from_file(a.labels, cloud.size()) : LabelOracle::from_cloud(cloud);
  if (a.budget.has_value() == a.fraction.has_value())
    throw InvalidParameter("give exactly one of --budget and --budget-fraction");
  const std::size_t budget = a.budget ? *a.budget : budget_for_fraction(*a.fraction, cloud.size());
  const Strategy strategy = parse_strategy(a.strategy);
  QueryLog log;
  if (strategy == Strategy::kS2) {
    if (!a.graph.empty() && (a.radius || a.knn))
      throw InvalidParameter("use either --graph or a graph construction flag");
    const NeighborGraph g =
        a.graph.empty() ? graph_for(cloud, a.radius, a.knn) : load_edge_csv(a.graph, cloud.size());
    log = s2_run(g, oracle, budget, a.seed);
  } else {
    log = passive_run(cloud, oracle, budget, a.seed);
  }
  save_query_log(log, a.out);
  std::printf("queries %zu cut_edges_found %zu\n", log.size(), log.found_cut_edges.size());
  return kExitOk;
}

int run_persistence(const PersistenceArgs& a) {
  LabeledPointCloud cloud = load_point_csv(a.points, true);
  if (!a.log.empty()) {
    const QueryLog log = load_query_log(a.log);
    for (const auto& e : log.entries)
      if (e.vertex >= cloud.size()) throw InvalidParameter("query log refers to a missing point");
    cloud = queried_subset(cloud, log);
  }
  const auto& y = cloud.labels();
  const bool both = std::count(y.begin(), y.end(), 0) > 0 && std::count(y.begin(), y.end(), 1) > 0;
  FiltrationComplex filtration;
  if (both) filtration = build_lslvr_filtration(cloud, local_scales(cloud, a.k_opposite), a.kappa_max);
  const PersistenceDiagram diagram = both ? compute_persistence(filtration) : PersistenceDiagram{};
  save_diagram(diagram, a.out, a.include_zero);
  if (!a.complex_out.empty()) save_complex_csv(filtration, a.complex_out);
  if (!a.betti_grid.empty()) {
    std::string csv = "kappa,betti0,betti1,edge_components\n";
    for (double k : parse_grid(a.betti_grid)) {
      const std::size_t b0 = both ? betti_at(diagram, 0, k) : cloud.size();
      csv += format_double(k) + ',' + std::to_string(b0) + ',' +
             std::to_string(betti_at(diagram, 1, k)) + ',' +
             std::to_string(edge_component_count(filtration, k)) + '\n';
    }
    emit(csv, a.betti_out);
  }
  return kExitOk;
}

int run_bottleneck(const BottleneckArgs& a) {
  const double d = bottleneck_distance(load_diagram(a.a), load_diagram(a.b), a.dim);
  std::printf("%s\n", format_double(d).c_str());
  return kExitOk;
}

int run_bounds(const BoundsArgs& a) {
  ScanMode mode;
  double fixed;
  if (a.mode == "vary-tau") {
    if (!a.w) throw InvalidParameter("vary-tau needs --w");
    mode = ScanMode::kVaryTau;
    fixed = *a.w;
  } else if (a.mode == "vary-w") {
    if (!a.tau) throw InvalidParameter("vary-w needs --tau");
    mode = ScanMode::kVaryW;
    fixed = *a.tau;
  } else {
    throw InvalidParameter("--mode must be vary-tau or vary-w");
  }
  const auto grid = parse_grid(a.grid);
  const auto rows = complexity_ratio_scan(mode, grid, a.delta, fixed);
  emit(format_scan_csv(rows), a.out);
  std::size_t infeasible = 0;
  for (const auto& r : rows) infeasible += !r.feasible;
  if (infeasible > 0) {
    std::fprintf(stderr, "%zu of %zu grid points are infeasible (no admissible gamma)\n",
                 infeasible, rows.size());
    return kExitInfeasible;
  }
  return kExitOk;
}

int run_select(const SelectArgs& a) {
  const PersistenceDiagram query = load_diagram(a.query);
  std::vector<ClassifierOutputs> bank;
  std::vector<PersistenceDiagram> diagrams;
  for (const auto& path : a.bank) {
    bank.push_back(load_predictions(path, a.point_dim));
    diagrams.push_back(boundary_diagram(bank.back(), a.k_opposite, a.kappa_max));
  }
  const auto [topo, topo_distance] = select_min_distance(query, diagrams, a.dim);
  auto number = [](double v) -> nlohmann::ordered_json {
    if (v == kInfinity) return "inf";
    return v;
  };
  nlohmann::ordered_json doc;
  doc["topological"] = {{"index", topo}, {"file", a.bank[topo]}, {"distance", number(topo_distance)}};
  doc["distances"] = nlohmann::ordered_json::array();
  for (const auto& d : diagrams) doc["distances"].push_back(number(bottleneck_distance(query, d, a.dim)));
  if (!a.validation_log.empty()) {
    const QueryLog log = load_query_log(a.validation_log);
    const auto queried = log.queried_indices();
    const auto labels = log.queried_labels();
    const auto [valid, error] = validation_select(bank, queried, labels);
    doc["validation"] = {{"index", valid}, {"file", a.bank[valid]}, {"error", error}};
    if (!a.ensemble_out.empty()) {
      if (!bank[topo].probabilities || !bank[valid].probabilities)
        throw InvalidParameter("ensembling needs probability columns in both picks");
      const EnsembleOutputs ens = ensemble_average(*bank[topo].probabilities, *bank[valid].probabilities);
      ClassifierOutputs out;
      out.predictions = bank[topo].predictions.with_labels(ens.labels);
      out.probabilities = ens.probabilities;
      save_predictions(out, a.ensemble_out);
    }
  } else if (!a.ensemble_out.empty()) {
    throw InvalidParameter("--ensemble-out needs --validation-log");
  }
  const std::string json = doc.dump(1) + "\n";
  emit(json, a.out);
  return kExitOk;
}

int run_sweep_command(const SweepArgs& a) {
  const SweepConfig config = parse_sweep_config(io::read_text(a.config));
  const auto rows = run_sweep(config);
  emit(format_sweep_csv(rows), a.out);
  if (!a.summary_out.empty()) io::write_text(a.summary_out, format_summary_csv(summarize_sweep(rows)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active recovery of decision-boundary homology"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Sample a synthetic labelled point cloud");
  generate->require_subcommand(1);
  auto* two = generate->add_subcommand("two-circles", "Two disjoint unit circles");
  auto* ann = generate->add_subcommand("annulus", "Circular boundary with an overlap tube");
  for (auto* sub : {two, ann}) {
    sub->add_option("--n", gen.n, "Number of points")->required();
    sub->add_option("--seed", gen.seed, "Random seed")->required();
    sub->add_option("--out", gen.out, "Output point CSV")->required();
    sub->add_option("--descriptor", gen.descriptor, "Optional boundary descriptor JSON");
  }
  two->add_option("--noise", gen.noise, "Gaussian noise on the signed distance")->check(CLI::NonNegativeNumber);
  ann->add_option("--tau", gen.tau, "Boundary radius")->required();
  ann->add_option("--w", gen.w, "Overlap tube half-width")->required();

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Build a neighbour graph and report its cut");
  graph->add_option("--points", ga.points, "Labelled point CSV")->required();
  graph->add_option("--radius", ga.radius, "Radius graph threshold");
  graph->add_option("--knn", ga.knn, "k for the symmetrised kNN graph");
  graph->add_option("--out", ga.out, "Output edge CSV")->required();

  QueryArgs qa;
  auto* query = app.add_subcommand("query", "Query labels with S2 or uniform sampling");
  query->add_option("--points", qa.points, "Point CSV (labelled unless --labels is given)")->required();
  query->add_option("--labels", qa.labels, "Oracle label CSV `index,label`");
  query->add_option("--graph", qa.graph, "Edge CSV to use instead of building a graph");
  query->add_option("--radius", qa.radius, "Radius graph threshold (default 0.65)");
  query->add_option("--knn", qa.knn, "k for a kNN graph");
  query->add_option("--strategy", qa.strategy, "s2 or passive")->check(CLI::IsMember({"s2", "passive"}));
  query->add_option("--budget", qa.budget, "Number of queries");
  query->add_option("--budget-fraction", qa.fraction, "Queries as a fraction of the points");
  query->add_option("--seed", qa.seed, "Random seed")->required();
  query->add_option("--out", qa.out, "Output query log CSV")->required();

  PersistenceArgs pa;
  auto* pers = app.add_subcommand("persistence", "LS-LVR persistence diagram of labelled points");
  pers->add_option("--points", pa.points, "Labelled point CSV")->required();
  pers->add_option("--log", pa.log, "Restrict to the points and labels of a query log");
  pers->add_option("--k-opposite", pa.k_opposite, "Opposite-class neighbour rank for local scales")
      ->check(CLI::PositiveNumber);
  pers->add_option("--kappa-max", pa.kappa_max, "Largest scale in the filtration")->required()
      ->check(CLI::PositiveNumber);
  pers->add_option("--out", pa.out, "Output diagram JSON")->required();
  pers->add_flag("--include-zero", pa.include_zero, "Keep zero-persistence pairs");
  pers->add_option("--betti-grid", pa.betti_grid, "Scan scales lo:hi:count");
  pers->add_option("--betti-out", pa.betti_out, "Betti scan CSV (default stdout)");
  pers->add_option("--complex-out", pa.complex_out, "Filtration CSV");

  BottleneckArgs ba;
  auto* bott = app.add_subcommand("bottleneck", "Bottleneck distance between two diagrams");
  bott->add_option("--a", ba.a, "First diagram JSON")->required();
  bott->add_option("--b", ba.b, "Second diagram JSON")->required();
  bott->add_option("--dim", ba.dim, "Homology dimension")->check(CLI::Range(0, 1));

  BoundsArgs bo;
  auto* bounds = app.add_subcommand("bounds", "Active/passive complexity ratio scan");
  bounds->add_option("--mode", bo.mode, "vary-tau or vary-w")->required();
  bounds->add_option("--delta", bo.delta, "Failure probability");
  bounds->add_option("--w", bo.w, "Fixed w for vary-tau");
  bounds->add_option("--tau", bo.tau, "Fixed tau for vary-w");
  bounds->add_option("--grid", bo.grid, "Grid lo:hi:count")->required();
  bounds->add_option("--out", bo.out, "Output CSV (default stdout)");

  SelectArgs sa;
  auto* sel = app.add_subcommand("select", "Topological and validation model selection");
  sel->add_option("--query", sa.query, "Diagram JSON of the queried data")->required();
  sel->add_option("--bank", sa.bank, "Prediction CSVs of the bank members")->required();
  sel->add_option("--point-dim", sa.point_dim, "Coordinates per prediction row");
  sel->add_option("--k-opposite", sa.k_opposite, "Opposite-class neighbour rank")->check(CLI::PositiveNumber);
  sel->add_option("--kappa-max", sa.kappa_max, "Largest scale in the filtration")->required()
      ->check(CLI::PositiveNumber);
  sel->add_option("--dim", sa.dim, "Homology dimension")->check(CLI::Range(0, 1));
  sel->add_option("--validation-log", sa.validation_log, "Query log indexing bank rows");
  sel->add_option("--ensemble-out", sa.ensemble_out, "Predictions of the averaged picks");
  sel->add_option("--out", sa.out, "Output JSON (default stdout)");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Budget sweep on the two-circles experiment");
  sweep->add_option("--config", sw.config, "key=value config file")->required();
  sweep->add_option("--out", sw.out, "Per-run CSV (default stdout)");
  sweep->add_option("--summary-out", sw.summary_out, "Median summary CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return run_generate(*two ? "two-circles" : "annulus", gen);
    if (*graph) return run_graph(ga);
    if (*query) return run_query(qa);
    if (*pers) return run_persistence(pa);
    if (*bott) return run_bottleneck(ba);
    if (*bounds) return run_bounds(bo);
    if (*sel) return run_select(sa);
    if (*sweep) return run_sweep_command(sw);
  } catch (const InvalidParameter& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const InsufficientData& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Infeasible& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
