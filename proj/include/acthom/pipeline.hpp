#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acthom/active.hpp"
#include "acthom/datasets.hpp"
#include "acthom/graph.hpp"
#include "acthom/persistence.hpp"
#include "acthom/selection.hpp"

namespace acthom {

inline constexpr double kDefaultGraphRadius = 0.65;
// Two-circles experiment settings.
inline constexpr std::size_t kExperimentKOpposite = 5;
inline constexpr double kExperimentKappaMax = 1.39;

// LS-LVR persistence of a labelled cloud; empty if only one class is present.
PersistenceDiagram lslvr_diagram(const LabeledPointCloud& cloud, std::size_t k_opposite,
                                 double kappa_max);

// The queried points with the labels observed in the log.
LabeledPointCloud queried_subset(const LabeledPointCloud& cloud, const QueryLog& log);

enum class Strategy { kS2, kPassive };
Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);

std::size_t budget_for_fraction(double fraction, std::size_t n);

// Shared inputs of a recovery experiment: data, graph and ground-truth diagram.
struct RecoverySetup {
  LabeledPointCloud cloud;
  NeighborGraph graph;
  PersistenceDiagram truth;
  std::size_t k_opposite = kExperimentKOpposite;
  double kappa_max = kExperimentKappaMax;

  static RecoverySetup two_circles(std::size_t n, std::uint64_t data_seed, double radius,
                                   std::size_t k_opposite, double kappa_max);
};

struct RecoveryResult {
  QueryLog log;
  PersistenceDiagram estimate;
  double distance = 0.0;  // dim-1 bottleneck distance to the ground truth
};

RecoveryResult run_recovery(const RecoverySetup& setup, Strategy strategy, std::size_t budget,
                            std::uint64_t seed);

// Flat key=value config; repeated keys build lists.
struct SweepConfig {
  std::vector<double> fractions;
  std::vector<std::uint64_t> seeds;
  std::vector<Strategy> strategies;
  std::size_t n = 2000;
  std::uint64_t data_seed = 7;
  double radius = kDefaultGraphRadius;
  std::size_t k_opposite = kExperimentKOpposite;
  double kappa_max = kExperimentKappaMax;
};

SweepConfig parse_sweep_config(const std::string& text);

struct SweepRow {
  Strategy strategy;
  double fraction;
  std::uint64_t seed;
  std::size_t budget;
  std::size_t queries;
  double distance;
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);

struct SweepSummaryRow {
  Strategy strategy;
  double fraction;
  std::size_t runs;
  double median_distance;
};

std::vector<SweepSummaryRow> summarize_sweep(const std::vector<SweepRow>& rows);

double median(std::vector<double> values);

// Bank of classifiers scored on a labelled pool (for querying) and a test set.
struct ClassifierBank {
  std::vector<std::size_t> member_k;  // neighbour count of each kNN member
  std::vector<ClassifierOutputs> on_pool;
  std::vector<ClassifierOutputs> on_test;
  std::vector<PersistenceDiagram> diagrams;  // from test inputs and predictions
};

ClassifierBank make_knn_bank(const LabeledPointCloud& train, const LabeledPointCloud& pool,
                             const LabeledPointCloud& test, std::span<const std::size_t> ks,
                             std::size_t k_opposite, double kappa_max);

struct SelectionTrial {
  QueryLog log;
  std::size_t topo_pick = 0;
  double topo_distance = 0.0;
  std::size_t validation_pick = 0;
  double validation_error = 0.0;
  double topo_test_error = 0.0;
  double validation_test_error = 0.0;
  double ensemble_test_error = 0.0;
  // Error restricted to test points where both picks predict the same label.
  std::size_t agreement_points = 0;
  double topo_agreement_error = 0.0;
  double validation_agreement_error = 0.0;
  double ensemble_agreement_error = 0.0;
};

SelectionTrial run_selection_trial(const RecoverySetup& setup, const ClassifierBank& bank,
                                   const LabeledPointCloud& test, Strategy strategy,
                                   std::size_t budget, std::uint64_t seed);

std::string format_sweep_csv(const std::vector<SweepRow>& rows);
std::string format_summary_csv(const std::vector<SweepSummaryRow>& rows);

}  // namespace acthom
