#include "acthom/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "acthom/complex.hpp"
#include "acthom/error.hpp"
#include "acthom/io.hpp"
#include "acthom/metrics.hpp"
#include "acthom/selection.hpp"

namespace acthom {

PersistenceDiagram lslvr_diagram(const LabeledPointCloud& cloud, std::size_t k_opposite,
                                 double kappa_max) {
  const auto& labels = cloud.labels();
  const bool both = std::find(labels.begin(), labels.end(), 0) != labels.end() &&
                    std::find(labels.begin(), labels.end(), 1) != labels.end();
  if (!both) return {};
  const LocalScales scales = local_scales(cloud, k_opposite);
  return compute_persistence(build_lslvr_filtration(cloud, scales, kappa_max));
}

LabeledPointCloud queried_subset(const LabeledPointCloud& cloud, const QueryLog& log) {
  const auto rows = log.queried_indices();
  return cloud.subset(rows).with_labels(log.queried_labels());
}

Strategy parse_strategy(const std::string& name) {
  if (name == "s2") return Strategy::kS2;
  if (name == "passive") return Strategy::kPassive;
  throw InvalidParameter("unknown strategy `" + name + "` (expected s2 or passive)");
}

std::string strategy_name(Strategy s) { return s == Strategy::kS2 ? "s2" : "passive"; }

std::size_t budget_for_fraction(double fraction, std::size_t n) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidParameter("budget fraction must be in [0, 1]");
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
}

RecoverySetup RecoverySetup::two_circles(std::size_t n, std::uint64_t data_seed, double radius,
                                         std::size_t k_opposite, double kappa_max) {
  RecoverySetup s;
  s.cloud = generate_two_circles(n, data_seed);
  s.graph = build_radius_graph(s.cloud, radius);
  s.k_opposite = k_opposite;
  s.kappa_max = kappa_max;
  s.truth = lslvr_diagram(s.cloud, k_opposite, kappa_max);
  return s;
}

RecoveryResult run_recovery(const RecoverySetup& setup, Strategy strategy, std::size_t budget,
                            std::uint64_t seed) {
  const LabelOracle oracle = LabelOracle::from_cloud(setup.cloud);
  RecoveryResult r;
  r.log = strategy == Strategy::kS2 ? s2_run(setup.graph, oracle, budget, seed)
                                    : passive_run(setup.cloud, oracle, budget, seed);
  const LabeledPointCloud sample = queried_subset(setup.cloud, r.log);
  std::size_t smaller_class = 0;
  if (!sample.empty()) {
    const auto& y = sample.labels();
    const auto ones = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
    smaller_class = std::min(ones, y.size() - ones);
  }
  if (smaller_class >= setup.k_opposite)
    r.estimate = lslvr_diagram(sample, setup.k_opposite, setup.kappa_max);
  r.distance = bottleneck_distance(r.estimate, setup.truth, 1);
  return r;
}

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig c;
  for (const auto& line : io::lines(text)) {
    std::string_view body = line.text;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    if (body.find_first_not_of(" \t") == std::string_view::npos) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line.number);
    auto trim = [](std::string_view s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string_view::npos ? std::string_view{} : s.substr(b, e - b + 1);
    };
    const std::string key(trim(body.substr(0, eq)));
    const std::string_view value = trim(body.substr(eq + 1));
    auto bad = [&]() { return ParseError("bad value for key `" + key + "`", line.number); };
    double d;
    std::size_t u;
    if (key == "fraction") {
      if (!io::parse_double(value, d) || !(d >= 0.0 && d <= 1.0)) throw bad();
      c.fractions.push_back(d);
    } else if (key == "seed") {
      if (!io::parse_index(value, u)) throw bad();
      c.seeds.push_back(u);
    } else if (key == "strategy") {
      if (value != "s2" && value != "passive") throw bad();
      c.strategies.push_back(parse_strategy(std::string(value)));
    } else if (key == "n") {
      if (!io::parse_index(value, u)) throw bad();
      c.n = u;
    } else if (key == "data_seed") {
      if (!io::parse_index(value, u)) throw bad();
      c.data_seed = u;
    } else if (key == "radius") {
      if (!io::parse_double(value, d) || !(d > 0.0)) throw bad();
      c.radius = d;
    } else if (key == "k_opposite") {
      if (!io::parse_index(value, u) || u < 1) throw bad();
      c.k_opposite = u;
    } else if (key == "kappa_max") {
      if (!io::parse_double(value, d) || !(d > 0.0)) throw bad();
      c.kappa_max = d;
    } else {
      throw ParseError("unknown key `" + key + "`", line.number);
    }
  }
  return c;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  std::vector<SweepRow> rows;
  if (config.fractions.empty() || config.seeds.empty() || config.strategies.empty()) return rows;
  const RecoverySetup setup = RecoverySetup::two_circles(config.n, config.data_seed, config.radius,
                                                         config.k_opposite, config.kappa_max);
  for (Strategy strategy : config.strategies)
    for (double fraction : config.fractions)
      for (std::uint64_t seed : config.seeds) {
        const std::size_t budget = budget_for_fraction(fraction, config.n);
        const RecoveryResult r = run_recovery(setup, strategy, budget, seed);
        rows.push_back({strategy, fraction, seed, budget, r.log.size(), r.distance});
      }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidParameter("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

std::vector<SweepSummaryRow> summarize_sweep(const std::vector<SweepRow>& rows) {
  std::vector<SweepSummaryRow> out;
  std::vector<std::vector<double>> groups;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SweepSummaryRow& s) {
      return s.strategy == r.strategy && s.fraction == r.fraction;
    });
    if (it == out.end()) {
      out.push_back({r.strategy, r.fraction, 0, 0.0});
      groups.emplace_back();
      it = out.end() - 1;
    }
    groups[static_cast<std::size_t>(it - out.begin())].push_back(r.distance);
    ++it->runs;
  }
  for (std::size_t g = 0; g < out.size(); ++g) out[g].median_distance = median(groups[g]);
  return out;
}

ClassifierBank make_knn_bank(const LabeledPointCloud& train, const LabeledPointCloud& pool,
                             const LabeledPointCloud& test, std::span<const std::size_t> ks,
                             std::size_t k_opposite, double kappa_max) {
  ClassifierBank bank;
  for (std::size_t k : ks) {
    bank.member_k.push_back(k);
    bank.on_pool.push_back(knn_predict(train, pool, k));
    bank.on_test.push_back(knn_predict(train, test, k));
    bank.diagrams.push_back(boundary_diagram(bank.on_test.back(), k_opposite, kappa_max));
  }
  return bank;
}

SelectionTrial run_selection_trial(const RecoverySetup& setup, const ClassifierBank& bank,
                                   const LabeledPointCloud& test, Strategy strategy,
                                   std::size_t budget, std::uint64_t seed) {
  RecoveryResult r = run_recovery(setup, strategy, budget, seed);
  SelectionTrial t;
  std::tie(t.topo_pick, t.topo_distance) = select_min_distance(r.estimate, bank.diagrams, 1);
  const auto queried = r.log.queried_indices();
  const auto observed = r.log.queried_labels();
  std::tie(t.validation_pick, t.validation_error) =
      validation_select(bank.on_pool, queried, observed);
  t.log = std::move(r.log);

  const auto& truth = test.labels();
  const ClassifierOutputs& topo = bank.on_test[t.topo_pick];
  const ClassifierOutputs& valid = bank.on_test[t.validation_pick];
  t.topo_test_error = error_rate(topo, truth);
  t.validation_test_error = error_rate(valid, truth);
  const EnsembleOutputs ens = ensemble_average(*topo.probabilities, *valid.probabilities);
  std::size_t ens_wrong = 0, agree = 0, topo_wrong = 0, valid_wrong = 0, ens_agree_wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool wrong = ens.labels[i] != truth[i];
    ens_wrong += wrong;
    if (topo.predictions.label(i) != valid.predictions.label(i)) continue;
    ++agree;
    topo_wrong += topo.predictions.label(i) != truth[i];
    valid_wrong += valid.predictions.label(i) != truth[i];
    ens_agree_wrong += wrong;
  }
  auto rate = [](std::size_t k, std::size_t n) {
    return n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
  };
  t.ensemble_test_error = rate(ens_wrong, truth.size());
  t.agreement_points = agree;
  t.topo_agreement_error = rate(topo_wrong, agree);
  t.validation_agreement_error = rate(valid_wrong, agree);
  t.ensemble_agreement_error = rate(ens_agree_wrong, agree);
  return t;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "strategy,fraction,seed,budget,queries,distance\n";
  for (const auto& r : rows)
    out += strategy_name(r.strategy) + ',' + format_double(r.fraction) + ',' +
           std::to_string(r.seed) + ',' + std::to_string(r.budget) + ',' +
           std::to_string(r.queries) + ',' + format_double(r.distance) + '\n';
  return out;
}

std::string format_summary_csv(const std::vector<SweepSummaryRow>& rows) {
  std::string out = "strategy,fraction,runs,median_distance\n";
  for (const auto& r : rows)
    out += strategy_name(r.strategy) + ',' + format_double(r.fraction) + ',' +
           std::to_string(r.runs) + ',' + format_double(r.median_distance) + '\n';
  return out;
}

}  // namespace acthom
