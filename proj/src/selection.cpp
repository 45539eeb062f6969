#include "acthom/selection.hpp"

#include <algorithm>

#include "acthom/error.hpp"
#include "acthom/io.hpp"
#include "acthom/pipeline.hpp"

namespace acthom {

void ClassifierOutputs::validate() const {
  if (!predictions.has_labels()) throw InvalidParameter("classifier outputs need predicted labels");
  if (!probabilities) return;
  if (probabilities->size() != predictions.size())
    throw InvalidParameter("probabilities do not align with predictions");
  for (std::size_t i = 0; i < probabilities->size(); ++i) {
    const double p = (*probabilities)[i];
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("probability outside [0, 1]");
    if (threshold_label(p) != predictions.label(i))
      throw InvalidParameter("probability " + format_double(p) + " disagrees with label at row " +
                             std::to_string(i + 1));
  }
}

PersistenceDiagram boundary_diagram(const ClassifierOutputs& outputs, std::size_t k_opposite,
                                    double kappa_max) {
  return lslvr_diagram(outputs.predictions, k_opposite, kappa_max);
}

double error_rate(const ClassifierOutputs& outputs, std::span<const Label> truth) {
  if (truth.size() != outputs.size()) throw InvalidParameter("truth does not align with outputs");
  if (truth.empty()) throw InvalidParameter("cannot score an empty set");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) wrong += outputs.predictions.label(i) != truth[i];
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

std::pair<std::size_t, double> validation_select(std::span<const ClassifierOutputs> bank,
                                                 std::span<const std::size_t> queried,
                                                 std::span<const Label> queried_labels) {
  if (bank.empty()) throw InvalidParameter("classifier bank is empty");
  if (queried.empty()) throw InvalidParameter("validation needs at least one queried point");
  if (queried.size() != queried_labels.size())
    throw InvalidParameter("queried indices and labels differ in length");
  std::size_t best = 0;
  double best_error = 2.0;
  for (std::size_t m = 0; m < bank.size(); ++m) {
    std::size_t wrong = 0;
    for (std::size_t q = 0; q < queried.size(); ++q) {
      if (queried[q] >= bank[m].size()) throw InvalidParameter("queried index out of range");
      wrong += bank[m].predictions.label(queried[q]) != queried_labels[q];
    }
    const double err = static_cast<double>(wrong) / static_cast<double>(queried.size());
    if (err < best_error) {
      best = m;
      best_error = err;
    }
  }
  return {best, best_error};
}

EnsembleOutputs ensemble_average(std::span<const double> p_a, std::span<const double> p_b) {
  if (p_a.size() != p_b.size()) throw InvalidParameter("probability vectors differ in length");
  EnsembleOutputs out;
  out.probabilities.reserve(p_a.size());
  out.labels.reserve(p_a.size());
  for (std::size_t i = 0; i < p_a.size(); ++i) {
    if (!(p_a[i] >= 0.0 && p_a[i] <= 1.0) || !(p_b[i] >= 0.0 && p_b[i] <= 1.0))
      throw InvalidParameter("probability outside [0, 1]");
    const double mean = (p_a[i] + p_b[i]) / 2.0;
    out.probabilities.push_back(mean);
    out.labels.push_back(threshold_label(mean));
  }
  return out;
}

ClassifierOutputs knn_predict(const LabeledPointCloud& train, const LabeledPointCloud& queries,
                              std::size_t k) {
  if (train.empty()) throw InvalidParameter("knn needs a nonempty training set");
  if (k < 1 || k > train.size()) throw InvalidParameter("knn needs 1 <= k <= training size");
  if (!queries.empty() && queries.dim() != train.dim())
    throw InvalidParameter("query and training dimensions differ");
  const auto& labels = train.labels();
  ClassifierOutputs out;
  out.predictions = LabeledPointCloud(train.dim(), queries.coords());
  std::vector<Label> predicted;
  std::vector<double> probs;
  std::vector<std::pair<double, std::size_t>> candidates(train.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto p = queries.point(q);
    for (std::size_t i = 0; i < train.size(); ++i)
      candidates[i] = {squared_distance(p, train.point(i)), i};
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                      candidates.end());
    std::size_t ones = 0;
    for (std::size_t r = 0; r < k; ++r) ones += labels[candidates[r].second];
    predicted.push_back(2 * ones >= k ? 1 : 0);
    probs.push_back(static_cast<double>(ones) / static_cast<double>(k));
  }
  out.predictions = out.predictions.with_labels(std::move(predicted));
  out.probabilities = std::move(probs);
  return out;
}

std::string format_predictions_csv(const ClassifierOutputs& outputs) {
  outputs.validate();
  std::string out;
  const auto& cloud = outputs.predictions;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (double x : cloud.point(i)) {
      out += format_double(x);
      out += ',';
    }
    out += cloud.label(i) ? '1' : '0';
    if (outputs.probabilities) {
      out += ',';
      out += format_double((*outputs.probabilities)[i]);
    }
    out += '\n';
  }
  return out;
}

ClassifierOutputs parse_predictions_csv(const std::string& text, std::size_t dim) {
  if (dim < 1) throw InvalidParameter("prediction files need dim >= 1");
  std::vector<double> coords;
  std::vector<Label> labels;
  std::vector<double> probs;
  std::optional<bool> with_prob;
  for (const auto& line : io::lines(text)) {
    const auto f = io::split_commas(line.text);
    if (f.size() != dim + 1 && f.size() != dim + 2)
      throw ParseError("expected " + std::to_string(dim) + " coordinates, a label and an optional probability",
                       line.number);
    const bool row_prob = f.size() == dim + 2;
    if (with_prob && *with_prob != row_prob)
      throw ParseError("probability column present on some rows only", line.number);
    with_prob = row_prob;
    for (std::size_t k = 0; k < dim; ++k) {
      double v;
      if (!io::parse_double(f[k], v)) throw ParseError("non-numeric field", line.number);
      coords.push_back(v);
    }
    std::size_t y;
    if (!io::parse_index(f[dim], y) || y > 1) throw ParseError("label must be 0 or 1", line.number);
    labels.push_back(static_cast<Label>(y));
    if (row_prob) {
      double p;
      if (!io::parse_double(f[dim + 1], p) || !(p >= 0.0 && p <= 1.0))
        throw ParseError("probability must be a number in [0, 1]", line.number);
      if (threshold_label(p) != y) throw ParseError("probability disagrees with label", line.number);
      probs.push_back(p);
    }
  }
  ClassifierOutputs out;
  out.predictions = LabeledPointCloud(dim, std::move(coords), std::move(labels));
  if (with_prob.value_or(false)) out.probabilities = std::move(probs);
  return out;
}

void save_predictions(const ClassifierOutputs& outputs, const std::filesystem::path& path) {
  io::write_text(path, format_predictions_csv(outputs));
}

ClassifierOutputs load_predictions(const std::filesystem::path& path, std::size_t dim) {
  return parse_predictions_csv(io::read_text(path), dim);
}

}  // namespace acthom
