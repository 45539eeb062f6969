#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "acthom/datasets.hpp"
#include "acthom/persistence.hpp"

namespace acthom {

// Classifier predictions on a set of inputs. `predictions` carries the inputs
// and the predicted labels; probabilities are P(y = 1).
struct ClassifierOutputs {
  LabeledPointCloud predictions;
  std::optional<std::vector<double>> probabilities;

  std::size_t size() const noexcept { return predictions.size(); }
  // Throws InvalidParameter on misaligned or inconsistent probabilities.
  void validate() const;
};

// Label implied by a class-1 probability; 0.5 maps to 1.
inline Label threshold_label(double p) { return p >= 0.5 ? 1 : 0; }

// LS-LVR persistence of the predicted decision boundary. Empty when the
// predictions contain a single class.
PersistenceDiagram boundary_diagram(const ClassifierOutputs& outputs, std::size_t k_opposite,
                                    double kappa_max);

// Member with the lowest misclassification rate on the queried points.
std::pair<std::size_t, double> validation_select(std::span<const ClassifierOutputs> bank,
                                                 std::span<const std::size_t> queried,
                                                 std::span<const Label> queried_labels);

// Fraction of points whose predicted label differs from `truth`.
double error_rate(const ClassifierOutputs& outputs, std::span<const Label> truth);

struct EnsembleOutputs {
  std::vector<double> probabilities;
  std::vector<Label> labels;
};

EnsembleOutputs ensemble_average(std::span<const double> p_a, std::span<const double> p_b);

// Majority vote among the k nearest training points; vote ties go to 1.
ClassifierOutputs knn_predict(const LabeledPointCloud& train, const LabeledPointCloud& queries,
                              std::size_t k);

// CSV `x1,...,xd,label[,prob1]` with `dim` coordinates per row.
std::string format_predictions_csv(const ClassifierOutputs& outputs);
ClassifierOutputs parse_predictions_csv(const std::string& text, std::size_t dim);
void save_predictions(const ClassifierOutputs& outputs, const std::filesystem::path& path);
ClassifierOutputs load_predictions(const std::filesystem::path& path, std::size_t dim);

}  // namespace acthom
