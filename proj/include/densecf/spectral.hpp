#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "densecf/graph.hpp"

namespace densecf {

using Label = int;

// Eigenvalues at or below this are treated as zero (not "positive").
inline constexpr double kPositiveEigenvalueTolerance = 1e-8;

// The k smallest positive eigenvalues of the normalized Laplacian, ascending.
// When fewer than k positive eigenvalues exist the tail is zero and `padded`
// is set.
struct SpectralFeatures {
  std::vector<double> values;
  bool padded = false;
};

// All eigenvalues of L = I - D^-1/2 A D^-1/2, ascending. Zero-degree rows of
// D^-1/2 are zero, so each isolated node contributes eigenvalue 1.
std::vector<double> normalized_laplacian_spectrum(const Graph& g);

SpectralFeatures spectral_features(const Graph& g, std::size_t k);

struct SFKnnModel {
  std::vector<std::vector<double>> training_features;
  std::vector<Label> training_labels;
  std::size_t n_neighbors = 0;
  std::size_t n_eigs = 0;
  std::uint64_t seed = 0;
  std::size_t node_count = 0;

  bool empty() const { return training_features.empty(); }
};

// Majority vote over the n_neighbors nearest training items (Euclidean).
// Distance ties at the boundary prefer the lower training index; an even
// vote predicts 0.
Label knn_predict_features(const SFKnnModel& model, std::span<const double> features);
Label knn_predict(const SFKnnModel& model, const Graph& g);

struct ParameterGrid {
  std::vector<std::size_t> n_neighbors{1, 3, 5, 7};
  std::vector<std::size_t> n_eigs{5, 10, 15, 20};
};

struct GridScore {
  std::size_t n_neighbors = 0;
  std::size_t n_eigs = 0;
  double accuracy = 0.0;
  double f1 = 0.0;
  std::vector<double> fold_accuracy;
  std::vector<double> fold_f1;
};

struct TrainReport {
  double accuracy = 0.0;
  double f1 = 0.0;
  std::size_t n_neighbors = 0;
  std::size_t n_eigs = 0;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> fold_of;  // fold index per training graph
  std::vector<double> fold_accuracy;
  std::vector<double> fold_f1;
  std::vector<GridScore> grid;
};

struct TrainResult {
  SFKnnModel model;
  TrainReport report;
};

// Cross-validated grid search; ties on mean accuracy go to higher F1, then
// fewer neighbors, then fewer eigenvalues. The chosen configuration is
// retrained on all graphs.
TrainResult train_sf_knn(std::span<const Graph> graphs, std::span<const Label> labels,
                         const ParameterGrid& grid, std::size_t folds, std::uint64_t seed);

// F1 of the positive class (label 1); 0 when it is undefined.
double f1_score(std::span<const Label> truth, std::span<const Label> predicted);

nlohmann::json to_json(const SFKnnModel& model);
SFKnnModel model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrainReport& report);

void save_model(const SFKnnModel& model, const std::filesystem::path& path);
SFKnnModel load_model(const std::filesystem::path& path);

}  // namespace densecf
