#include "densecf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "densecf/error.hpp"
#include "densecf/kernels.hpp"

namespace densecf {

std::vector<double> normalized_laplacian_spectrum(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  if (n == 0) return {};
  Eigen::VectorXd inv_sqrt_deg(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    const auto d = static_cast<double>(g.degree(static_cast<Node>(v)));
    inv_sqrt_deg(v) = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
  for (const Edge& e : g.edges()) {
    const double w = inv_sqrt_deg(e.u) * inv_sqrt_deg(e.v);
    lap(e.u, e.v) -= w;
    lap(e.v, e.u) -= w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorKind::Internal, "Laplacian eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + n};
}

SpectralFeatures spectral_features(const Graph& g, std::size_t k) {
  if (k == 0) fail(ErrorKind::InvalidParameter, "spectral feature count k must be positive");
  SpectralFeatures out;
  out.values.reserve(k);
  for (double lambda : normalized_laplacian_spectrum(g)) {
    if (lambda <= kPositiveEigenvalueTolerance) continue;
    out.values.push_back(lambda);
    if (out.values.size() == k) break;
  }
  if (out.values.size() < k) {
    out.padded = true;
    out.values.resize(k, 0.0);
  }
  return out;
}

Label knn_predict_features(const SFKnnModel& model, std::span<const double> features) {
  if (model.empty() || model.n_neighbors == 0)
    fail(ErrorKind::UntrainedModel, "KNN model has no training data");
  if (features.size() != model.n_eigs)
    fail(ErrorKind::InvalidParameter, "feature length " + std::to_string(features.size()) +
                                          " does not match model n_eigs " + std::to_string(model.n_eigs));
  const auto dist = kernels::squared_distances(features, model.training_features);
  std::vector<std::size_t> order(dist.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t k = std::min(model.n_neighbors, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                    });
  std::size_t ones = 0;
  for (std::size_t i = 0; i < k; ++i) ones += model.training_labels[order[i]] == 1 ? 1 : 0;
  return 2 * ones > k ? 1 : 0;
}

Label knn_predict(const SFKnnModel& model, const Graph& g) {
  if (model.empty()) fail(ErrorKind::UntrainedModel, "KNN model has no training data");
  const auto f = spectral_features(g, model.n_eigs);
  return knn_predict_features(model, f.values);
}

double f1_score(std::span<const Label> truth, std::span<const Label> predicted) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == 1 && truth[i] == 1) ++tp;
    if (predicted[i] == 1 && truth[i] == 0) ++fp;
    if (predicted[i] == 0 && truth[i] == 1) ++fn;
  }
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

namespace {

std::vector<double> prefix(const std::vector<double>& v, std::size_t k) {
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k)};
}

bool better(const GridScore& a, const GridScore& b) {
  if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
  if (a.f1 != b.f1) return a.f1 > b.f1;
  if (a.n_neighbors != b.n_neighbors) return a.n_neighbors < b.n_neighbors;
  return a.n_eigs < b.n_eigs;
}

}  // namespace

TrainResult train_sf_knn(std::span<const Graph> graphs, std::span<const Label> labels,
                         const ParameterGrid& grid, std::size_t folds, std::uint64_t seed) {
  if (graphs.size() != labels.size())
    fail(ErrorKind::InvalidParameter, "graphs and labels differ in length");
  if (folds < 2) fail(ErrorKind::InvalidParameter, "cross-validation needs at least 2 folds");
  if (graphs.size() < folds)
    fail(ErrorKind::InvalidParameter, "dataset has " + std::to_string(graphs.size()) +
                                          " graphs, fewer than " + std::to_string(folds) + " folds");
  if (grid.n_neighbors.empty() || grid.n_eigs.empty())
    fail(ErrorKind::InvalidParameter, "parameter grid is empty");
  for (Label l : labels)
    if (l != 0 && l != 1) fail(ErrorKind::InvalidParameter, "labels must be 0 or 1");
  const bool has0 = std::find(labels.begin(), labels.end(), 0) != labels.end();
  const bool has1 = std::find(labels.begin(), labels.end(), 1) != labels.end();
  if (!has0 || !has1) fail(ErrorKind::DegenerateLabels, "training labels contain a single class");
  for (std::size_t k : grid.n_eigs)
    if (k == 0) fail(ErrorKind::InvalidParameter, "n_eigs must be positive");
  for (std::size_t k : grid.n_neighbors)
    if (k == 0) fail(ErrorKind::InvalidParameter, "n_neighbors must be positive");

  const std::size_t n = graphs.size();
  const std::size_t max_eigs = *std::max_element(grid.n_eigs.begin(), grid.n_eigs.end());
  // Features for smaller k are prefixes of the max-k vector, padding included.
  const auto full = kernels::spectral_features_batch(graphs, max_eigs);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> fold_of(n);
  for (std::size_t p = 0; p < n; ++p) fold_of[order[p]] = p % folds;

  std::vector<GridScore> scores;
  for (std::size_t k_eigs : grid.n_eigs) {
    for (std::size_t k_nn : grid.n_neighbors) {
      GridScore score{k_nn, k_eigs, 0.0, 0.0, {}, {}};
      bool feasible = true;
      for (std::size_t f = 0; f < folds && feasible; ++f) {
        SFKnnModel fold_model;
        fold_model.n_neighbors = k_nn;
        fold_model.n_eigs = k_eigs;
        std::vector<Label> truth, predicted;
        for (std::size_t i = 0; i < n; ++i) {
          if (fold_of[i] == f) continue;
          fold_model.training_features.push_back(prefix(full[i].values, k_eigs));
          fold_model.training_labels.push_back(labels[i]);
        }
        if (fold_model.training_features.size() < k_nn) {
          feasible = false;
          break;
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (fold_of[i] != f) continue;
          truth.push_back(labels[i]);
          predicted.push_back(knn_predict_features(fold_model, prefix(full[i].values, k_eigs)));
        }
        std::size_t correct = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) correct += truth[i] == predicted[i] ? 1 : 0;
        score.fold_accuracy.push_back(static_cast<double>(correct) / static_cast<double>(truth.size()));
        score.fold_f1.push_back(f1_score(truth, predicted));
      }
      if (!feasible) continue;
      score.accuracy = std::accumulate(score.fold_accuracy.begin(), score.fold_accuracy.end(), 0.0) /
                       static_cast<double>(folds);
      score.f1 = std::accumulate(score.fold_f1.begin(), score.fold_f1.end(), 0.0) /
                 static_cast<double>(folds);
      scores.push_back(std::move(score));
    }
  }
  if (scores.empty())
    fail(ErrorKind::InvalidParameter, "no grid configuration fits the training fold size");

  const GridScore& best = *std::min_element(scores.begin(), scores.end(), better);

  TrainResult result;
  result.model.n_neighbors = best.n_neighbors;
  result.model.n_eigs = best.n_eigs;
  result.model.seed = seed;
  result.model.node_count = graphs.front().node_count();
  for (std::size_t i = 0; i < n; ++i) {
    result.model.training_features.push_back(prefix(full[i].values, best.n_eigs));
    result.model.training_labels.push_back(labels[i]);
  }
  auto& r = result.report;
  r.accuracy = best.accuracy;
  r.f1 = best.f1;
  r.n_neighbors = best.n_neighbors;
  r.n_eigs = best.n_eigs;
  r.folds = folds;
  r.seed = seed;
  r.fold_of = fold_of;
  r.fold_accuracy = best.fold_accuracy;
  r.fold_f1 = best.fold_f1;
  r.grid = scores;
  return result;
}

nlohmann::json to_json(const SFKnnModel& model) {
  return {
      {"format", "densecf-sfknn"},
      {"version", 1},
      {"n_neighbors", model.n_neighbors},
      {"n_eigs", model.n_eigs},
      {"seed", model.seed},
      {"node_count", model.node_count},
      {"distance", "euclidean"},
      {"labels", model.training_labels},
      {"features", model.training_features},
  };
}

SFKnnModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "densecf-sfknn")
      fail(ErrorKind::Parse, "not a densecf-sfknn model file");
    if (j.at("version").get<int>() != 1)
      fail(ErrorKind::Parse, "unsupported model version " + j.at("version").dump());
    SFKnnModel m;
    m.n_neighbors = j.at("n_neighbors").get<std::size_t>();
    m.n_eigs = j.at("n_eigs").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.node_count = j.at("node_count").get<std::size_t>();
    m.training_labels = j.at("labels").get<std::vector<Label>>();
    m.training_features = j.at("features").get<std::vector<std::vector<double>>>();
    if (m.training_labels.size() != m.training_features.size())
      fail(ErrorKind::Parse, "model features and labels differ in length");
    for (const auto& f : m.training_features)
      if (f.size() != m.n_eigs) fail(ErrorKind::Parse, "model feature row length differs from n_eigs");
    if (m.n_neighbors == 0 || m.n_neighbors > m.training_labels.size())
      fail(ErrorKind::Parse, "model n_neighbors out of range");
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed model file: ") + e.what());
  }
}

nlohmann::json to_json(const TrainReport& report) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& g : report.grid)
    grid.push_back({{"n_neighbors", g.n_neighbors},
                    {"n_eigs", g.n_eigs},
                    {"accuracy", g.accuracy},
                    {"f1", g.f1},
                    {"fold_accuracy", g.fold_accuracy},
                    {"fold_f1", g.fold_f1}});
  return {
      {"format", "densecf-train-report"},
      {"version", 1},
      {"accuracy", report.accuracy},
      {"f1", report.f1},
      {"n_neighbors", report.n_neighbors},
      {"n_eigs", report.n_eigs},
      {"folds", report.folds},
      {"seed", report.seed},
      {"fold_of", report.fold_of},
      {"fold_accuracy", report.fold_accuracy},
      {"fold_f1", report.fold_f1},
      {"grid", grid},
  };
}

void save_model(const SFKnnModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << to_json(model).dump(1) << '\n';
}

SFKnnModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace densecf
