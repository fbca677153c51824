#include "densecf/kernels.hpp"

#include <bit>
#include <string>

#include <omp.h>

#include "densecf/error.hpp"

namespace densecf::kernels {

namespace {

// Exceptions must not escape an OpenMP region, so preconditions are checked
// up front.
void require_positive_k(std::size_t k) {
  if (k == 0) fail(ErrorKind::InvalidParameter, "spectral feature count k must be positive");
}

void require_same_nodes(const Graph& g, std::span<const Graph> others) {
  for (std::size_t i = 0; i < others.size(); ++i)
    if (others[i].node_count() != g.node_count())
      fail(ErrorKind::InvalidPair, "graph " + std::to_string(i) + " has " +
                                       std::to_string(others[i].node_count()) + " nodes, expected " +
                                       std::to_string(g.node_count()));
}

}  // namespace

std::vector<std::uint64_t> triangle_counts(const Graph& g) {
  const auto n = static_cast<std::int64_t>(g.node_count());
  std::vector<std::uint64_t> counts(g.node_count(), 0);
  // T(v) = (1/2) * sum over neighbors u of |N(v) ∩ N(u)|.
#pragma omp parallel for schedule(dynamic, 8) if (n > 128)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto v = static_cast<Node>(i);
    auto rv = g.row(v);
    std::uint64_t twice = 0;
    for (std::size_t w = 0; w < rv.size(); ++w) {
      std::uint64_t bits = rv[w];
      while (bits) {
        const auto u = static_cast<Node>(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
        auto ru = g.row(u);
        for (std::size_t k = 0; k < rv.size(); ++k)
          twice += static_cast<std::uint64_t>(std::popcount(rv[k] & ru[k]));
      }
    }
    counts[v] = twice / 2;
  }
  return counts;
}

std::vector<SpectralFeatures> spectral_features_batch(std::span<const Graph> graphs, std::size_t k) {
  require_positive_k(k);
  std::vector<SpectralFeatures> out(graphs.size());
  const auto n = static_cast<std::int64_t>(graphs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) out[i] = spectral_features(graphs[i], k);
  return out;
}

std::vector<std::size_t> distances_to(const Graph& g, std::span<const Graph> others) {
  require_same_nodes(g, others);
  std::vector<std::size_t> out(others.size());
  const auto n = static_cast<std::int64_t>(others.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = symmetric_difference_distance(g, others[i]);
  return out;
}

std::vector<double> squared_distances(std::span<const double> query,
                                      std::span<const std::vector<double>> training) {
  std::vector<double> out(training.size());
  const auto n = static_cast<std::int64_t>(training.size());
#pragma omp parallel for schedule(static) if (n > 256)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& row = training[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < query.size(); ++j) {
      const double diff = query[j] - row[j];
      acc += diff * diff;
    }
    out[i] = acc;
  }
  return out;
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

namespace serial {

std::vector<std::uint64_t> triangle_counts(const Graph& g) {
  const auto n = static_cast<Node>(g.node_count());
  std::vector<std::uint64_t> counts(n, 0);
  for (Node a = 0; a < n; ++a)
    for (Node b = a + 1; b < n; ++b) {
      if (!g.has_edge(a, b)) continue;
      for (Node c = b + 1; c < n; ++c)
        if (g.has_edge(a, c) && g.has_edge(b, c)) {
          ++counts[a];
          ++counts[b];
          ++counts[c];
        }
    }
  return counts;
}

std::vector<SpectralFeatures> spectral_features_batch(std::span<const Graph> graphs, std::size_t k) {
  std::vector<SpectralFeatures> out;
  out.reserve(graphs.size());
  for (const Graph& g : graphs) out.push_back(spectral_features(g, k));
  return out;
}

std::vector<std::size_t> distances_to(const Graph& g, std::span<const Graph> others) {
  std::vector<std::size_t> out;
  out.reserve(others.size());
  for (const Graph& h : others) out.push_back(symmetric_difference_distance(g, h));
  return out;
}

std::vector<double> squared_distances(std::span<const double> query,
                                      std::span<const std::vector<double>> training) {
  std::vector<double> out;
  out.reserve(training.size());
  for (const auto& row : training) {
    double acc = 0.0;
    for (std::size_t j = 0; j < query.size(); ++j) acc += (query[j] - row[j]) * (query[j] - row[j]);
    out.push_back(acc);
  }
  return out;
}

}  // namespace serial

}  // namespace densecf::kernels
