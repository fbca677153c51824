#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial twin in
// kernels::serial that is kept as the test reference and benchmark baseline.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "densecf/graph.hpp"
#include "densecf/spectral.hpp"

namespace densecf::kernels {

// Per-node triangle counts; parallel over nodes using bitset intersections.
std::vector<std::uint64_t> triangle_counts(const Graph& g);

// Spectral features of every graph; parallel over graphs.
std::vector<SpectralFeatures> spectral_features_batch(std::span<const Graph> graphs, std::size_t k);

// Symmetric-difference distance from `g` to each of `others`.
std::vector<std::size_t> distances_to(const Graph& g, std::span<const Graph> others);

// Squared Euclidean distance from `query` to each row of `training`.
std::vector<double> squared_distances(std::span<const double> query,
                                      std::span<const std::vector<double>> training);

// Number of OpenMP threads parallel regions will use.
int max_threads();
void set_threads(int n);

namespace serial {

// Triple loop over node triples; independent of the bitset path.
std::vector<std::uint64_t> triangle_counts(const Graph& g);
std::vector<SpectralFeatures> spectral_features_batch(std::span<const Graph> graphs, std::size_t k);
std::vector<std::size_t> distances_to(const Graph& g, std::span<const Graph> others);
std::vector<double> squared_distances(std::span<const double> query,
                                      std::span<const std::vector<double>> training);

}  // namespace serial

}  // namespace densecf::kernels
