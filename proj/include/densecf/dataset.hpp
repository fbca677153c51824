#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "densecf/graph.hpp"
#include "densecf/partition.hpp"
#include "densecf/spectral.hpp"

namespace densecf {

struct LabeledGraph {
  Graph graph;
  Label label = 0;
  std::string name;

  bool operator==(const LabeledGraph&) const = default;
};

// Labeled graphs over one shared node set. External node ids map to dense
// indices by position in node_ids.
struct GraphDataset {
  std::string name;
  std::vector<std::string> node_ids;
  std::vector<LabeledGraph> graphs;
  std::optional<RegionPartition> partition;

  std::size_t node_count() const { return node_ids.size(); }
  std::size_t size() const { return graphs.size(); }
  std::vector<Graph> graph_values() const;
  std::vector<Label> labels() const;

  // Throws Format when graphs disagree on node count or labels are not 0/1.
  void validate() const;

  bool operator==(const GraphDataset&) const = default;
};

std::vector<std::string> default_node_ids(std::size_t node_count);

// --- correlation matrices --------------------------------------------------

// Numeric CSV, n rows by n columns. Throws Parse with line/field position.
Eigen::MatrixXd read_correlation_csv(const std::filesystem::path& path);

// Edge (u, v) iff matrix(u, v) is strictly above the given percentile of the
// off-diagonal upper-triangle values. Throws Format for non-square or
// asymmetric (beyond 1e-9) input.
Graph threshold_correlations(const Eigen::MatrixXd& matrix, double percentile);

// Reads `index` (CSV header "file,label" with an optional third "name"
// column; files relative to the index) and thresholds every matrix at
// `percentile`. All matrices must share one size. Node ids are 0..n-1.
GraphDataset ingest_correlations(const std::filesystem::path& index, double percentile, std::string name = {});

// --- persistence -------------------------------------------------------------
//
// A dataset directory holds:
//   dataset.json      manifest {format, version, name, node_ids, graphs[{name,file,label}], partition}
//   graphs/NNNN.edges one "u v" line per edge, ids as in node_ids, lexicographic order
//   partition.csv     "node_id,region_name" header then one row per node (optional)

inline constexpr int kDatasetFormatVersion = 1;

void save_dataset(const GraphDataset& dataset, const std::filesystem::path& directory);

// Accepts the manifest path or its directory. An empty manifest file is an
// empty dataset.
GraphDataset load_dataset(const std::filesystem::path& path);

Graph read_edge_list(const std::filesystem::path& path, const std::vector<std::string>& node_ids);
void write_edge_list(const std::filesystem::path& path, const Graph& g, const std::vector<std::string>& node_ids);
RegionPartition read_partition_csv(const std::filesystem::path& path, const std::vector<std::string>& node_ids);
void write_partition_csv(const std::filesystem::path& path, const RegionPartition& partition,
                         const std::vector<std::string>& node_ids);

// --- synthetic generator ------------------------------------------------------

// Nodes split into halves S0 = [0, |V|/2) and S1 = [|V|/2, |V|). A class-i
// graph plants `cliques` random cliques (sizes uniform in [3, subgroup_size])
// inside 1 or 2 random subgroups of S_i, then grows preferential-attachment
// structure over S_(1-i): each node attaches to min(attachment, placed)
// earlier nodes by degree, `extra_edges` uniform edges are added per step,
// and every generated edge is redirected into S_i with probability
// cross_probability.
struct SyntheticSpec {
  std::size_t node_count = 60;
  std::size_t graphs = 100;
  std::size_t subgroups = 1;
  std::size_t subgroup_size = 15;
  std::size_t cliques = 10;
  std::size_t attachment = 15;
  std::size_t extra_edges = 5;
  double cross_probability = 0.7;
  std::uint64_t seed = 0;

  // SG = |V|/4, c = 10, m = SG.
  static SyntheticSpec one_subgroup(std::size_t node_count, std::size_t graphs = 100, std::uint64_t seed = 0);
  // SG = |V|/8, c = 20, m = SG.
  static SyntheticSpec two_subgroups(std::size_t node_count, std::size_t graphs = 200, std::uint64_t seed = 0);

  // Throws Spec on infeasible sizes.
  void validate() const;
};

// Labels are balanced N/2 : N/2 (class 0 first). The partition names the
// halves "S0" and "S1". Each graph draws from its own (seed, index) stream.
GraphDataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace densecf
