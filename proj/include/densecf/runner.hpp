#pragma once

// Orchestration shared by the command-line tool: method dispatch, the
// parallel benchmark fan-out and result serialization.

#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "densecf/baselines.hpp"
#include "densecf/counterfactual.hpp"
#include "densecf/dataset.hpp"
#include "densecf/density_search.hpp"
#include "densecf/evaluation.hpp"
#include "densecf/oracle.hpp"

namespace densecf {

inline constexpr const char* kToolkitVersion = "1.0.0";

enum class Method { Tri, Cli, Rcli, Edg, Dat, DatBw, RcliBw };

Method parse_method(const std::string& name);
std::string to_string(Method method);
std::vector<Method> all_methods();
bool needs_partition(Method method);

struct RunConfig {
  std::optional<std::size_t> max_iterations;  // TRI / CLI / RCLI
  std::size_t clique_budget = kDefaultCliqueBudget;
  RankingStrategy ranking = RankingStrategy::Triangles;
  std::size_t edg_max_iterations = kDefaultEdgeFlipIterations;
  std::uint64_t seed = 0;
};

// Independent stream per (seed, stream id).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Runs one method on dataset instance `instance`. `pool` holds the dataset's
// graphs for DAT. Throws Configuration for rcli variants without a partition.
CounterfactualResult run_method(Method method, Oracle& oracle, const GraphDataset& dataset,
                                std::span<const Graph> pool, std::size_t instance, const RunConfig& config);

struct BenchmarkOutcome {
  std::vector<MethodRunSummary> summaries;  // one per method, instances in order
  std::uint64_t total_calls = 0;
  std::uint64_t total_audits = 0;
};

// Every (method, instance) pair runs with its own Oracle clone over the
// shared classifier; workers <= 0 uses all logical CPUs. Output order is
// independent of scheduling.
BenchmarkOutcome run_benchmark(std::shared_ptr<const GraphClassifier> classifier, const GraphDataset& dataset,
                               std::span<const Method> methods, std::span<const std::size_t> instances,
                               const RunConfig& config, int workers = 0);

RunRecord make_record(const GraphDataset& dataset, std::size_t instance, const CounterfactualResult& result);

nlohmann::json result_to_json(const CounterfactualResult& result, const GraphDataset& dataset,
                              std::size_t instance);

// Header: op,u,v with removals before additions.
void write_edits_csv(std::ostream& out, const EditList& edits, const std::vector<std::string>& node_ids);

}  // namespace densecf
