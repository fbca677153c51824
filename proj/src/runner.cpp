#include "densecf/runner.hpp"

#include <random>

#include "densecf/error.hpp"
#include "densecf/kernels.hpp"

namespace densecf {

Method parse_method(const std::string& name) {
  if (name == "tri") return Method::Tri;
  if (name == "cli") return Method::Cli;
  if (name == "rcli") return Method::Rcli;
  if (name == "edg") return Method::Edg;
  if (name == "dat") return Method::Dat;
  if (name == "dat+bw") return Method::DatBw;
  if (name == "rcli+bw") return Method::RcliBw;
  fail(ErrorKind::Configuration, "unknown method '" + name + "'");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::Tri: return "tri";
    case Method::Cli: return "cli";
    case Method::Rcli: return "rcli";
    case Method::Edg: return "edg";
    case Method::Dat: return "dat";
    case Method::DatBw: return "dat+bw";
    case Method::RcliBw: return "rcli+bw";
  }
  return "unknown";
}

std::vector<Method> all_methods() {
  return {Method::Tri, Method::Cli, Method::Rcli, Method::Edg, Method::Dat, Method::DatBw, Method::RcliBw};
}

bool needs_partition(Method method) { return method == Method::Rcli || method == Method::RcliBw; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

CounterfactualResult run_method(Method method, Oracle& oracle, const GraphDataset& dataset,
                                std::span<const Graph> pool, std::size_t instance, const RunConfig& config) {
  if (instance >= dataset.size())
    fail(ErrorKind::InvalidParameter, "instance " + std::to_string(instance) + " out of range (dataset has " +
                                          std::to_string(dataset.size()) + " graphs)");
  if (needs_partition(method) && !dataset.partition)
    fail(ErrorKind::Configuration, to_string(method) + " requires a region partition");
  const Graph& g = dataset.graphs[instance].graph;

  SearchConfig search;
  search.max_iterations = config.max_iterations;
  search.clique_budget = config.clique_budget;
  search.ranking = config.ranking;
  search.seed = config.seed;

  switch (method) {
    case Method::Tri: return tri_search(oracle, g, search);
    case Method::Cli:
      if (config.ranking == RankingStrategy::Regional) {
        if (!dataset.partition) fail(ErrorKind::Configuration, "regional ranking requires a region partition");
        return cli_search(oracle, g, rank_nodes_regional(g, *dataset.partition), search);
      }
      return cli_search(oracle, g, search);
    case Method::Rcli: return rcli_search(oracle, g, dataset.partition, search);
    case Method::RcliBw: return refine_with_backward_search(oracle, g, rcli_search(oracle, g, dataset.partition, search));
    case Method::Edg: {
      BaselineConfig base{config.edg_max_iterations, derive_seed(config.seed, instance)};
      return edg_search(oracle, g, base);
    }
    case Method::Dat: return dat_search(oracle, g, pool);
    case Method::DatBw: return refine_with_backward_search(oracle, g, dat_search(oracle, g, pool));
  }
  fail(ErrorKind::Internal, "unhandled method");
}

RunRecord make_record(const GraphDataset& dataset, std::size_t instance, const CounterfactualResult& result) {
  RunRecord r;
  r.method = result.method;
  r.dataset = dataset.name;
  r.instance = instance;
  r.name = dataset.graphs[instance].name;
  r.true_label = dataset.graphs[instance].label;
  r.predicted_label = result.input_label;
  r.found = result.found;
  r.iterations = result.iterations;
  r.oracle_calls = result.oracle_calls;
  r.distance = result.distance;
  r.distance_ratio = result.distance_ratio;
  return r;
}

BenchmarkOutcome run_benchmark(std::shared_ptr<const GraphClassifier> classifier, const GraphDataset& dataset,
                               std::span<const Method> methods, std::span<const std::size_t> instances,
                               const RunConfig& config, int workers) {
  for (Method m : methods)
    if (needs_partition(m) && !dataset.partition)
      fail(ErrorKind::Configuration, to_string(m) + " requires a region partition");
  for (std::size_t i : instances)
    if (i >= dataset.size()) fail(ErrorKind::InvalidParameter, "instance " + std::to_string(i) + " out of range");

  const auto pool = dataset.graph_values();
  const std::size_t tasks = methods.size() * instances.size();
  std::vector<RunRecord> records(tasks);
  std::vector<std::uint64_t> calls(tasks, 0), audits(tasks, 0);
  std::vector<std::string> errors(tasks);

  const int threads = workers > 0 ? workers : kernels::max_threads();
  const auto n = static_cast<std::int64_t>(tasks);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t t = 0; t < n; ++t) {
    const Method method = methods[static_cast<std::size_t>(t) / instances.size()];
    const std::size_t instance = instances[static_cast<std::size_t>(t) % instances.size()];
    Oracle oracle(classifier);
    try {
      const auto result = run_method(method, oracle, dataset, pool, instance, config);
      records[t] = make_record(dataset, instance, result);
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
    calls[t] = oracle.calls();
    audits[t] = oracle.audits();
  }

  for (std::size_t t = 0; t < tasks; ++t)
    if (!errors[t].empty()) fail(ErrorKind::Internal, "benchmark task " + std::to_string(t) + ": " + errors[t]);

  BenchmarkOutcome out;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodRunSummary s{to_string(methods[m]), dataset.name, {}};
    for (std::size_t k = 0; k < instances.size(); ++k) s.records.push_back(records[m * instances.size() + k]);
    out.summaries.push_back(std::move(s));
  }
  for (std::size_t t = 0; t < tasks; ++t) {
    out.total_calls += calls[t];
    out.total_audits += audits[t];
  }
  return out;
}

nlohmann::json result_to_json(const CounterfactualResult& result, const GraphDataset& dataset,
                              std::size_t instance) {
  const auto& ids = dataset.node_ids;
  auto edge_json = [&](const std::vector<Edge>& edges) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Edge& e : edges) arr.push_back({ids[e.u], ids[e.v]});
    return arr;
  };
  auto set_json = [&](const NodeSet& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (Node v : s) arr.push_back(ids[v]);
    return arr;
  };

  nlohmann::json j = {
      {"format", "densecf-result"},
      {"version", 1},
      {"method", result.method},
      {"dataset", dataset.name},
      {"instance", instance},
      {"name", dataset.graphs[instance].name},
      {"true_label", dataset.graphs[instance].label},
      {"found", result.found},
      {"input_label", result.input_label},
      {"counterfactual_label", result.found ? nlohmann::json(1 - result.input_label) : nlohmann::json(nullptr)},
      {"iterations", result.iterations},
      {"oracle_calls", result.oracle_calls},
      {"distance", result.distance ? nlohmann::json(*result.distance) : nlohmann::json(nullptr)},
      {"distance_ratio", result.distance_ratio ? nlohmann::json(*result.distance_ratio) : nlohmann::json(nullptr)},
      {"diagnostic", result.diagnostic},
      {"edits", {{"remove", edge_json(result.edits.removals)}, {"add", edge_json(result.edits.additions)}}},
  };
  if (!result.trace.empty()) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& step : result.trace) {
      nlohmann::json added = nlohmann::json::array();
      for (const auto& c : step.added_cliques) added.push_back(set_json(c));
      trace.push_back({{"removed_clique", set_json(step.removed_clique)},
                       {"edges_removed", step.edges_removed},
                       {"added_cliques", added},
                       {"edges_added", step.edges_added}});
    }
    j["trace"] = trace;
  }
  if (result.found && dataset.partition)
    j["region_summary"] =
        to_json(region_change_summary(dataset.graphs[instance].graph, *result.counterfactual, *dataset.partition));
  return j;
}

void write_edits_csv(std::ostream& out, const EditList& edits, const std::vector<std::string>& node_ids) {
  out << "op,u,v\n";
  for (const Edge& e : edits.removals) out << "remove," << node_ids[e.u] << ',' << node_ids[e.v] << '\n';
  for (const Edge& e : edits.additions) out << "add," << node_ids[e.u] << ',' << node_ids[e.v] << '\n';
}

}  // namespace densecf
