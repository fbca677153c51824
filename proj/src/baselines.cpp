#include "densecf/baselines.hpp"

#include <limits>
#include <random>

#include "densecf/error.hpp"
#include "densecf/kernels.hpp"

namespace densecf {

Graph backward_search(Oracle& oracle, const Graph& g, const Graph& candidate) {
  if (g.node_count() != candidate.node_count())
    fail(ErrorKind::InvalidPair, "backward search over graphs with different node counts");
  const Label input_label = oracle.audit(g);
  if (oracle.audit(candidate) == input_label)
    fail(ErrorKind::InvalidCandidate, "backward search candidate has the same class as the input");
  return backward_search(oracle, g, input_label, candidate);
}

Graph backward_search(Oracle& oracle, const Graph& g, Label input_label, const Graph& candidate) {
  Graph current = candidate;
  EditList pending = edit_list_between(g, candidate);

  bool kept_any = true;
  while (kept_any) {
    kept_any = false;
    std::vector<Edge> still_removed;
    for (const Edge& e : pending.removals) {
      current.add_edge(e.u, e.v);
      if (oracle.predict(current) != input_label) {
        kept_any = true;
      } else {
        current.remove_edge(e.u, e.v);
        still_removed.push_back(e);
      }
    }
    std::vector<Edge> still_added;
    for (const Edge& e : pending.additions) {
      current.remove_edge(e.u, e.v);
      if (oracle.predict(current) != input_label) {
        kept_any = true;
      } else {
        current.add_edge(e.u, e.v);
        still_added.push_back(e);
      }
    }
    pending = {std::move(still_removed), std::move(still_added)};
  }
  return current;
}

CounterfactualResult edg_search(Oracle& oracle, const Graph& g, const BaselineConfig& config) {
  const auto start = oracle.calls();
  const Label label = oracle.predict(g);
  const std::size_t n = g.node_count();
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (pairs == 0)
    return CounterfactualResult::make_not_found("edg", label, 0, oracle.calls() - start,
                                                "graph has no node pairs to flip");

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<Node> pick_node(0, static_cast<Node>(n - 1));
  std::bernoulli_distribution coin(0.5);

  Graph current = g;
  for (std::size_t i = 1; i <= config.edg_max_iterations; ++i) {
    bool remove = coin(rng);
    if (current.edge_count() == 0) remove = false;
    if (current.edge_count() == pairs) remove = true;
    // Rejection sampling gives a uniform pair among those of the chosen kind.
    Node u = 0, v = 0;
    do {
      u = pick_node(rng);
      v = pick_node(rng);
    } while (u == v || current.has_edge(u, v) != remove);
    if (remove)
      current.remove_edge(u, v);
    else
      current.add_edge(u, v);

    if (oracle.predict(current) != label) {
      Graph refined = backward_search(oracle, g, label, current);
      return CounterfactualResult::make_found("edg", oracle, g, label, std::move(refined), i,
                                              oracle.calls() - start);
    }
  }
  return CounterfactualResult::make_not_found("edg", label, config.edg_max_iterations, oracle.calls() - start,
                                              "iteration limit reached without a class flip");
}

CounterfactualResult dat_search(Oracle& oracle, const Graph& g, std::span<const Graph> dataset) {
  if (dataset.empty()) fail(ErrorKind::InvalidParameter, "dat needs a nonempty dataset");
  const auto start = oracle.calls();
  const Label label = oracle.predict(g);
  const auto distances = kernels::distances_to(g, dataset);

  std::vector<Label> labels(dataset.size());
  const auto m = static_cast<std::int64_t>(dataset.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < m; ++i) labels[i] = oracle.predict(dataset[i]);

  std::size_t best = dataset.size();
  for (std::size_t i = 0; i < dataset.size(); ++i)
    if (labels[i] != label && (best == dataset.size() || distances[i] < distances[best])) best = i;

  if (best == dataset.size())
    return CounterfactualResult::make_not_found("dat", label, dataset.size(), oracle.calls() - start,
                                                "no dataset graph is classified in the opposite class");
  return CounterfactualResult::make_found("dat", oracle, g, label, dataset[best], dataset.size(),
                                          oracle.calls() - start);
}

CounterfactualResult refine_with_backward_search(Oracle& oracle, const Graph& g, CounterfactualResult found) {
  const std::string method = found.method + "+bw";
  if (!found.found) {
    found.method = method;
    return found;
  }
  const auto start = oracle.calls();
  Graph refined = backward_search(oracle, g, found.input_label, *found.counterfactual);
  auto result = CounterfactualResult::make_found(method, oracle, g, found.input_label, std::move(refined),
                                                 found.iterations,
                                                 found.oracle_calls + (oracle.calls() - start));
  result.trace = std::move(found.trace);
  return result;
}

}  // namespace densecf
