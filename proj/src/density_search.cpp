#include "densecf/density_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "densecf/error.hpp"

namespace densecf {

std::optional<Edge> ScoredEdgeList::next_best() {
  if (cursor_ >= entries_.size()) return std::nullopt;
  return entries_[cursor_++].edge;
}

TriangleScoreLists triangle_score_lists(const Graph& g) {
  const auto tri = triangle_counts(g);
  std::vector<ScoredEdge> present, absent;
  const auto n = static_cast<Node>(g.node_count());
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) {
      ScoredEdge s{tri[u] + tri[v], {u, v}};
      (g.has_edge(u, v) ? present : absent).push_back(s);
    }
  // Pairs are generated in lexicographic order, so a stable sort keeps it
  // as the tie-break.
  std::stable_sort(present.begin(), present.end(),
                   [](const ScoredEdge& a, const ScoredEdge& b) { return a.score < b.score; });
  std::stable_sort(absent.begin(), absent.end(),
                   [](const ScoredEdge& a, const ScoredEdge& b) { return a.score > b.score; });
  return {ScoredEdgeList(std::move(present)), ScoredEdgeList(std::move(absent))};
}

RankingStrategy parse_ranking(const std::string& name) {
  if (name == "triangles") return RankingStrategy::Triangles;
  if (name == "eigenvector") return RankingStrategy::Eigenvector;
  if (name == "regional") return RankingStrategy::Regional;
  fail(ErrorKind::Configuration, "unknown ranking strategy '" + name + "'");
}

std::string to_string(RankingStrategy strategy) {
  switch (strategy) {
    case RankingStrategy::Triangles: return "triangles";
    case RankingStrategy::Eigenvector: return "eigenvector";
    case RankingStrategy::Regional: return "regional";
  }
  return "unknown";
}

std::optional<Node> RankedNodes::next_best() {
  if (front_ >= back_) return std::nullopt;
  return order_[front_++];
}

std::optional<Node> RankedNodes::next_worst() {
  if (front_ >= back_) return std::nullopt;
  return order_[--back_];
}

namespace {

// Descending by key, ascending node index on ties.
template <typename Key>
std::vector<Node> order_descending(const std::vector<Key>& key) {
  std::vector<Node> order(key.size());
  std::iota(order.begin(), order.end(), Node{0});
  std::stable_sort(order.begin(), order.end(), [&](Node a, Node b) { return key[a] > key[b]; });
  return order;
}

}  // namespace

RankedNodes rank_nodes(const Graph& g, RankingStrategy strategy) {
  switch (strategy) {
    case RankingStrategy::Triangles:
      return RankedNodes(order_descending(triangle_counts(g)), strategy);
    case RankingStrategy::Eigenvector: {
      // Snap to a 1e-9 grid so round-off does not break symmetric ties.
      const auto centrality = eigenvector_centrality(g);
      std::vector<std::int64_t> key(centrality.size());
      for (std::size_t v = 0; v < key.size(); ++v) key[v] = std::llround(centrality[v] * 1e9);
      return RankedNodes(order_descending(key), strategy);
    }
    case RankingStrategy::Regional:
      fail(ErrorKind::Configuration, "regional ranking needs a region partition");
  }
  fail(ErrorKind::Configuration, "unknown ranking strategy");
}

RankedNodes rank_nodes_regional(const Graph& g, const RegionPartition& partition) {
  partition.require_covers(g.node_count());
  const auto tri = triangle_counts(g);
  struct Block {
    std::string name;
    std::size_t edges;
    NodeSet nodes;
  };
  std::vector<Block> blocks;
  for (const auto& region : partition.regions()) {
    NodeSet members = partition.members(region);
    const auto edges = induced_edge_count(g, members);
    std::stable_sort(members.begin(), members.end(), [&](Node a, Node b) { return tri[a] > tri[b]; });
    blocks.push_back({region, edges, std::move(members)});
  }
  // regions() is already in name order.
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& a, const Block& b) { return a.edges > b.edges; });
  std::vector<Node> order;
  order.reserve(g.node_count());
  for (const auto& b : blocks) order.insert(order.end(), b.nodes.begin(), b.nodes.end());
  return RankedNodes(std::move(order), RankingStrategy::Regional);
}

CliqueEdit sparsify_cli(const Graph& original, const Graph& current, Node n, CliqueBookkeeping& book) {
  const auto cliques = maximal_cliques_containing(original, n);

  auto max_overlap = [&](const NodeSet& c) {
    std::size_t worst = 0;
    for (const auto& removed : book.removed_cliques) {
      NodeSet common;
      std::set_intersection(c.begin(), c.end(), removed.begin(), removed.end(), std::back_inserter(common));
      worst = std::max(worst, common.size());
    }
    return worst;
  };

  // Lowest overlap, then largest, then lexicographically smallest. With no
  // removed cliques every overlap is zero and this is the largest clique.
  const NodeSet* best = nullptr;
  std::size_t best_overlap = 0;
  for (const auto& c : cliques) {
    const std::size_t o = max_overlap(c);
    if (!best || std::make_tuple(o, -static_cast<std::int64_t>(c.size())) <
                     std::make_tuple(best_overlap, -static_cast<std::int64_t>(best->size()))) {
      best = &c;
      best_overlap = o;
    }
  }

  CliqueEdit out{current, *best, 0};
  for (std::size_t i = 0; i < best->size(); ++i)
    for (std::size_t j = i + 1; j < best->size(); ++j)
      if (out.graph.remove_edge((*best)[i], (*best)[j])) ++out.edges_changed;
  book.removed_cliques.push_back(*best);
  for (Node v : *best) ++book.usage[v];
  return out;
}

CliqueEdit densify_cli(const Graph& current, Node n, CliqueBookkeeping& book, std::size_t s,
                       std::size_t node_cap) {
  const std::size_t take = std::min({s, node_cap, current.node_count()});
  if (take < 2) return {current, {}, 0};

  const NodeSet near = two_hop_neighborhood(current, n);
  std::vector<char> in_near(current.node_count(), 0);
  for (Node v : near) in_near[v] = 1;
  NodeSet rest;
  for (Node v = 0; v < current.node_count(); ++v)
    if (!in_near[v]) rest.push_back(v);

  auto by_usage = [&](Node a, Node b) { return book.usage[a] < book.usage[b]; };
  NodeSet order = near;
  std::stable_sort(order.begin(), order.end(), by_usage);
  std::stable_sort(rest.begin(), rest.end(), by_usage);
  order.insert(order.end(), rest.begin(), rest.end());
  order.resize(take);

  CliqueEdit out{current, {}, 0};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (out.graph.add_edge(order[i], order[j])) ++out.edges_changed;
  for (Node v : order) --book.usage[v];
  std::sort(order.begin(), order.end());
  out.clique = std::move(order);
  return out;
}

CounterfactualResult tri_search(Oracle& oracle, const Graph& g, TriangleScoreLists lists,
                                const SearchConfig& config) {
  const auto start = oracle.calls();
  const Label label = oracle.predict(g);
  std::size_t limit = std::min(lists.removals.size(), lists.additions.size());
  if (config.max_iterations) limit = std::min(limit, *config.max_iterations);

  Graph current = g;
  for (std::size_t i = 1; i <= limit; ++i) {
    const Edge out_edge = *lists.removals.next_best();
    const Edge in_edge = *lists.additions.next_best();
    current.remove_edge(out_edge.u, out_edge.v);
    current.add_edge(in_edge.u, in_edge.v);
    if (config.observer) config.observer(i, current);
    if (oracle.predict(current) != label)
      return CounterfactualResult::make_found("tri", oracle, g, label, std::move(current), i,
                                              oracle.calls() - start);
  }
  return CounterfactualResult::make_not_found("tri", label, limit, oracle.calls() - start,
                                              "candidate lists exhausted without a class flip");
}

CounterfactualResult tri_search(Oracle& oracle, const Graph& g, const SearchConfig& config) {
  return tri_search(oracle, g, triangle_score_lists(g), config);
}

namespace {

CounterfactualResult clique_search(const std::string& method, Oracle& oracle, const Graph& g,
                                   RankedNodes ranked, const SearchConfig& config) {
  const auto start = oracle.calls();
  const Label label = oracle.predict(g);
  const std::size_t max_iterations = config.max_iterations.value_or(kDefaultCliqueIterations);

  CliqueBookkeeping book(g.node_count());
  Graph current = g;
  std::vector<IterationTrace> trace;
  std::size_t i = 0;
  while (i < max_iterations && ranked.remaining() >= 2) {
    const Node dense = *ranked.next_best();
    const Node sparse = *ranked.next_worst();
    ++i;

    IterationTrace step;
    CliqueEdit cut = sparsify_cli(g, current, dense, book);
    current = std::move(cut.graph);
    step.removed_clique = std::move(cut.clique);
    step.edges_removed = cut.edges_changed;
    if (config.observer) config.observer(i, current);

    // An unchanged graph keeps its known class, so it is not re-queried.
    bool flipped = step.edges_removed > 0 && oracle.predict(current) != label;

    // Densify until the added edges match the removed ones. The remaining
    // edge budget is passed as the clique size, capped at |removed| + b nodes.
    const std::size_t node_cap = step.removed_clique.size() + config.clique_budget;
    while (!flipped && step.edges_added < step.edges_removed) {
      CliqueEdit grow = densify_cli(current, sparse, book, step.edges_removed - step.edges_added, node_cap);
      if (!grow.clique.empty()) step.added_cliques.push_back(grow.clique);
      if (grow.edges_changed == 0) break;
      current = std::move(grow.graph);
      step.edges_added += grow.edges_changed;
      if (config.observer) config.observer(i, current);
      flipped = oracle.predict(current) != label;
    }
    trace.push_back(std::move(step));

    if (flipped) {
      auto result = CounterfactualResult::make_found(method, oracle, g, label, std::move(current), i,
                                                     oracle.calls() - start);
      result.trace = std::move(trace);
      return result;
    }
  }
  auto result = CounterfactualResult::make_not_found(
      method, label, i, oracle.calls() - start,
      i >= max_iterations ? "iteration limit reached without a class flip"
                          : "node ranking exhausted without a class flip");
  result.trace = std::move(trace);
  return result;
}

}  // namespace

CounterfactualResult cli_search(Oracle& oracle, const Graph& g, RankedNodes ranked,
                                const SearchConfig& config) {
  return clique_search("cli", oracle, g, std::move(ranked), config);
}

CounterfactualResult cli_search(Oracle& oracle, const Graph& g, const SearchConfig& config) {
  return cli_search(oracle, g, rank_nodes(g, config.ranking), config);
}

CounterfactualResult rcli_search(Oracle& oracle, const Graph& g,
                                 const std::optional<RegionPartition>& partition,
                                 const SearchConfig& config) {
  if (!partition) fail(ErrorKind::Configuration, "rcli requires a region partition");
  return clique_search("rcli", oracle, g, rank_nodes_regional(g, *partition), config);
}

}  // namespace densecf
