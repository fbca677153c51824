#pragma once

// Density-based counterfactual search: the triangle-closure instantiation
// (TRI) and the maximal-clique instantiations (CLI, and RCLI with a
// region-aware node ranking).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "densecf/counterfactual.hpp"
#include "densecf/graph.hpp"
#include "densecf/oracle.hpp"
#include "densecf/partition.hpp"

namespace densecf {

inline constexpr std::size_t kDefaultCliqueIterations = 200;
inline constexpr std::size_t kDefaultCliqueBudget = 10;

struct ScoredEdge {
  std::uint64_t score = 0;
  Edge edge;
  bool operator==(const ScoredEdge&) const = default;
};

// Ordered candidates consumed front to back through a forward-only cursor.
class ScoredEdgeList {
 public:
  ScoredEdgeList() = default;
  explicit ScoredEdgeList(std::vector<ScoredEdge> entries) : entries_(std::move(entries)) {}

  const std::vector<ScoredEdge>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t remaining() const { return entries_.size() - cursor_; }
  std::optional<Edge> next_best();

 private:
  std::vector<ScoredEdge> entries_;
  std::size_t cursor_ = 0;
};

struct TriangleScoreLists {
  ScoredEdgeList removals;   // existing edges, ascending score
  ScoredEdgeList additions;  // non-edges, descending score
};

// Scores every pair by T(u) + T(v); ties keep lexicographic edge order.
TriangleScoreLists triangle_score_lists(const Graph& g);

enum class RankingStrategy { Triangles, Eigenvector, Regional };

RankingStrategy parse_ranking(const std::string& name);
std::string to_string(RankingStrategy strategy);

// Nodes ordered densest first. next_best reads from the front and
// next_worst from the back; no node is handed out twice.
class RankedNodes {
 public:
  RankedNodes() = default;
  RankedNodes(std::vector<Node> order, RankingStrategy strategy)
      : order_(std::move(order)), strategy_(strategy), back_(order_.size()) {}

  const std::vector<Node>& order() const { return order_; }
  RankingStrategy strategy() const { return strategy_; }
  std::size_t remaining() const { return back_ - front_; }

  std::optional<Node> next_best();
  std::optional<Node> next_worst();

 private:
  std::vector<Node> order_;
  RankingStrategy strategy_ = RankingStrategy::Triangles;
  std::size_t front_ = 0;
  std::size_t back_ = 0;
};

// Triangles: descending triangle count. Eigenvector: descending centrality.
// Ties go to the lower node index. Regional needs a partition and is
// rejected here with a Configuration error.
RankedNodes rank_nodes(const Graph& g, RankingStrategy strategy);

// Regions by descending induced edge count (ties: region name), then nodes
// within a region by descending triangle count (ties: node index).
RankedNodes rank_nodes_regional(const Graph& g, const RegionPartition& partition);

struct CliqueBookkeeping {
  std::vector<NodeSet> removed_cliques;
  std::vector<std::int64_t> usage;

  explicit CliqueBookkeeping(std::size_t node_count) : usage(node_count, 0) {}
};

struct CliqueEdit {
  Graph graph;
  NodeSet clique;
  std::size_t edges_changed = 0;
};

// Picks a maximal clique of `original` containing n (the largest when nothing
// was removed yet, otherwise the one with the smallest maximum overlap with a
// removed clique) and deletes its edges still present in `current`.
CliqueEdit sparsify_cli(const Graph& original, const Graph& current, Node n, CliqueBookkeeping& book);

// Joins the first min(s, node_cap) nodes of [2-hop(n) by usage, rest by
// usage] into a clique. No-op when that is fewer than two nodes.
CliqueEdit densify_cli(const Graph& current, Node n, CliqueBookkeeping& book, std::size_t s,
                       std::size_t node_cap);

struct SearchConfig {
  // TRI: defaults to min(|E-|, |E+|). CLI/RCLI: defaults to 200.
  std::optional<std::size_t> max_iterations;
  std::size_t clique_budget = kDefaultCliqueBudget;
  RankingStrategy ranking = RankingStrategy::Triangles;
  std::uint64_t seed = 0;
  // Invoked with every intermediate graph (after each edit step).
  std::function<void(std::size_t iteration, const Graph&)> observer;
};

CounterfactualResult tri_search(Oracle& oracle, const Graph& g, TriangleScoreLists lists,
                                const SearchConfig& config = {});
CounterfactualResult tri_search(Oracle& oracle, const Graph& g, const SearchConfig& config = {});

CounterfactualResult cli_search(Oracle& oracle, const Graph& g, RankedNodes ranked,
                                const SearchConfig& config = {});
// Ranks with config.ranking (Triangles or Eigenvector).
CounterfactualResult cli_search(Oracle& oracle, const Graph& g, const SearchConfig& config = {});

CounterfactualResult rcli_search(Oracle& oracle, const Graph& g,
                                 const std::optional<RegionPartition>& partition,
                                 const SearchConfig& config = {});

}  // namespace densecf
