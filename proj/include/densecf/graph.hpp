#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace densecf {

using Node = std::uint32_t;

// Sorted, duplicate-free list of node indices.
using NodeSet = std::vector<Node>;

// Unordered pair stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(Node a, Node b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Undirected simple graph over the fixed node set 0..node_count-1, stored as
// a packed adjacency bit matrix. Copies are cheap enough for the node counts
// this toolkit targets (a few hundred), so searches edit private copies and
// shared instances are treated as immutable.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  // Duplicates collapse; self-loops and out-of-range endpoints throw.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return m_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool has_edge(Node a, Node b) const;
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }
  std::size_t degree(Node v) const;
  NodeSet neighbors(Node v) const;

  // Lexicographically ordered.
  std::vector<Edge> edges() const;

  std::span<const std::uint64_t> row(Node v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, words_};
  }

  // Return false when the edge was already present / absent.
  bool add_edge(Node a, Node b);
  bool remove_edge(Node a, Node b);

  bool operator==(const Graph& other) const = default;

 private:
  void check_pair(Node a, Node b) const;
  void set_bit(Node a, Node b, bool value);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct EditList {
  std::vector<Edge> removals;
  std::vector<Edge> additions;

  std::size_t size() const { return removals.size() + additions.size(); }
  bool empty() const { return removals.empty() && additions.empty(); }
  bool operator==(const EditList&) const = default;
};

// |E_g \ E_h| + |E_h \ E_g|. Throws InvalidPair on mismatched node counts.
std::size_t symmetric_difference_distance(const Graph& g, const Graph& h);

std::size_t union_edge_count(const Graph& g, const Graph& h);

// d(g, h) / |E_g ∪ E_h|. Throws UndefinedRatio when both edge sets are empty.
double edit_distance_ratio(const Graph& g, const Graph& h);

// Edits turning `from` into `to`, each list lexicographically sorted.
EditList edit_list_between(const Graph& from, const Graph& to);

EditList inverse(const EditList& edits);

// Throws EditConflict when a removal is absent, an addition is present, or
// the two lists overlap.
Graph apply_edits(const Graph& g, const EditList& edits);

// Number of distinct triangles containing each node.
std::vector<std::uint64_t> triangle_counts(const Graph& g);
std::uint64_t triangle_total(const Graph& g);

// All maximal cliques of g that contain v, each sorted, family sorted
// lexicographically. An isolated v yields {{v}}.
std::vector<NodeSet> maximal_cliques_containing(const Graph& g, Node v);

// Nodes at shortest-path distance 1 or 2 from v, excluding v.
NodeSet two_hop_neighborhood(const Graph& g, Node v);

// Principal eigenvector of the adjacency matrix, non-negative, scaled to unit
// maximum. Zero vector for an edgeless graph.
std::vector<double> eigenvector_centrality(const Graph& g);

std::size_t induced_edge_count(const Graph& g, std::span<const Node> nodes);
std::uint64_t induced_triangle_count(const Graph& g, std::span<const Node> nodes);

}  // namespace densecf
