#include "densecf/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "densecf/error.hpp"
#include "densecf/kernels.hpp"

namespace densecf {

Graph::Graph(std::size_t node_count)
    : n_(node_count),
      words_((node_count + 63) / 64),
      bits_(node_count * ((node_count + 63) / 64), 0) {}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  Graph g(node_count);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

void Graph::check_pair(Node a, Node b) const {
  if (a >= n_ || b >= n_)
    fail(ErrorKind::InvalidParameter,
         "node index out of range: (" + std::to_string(a) + "," + std::to_string(b) +
             ") with node_count " + std::to_string(n_));
  if (a == b) fail(ErrorKind::InvalidParameter, "self-loop on node " + std::to_string(a));
}

bool Graph::has_edge(Node a, Node b) const {
  if (a >= n_ || b >= n_ || a == b) return false;
  return (bits_[a * words_ + b / 64] >> (b % 64)) & 1U;
}

std::size_t Graph::degree(Node v) const {
  std::size_t d = 0;
  for (std::uint64_t w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

NodeSet Graph::neighbors(Node v) const {
  NodeSet out;
  auto r = row(v);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = r[w];
    while (bits) {
      out.push_back(static_cast<Node>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Node u = 0; u < n_; ++u)
    for (Node v : neighbors(u))
      if (v > u) out.push_back({u, v});
  return out;
}

void Graph::set_bit(Node a, Node b, bool value) {
  std::uint64_t mask_b = std::uint64_t{1} << (b % 64);
  std::uint64_t mask_a = std::uint64_t{1} << (a % 64);
  if (value) {
    bits_[a * words_ + b / 64] |= mask_b;
    bits_[b * words_ + a / 64] |= mask_a;
  } else {
    bits_[a * words_ + b / 64] &= ~mask_b;
    bits_[b * words_ + a / 64] &= ~mask_a;
  }
}

bool Graph::add_edge(Node a, Node b) {
  check_pair(a, b);
  if (has_edge(a, b)) return false;
  set_bit(a, b, true);
  ++m_;
  return true;
}

bool Graph::remove_edge(Node a, Node b) {
  check_pair(a, b);
  if (!has_edge(a, b)) return false;
  set_bit(a, b, false);
  --m_;
  return true;
}

namespace {

void require_same_nodes(const Graph& g, const Graph& h) {
  if (g.node_count() != h.node_count())
    fail(ErrorKind::InvalidPair, "graphs have different node counts (" +
                                     std::to_string(g.node_count()) + " vs " +
                                     std::to_string(h.node_count()) + ")");
}

}  // namespace

std::size_t symmetric_difference_distance(const Graph& g, const Graph& h) {
  require_same_nodes(g, h);
  std::size_t twice = 0;
  for (Node v = 0; v < g.node_count(); ++v) {
    auto a = g.row(v);
    auto b = h.row(v);
    for (std::size_t w = 0; w < a.size(); ++w)
      twice += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
  }
  return twice / 2;
}

std::size_t union_edge_count(const Graph& g, const Graph& h) {
  require_same_nodes(g, h);
  std::size_t twice = 0;
  for (Node v = 0; v < g.node_count(); ++v) {
    auto a = g.row(v);
    auto b = h.row(v);
    for (std::size_t w = 0; w < a.size(); ++w)
      twice += static_cast<std::size_t>(std::popcount(a[w] | b[w]));
  }
  return twice / 2;
}

double edit_distance_ratio(const Graph& g, const Graph& h) {
  std::size_t uni = union_edge_count(g, h);
  if (uni == 0) fail(ErrorKind::UndefinedRatio, "edit distance ratio undefined for two empty edge sets");
  return static_cast<double>(symmetric_difference_distance(g, h)) / static_cast<double>(uni);
}

EditList edit_list_between(const Graph& from, const Graph& to) {
  require_same_nodes(from, to);
  EditList out;
  for (Node u = 0; u < from.node_count(); ++u) {
    for (Node v = u + 1; v < from.node_count(); ++v) {
      bool a = from.has_edge(u, v);
      bool b = to.has_edge(u, v);
      if (a && !b) out.removals.push_back({u, v});
      if (!a && b) out.additions.push_back({u, v});
    }
  }
  return out;
}

EditList inverse(const EditList& edits) { return {edits.additions, edits.removals}; }

Graph apply_edits(const Graph& g, const EditList& edits) {
  Graph out = g;
  for (const Edge& e : edits.removals)
    if (!out.remove_edge(e.u, e.v))
      fail(ErrorKind::EditConflict, "cannot remove absent edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ")");
  for (const Edge& e : edits.additions) {
    // Checking against g also rejects an addition that undoes a removal.
    if (g.has_edge(e.u, e.v) || !out.add_edge(e.u, e.v))
      fail(ErrorKind::EditConflict, "cannot add edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + "): present or duplicated");
  }
  return out;
}

std::vector<std::uint64_t> triangle_counts(const Graph& g) { return kernels::triangle_counts(g); }

std::uint64_t triangle_total(const Graph& g) {
  std::uint64_t sum = 0;
  for (auto t : triangle_counts(g)) sum += t;
  return sum / 3;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool any(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t count(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// Bron-Kerbosch with Tomita pivoting over bitsets.
void bron_kerbosch(const Graph& g, NodeSet& clique, Bits candidates, Bits excluded,
                   std::vector<NodeSet>& out) {
  if (!any(candidates) && !any(excluded)) {
    NodeSet c = clique;
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
    return;
  }
  const std::size_t words = candidates.size();

  // Pivot: node of P ∪ X with the most neighbors in P.
  Node pivot = 0;
  std::size_t best = 0;
  bool have_pivot = false;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = candidates[w] | excluded[w];
    while (bits) {
      Node u = static_cast<Node>(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
      auto r = g.row(u);
      std::size_t c = 0;
      for (std::size_t k = 0; k < words; ++k)
        c += static_cast<std::size_t>(std::popcount(candidates[k] & r[k]));
      if (!have_pivot || c > best) {
        pivot = u;
        best = c;
        have_pivot = true;
      }
    }
  }

  auto pivot_row = g.row(pivot);
  Bits branch(words);
  for (std::size_t w = 0; w < words; ++w) branch[w] = candidates[w] & ~pivot_row[w];

  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = branch[w];
    while (bits) {
      Node u = static_cast<Node>(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
      auto r = g.row(u);
      Bits next_p(words), next_x(words);
      for (std::size_t k = 0; k < words; ++k) {
        next_p[k] = candidates[k] & r[k];
        next_x[k] = excluded[k] & r[k];
      }
      clique.push_back(u);
      bron_kerbosch(g, clique, std::move(next_p), std::move(next_x), out);
      clique.pop_back();
      std::uint64_t mask = std::uint64_t{1} << (u % 64);
      candidates[w] &= ~mask;
      excluded[w] |= mask;
    }
  }
}

}  // namespace

std::vector<NodeSet> maximal_cliques_containing(const Graph& g, Node v) {
  if (v >= g.node_count())
    fail(ErrorKind::InvalidParameter, "node " + std::to_string(v) + " out of range");
  auto r = g.row(v);
  Bits candidates(r.begin(), r.end());
  Bits excluded(candidates.size(), 0);
  NodeSet clique{v};
  std::vector<NodeSet> out;
  bron_kerbosch(g, clique, std::move(candidates), std::move(excluded), out);
  std::sort(out.begin(), out.end());
  return out;
}

NodeSet two_hop_neighborhood(const Graph& g, Node v) {
  if (v >= g.node_count())
    fail(ErrorKind::InvalidParameter, "node " + std::to_string(v) + " out of range");
  auto r = g.row(v);
  Bits reach(r.begin(), r.end());
  for (Node u : g.neighbors(v)) {
    auto ru = g.row(u);
    for (std::size_t w = 0; w < reach.size(); ++w) reach[w] |= ru[w];
  }
  reach[v / 64] &= ~(std::uint64_t{1} << (v % 64));
  NodeSet out;
  out.reserve(count(reach));
  for (std::size_t w = 0; w < reach.size(); ++w) {
    std::uint64_t bits = reach[w];
    while (bits) {
      out.push_back(static_cast<Node>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<double> eigenvector_centrality(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> scores(n, 0.0);
  if (g.edge_count() == 0) return scores;

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const Edge& e : g.edges()) {
    adj(e.u, e.v) = 1.0;
    adj(e.v, e.u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj);
  if (solver.info() != Eigen::Success) fail(ErrorKind::Internal, "adjacency eigensolver did not converge");
  Eigen::VectorXd principal = solver.eigenvectors().col(static_cast<Eigen::Index>(n) - 1);

  // Perron vector: flip sign so that the mass is non-negative.
  if (principal.sum() < 0) principal = -principal;
  double peak = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    scores[v] = std::max(0.0, principal(static_cast<Eigen::Index>(v)));
    peak = std::max(peak, scores[v]);
  }
  if (peak > 0)
    for (double& s : scores) s /= peak;
  return scores;
}

std::size_t induced_edge_count(const Graph& g, std::span<const Node> nodes) {
  std::size_t m = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (g.has_edge(nodes[i], nodes[j])) ++m;
  return m;
}

std::uint64_t induced_triangle_count(const Graph& g, std::span<const Node> nodes) {
  Bits mask(g.words_per_row(), 0);
  for (Node v : nodes) mask[v / 64] |= std::uint64_t{1} << (v % 64);
  // Each triangle is seen from each of its three edges.
  std::uint64_t thrice = 0;
  for (Node u : nodes) {
    auto ru = g.row(u);
    for (Node v : nodes) {
      if (v <= u || !g.has_edge(u, v)) continue;
      auto rv = g.row(v);
      for (std::size_t w = 0; w < mask.size(); ++w)
        thrice += static_cast<std::uint64_t>(std::popcount(ru[w] & rv[w] & mask[w]));
    }
  }
  return thrice / 3;
}

}  // namespace densecf
