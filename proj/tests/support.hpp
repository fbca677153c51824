#pragma once

// Shared fixtures and brute-force reference implementations. Nothing here
// calls into the library beyond the Graph container itself.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "densecf/graph.hpp"
#include "densecf/oracle.hpp"

namespace testing {

using densecf::Edge;
using densecf::Graph;
using densecf::Node;
using densecf::NodeSet;

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Node v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

inline Graph from_pairs(std::size_t n, std::initializer_list<std::pair<Node, Node>> pairs) {
  Graph g(n);
  for (auto [a, b] : pairs) g.add_edge(a, b);
  return g;
}

inline std::set<std::pair<Node, Node>> edge_set(const Graph& g) {
  std::set<std::pair<Node, Node>> s;
  for (Node u = 0; u < g.node_count(); ++u)
    for (Node v = u + 1; v < g.node_count(); ++v)
      if (g.has_edge(u, v)) s.insert({u, v});
  return s;
}

// |A xor B| through std::set operations.
inline std::size_t xor_size(const Graph& a, const Graph& b) {
  auto ea = edge_set(a), eb = edge_set(b);
  std::vector<std::pair<Node, Node>> out;
  std::set_symmetric_difference(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
  return out.size();
}

inline std::uint64_t triangles_of(const Graph& g, Node v) {
  std::uint64_t t = 0;
  for (Node a = 0; a < g.node_count(); ++a)
    for (Node b = a + 1; b < g.node_count(); ++b)
      if (a != v && b != v && g.has_edge(v, a) && g.has_edge(v, b) && g.has_edge(a, b)) ++t;
  return t;
}

inline bool is_clique(const Graph& g, const NodeSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.has_edge(s[i], s[j])) return false;
  return true;
}

// Every node subset containing v, kept when it is a clique no single node
// extends. Exponential; n <= 12.
inline std::vector<NodeSet> maximal_cliques_bruteforce(const Graph& g, Node v) {
  const auto n = g.node_count();
  std::vector<NodeSet> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> v & 1u)) continue;
    NodeSet s;
    for (Node u = 0; u < n; ++u)
      if (mask >> u & 1u) s.push_back(u);
    if (!is_clique(g, s)) continue;
    bool maximal = true;
    for (Node w = 0; w < n && maximal; ++w) {
      if (mask >> w & 1u) continue;
      bool joins = true;
      for (Node u : s) joins = joins && g.has_edge(u, w);
      if (joins) maximal = false;
    }
    if (maximal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Dense symmetric matrix stored row-major.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;
  explicit Matrix(std::size_t size) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline Matrix normalized_laplacian(const Graph& g) {
  const auto n = g.node_count();
  Matrix l(n);
  std::vector<double> inv_sqrt(n, 0.0);
  for (Node v = 0; v < n; ++v)
    if (g.degree(v) > 0) inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
  for (Node i = 0; i < n; ++i) {
    l(i, i) = 1.0;
    for (Node j = 0; j < n; ++j)
      if (g.has_edge(i, j)) l(i, j) = -inv_sqrt[i] * inv_sqrt[j];
  }
  return l;
}

// Cyclic Jacobi rotations until the off-diagonal mass vanishes.
inline std::vector<double> jacobi_eigenvalues(Matrix m) {
  const auto n = m.n;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Power iteration on A + I (shift keeps bipartite graphs from oscillating).
inline std::vector<double> power_iteration_centrality(const Graph& g) {
  const auto n = g.node_count();
  std::vector<double> x(n, 1.0), y(n);
  for (int it = 0; it < 100000; ++it) {
    for (Node i = 0; i < n; ++i) {
      y[i] = x[i];
      for (Node j = 0; j < n; ++j)
        if (g.has_edge(i, j)) y[i] += x[j];
    }
    const double mx = *std::max_element(y.begin(), y.end());
    double delta = 0.0;
    for (Node i = 0; i < n; ++i) {
      y[i] /= mx;
      delta = std::max(delta, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (delta < 1e-12) break;
  }
  return x;
}

inline double sorted_percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline std::shared_ptr<densecf::GraphClassifier> classifier(densecf::FunctionClassifier::Fn fn) {
  return std::make_shared<densecf::FunctionClassifier>(std::move(fn));
}

// Parity of the edge count: flips on every single edit.
inline std::shared_ptr<densecf::GraphClassifier> parity_classifier() {
  return classifier([](const Graph& g) { return static_cast<densecf::Label>(g.edge_count() % 2); });
}

// Class 1 when there are more triangles than `threshold`.
inline std::shared_ptr<densecf::GraphClassifier> triangle_threshold(std::uint64_t threshold) {
  return classifier([threshold](const Graph& g) {
    std::uint64_t t = 0;
    for (Node v = 0; v < g.node_count(); ++v) t += triangles_of(g, v);
    return static_cast<densecf::Label>(t / 3 > threshold);
  });
}

}  // namespace testing
