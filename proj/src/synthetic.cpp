#include <algorithm>
#include <numeric>
#include <random>

#include "densecf/dataset.hpp"
#include "densecf/error.hpp"

namespace densecf {

SyntheticSpec SyntheticSpec::one_subgroup(std::size_t node_count, std::size_t graphs, std::uint64_t seed) {
  SyntheticSpec s;
  s.node_count = node_count;
  s.graphs = graphs;
  s.subgroups = 1;
  s.subgroup_size = node_count / 4;
  s.cliques = 10;
  s.attachment = s.subgroup_size;
  s.seed = seed;
  return s;
}

SyntheticSpec SyntheticSpec::two_subgroups(std::size_t node_count, std::size_t graphs, std::uint64_t seed) {
  SyntheticSpec s;
  s.node_count = node_count;
  s.graphs = graphs;
  s.subgroups = 2;
  s.subgroup_size = node_count / 8;
  s.cliques = 20;
  s.attachment = s.subgroup_size;
  s.seed = seed;
  return s;
}

void SyntheticSpec::validate() const {
  if (node_count < 6 || node_count % 2 != 0)
    fail(ErrorKind::Spec, "node_count must be even and at least 6");
  if (graphs == 0 || graphs % 2 != 0) fail(ErrorKind::Spec, "graph count must be positive and even");
  if (subgroups != 1 && subgroups != 2) fail(ErrorKind::Spec, "subgroups must be 1 or 2");
  if (subgroup_size < 3) fail(ErrorKind::Spec, "subgroup size must be at least 3");
  if (subgroups * subgroup_size > node_count / 2)
    fail(ErrorKind::Spec, "subgroups do not fit inside one half of the node set");
  if (attachment == 0) fail(ErrorKind::Spec, "attachment parameter m must be positive");
  if (!(cross_probability >= 0.0 && cross_probability <= 1.0))
    fail(ErrorKind::Spec, "cross probability q must lie in [0, 1]");
}

namespace {

void add_clique(Graph& g, std::span<const Node> nodes) {
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b) g.add_edge(nodes[a], nodes[b]);
}

Graph generate_one(const SyntheticSpec& spec, int cls, std::mt19937_64& rng) {
  const auto half = static_cast<Node>(spec.node_count / 2);
  NodeSet dense(half), sparse(half);
  std::iota(dense.begin(), dense.end(), static_cast<Node>(cls == 0 ? 0 : half));
  std::iota(sparse.begin(), sparse.end(), static_cast<Node>(cls == 0 ? half : 0));

  Graph g(spec.node_count);

  // Planted cliques inside the subgroups of S_i.
  std::shuffle(dense.begin(), dense.end(), rng);
  std::vector<NodeSet> groups;
  for (std::size_t k = 0; k < spec.subgroups; ++k)
    groups.emplace_back(dense.begin() + static_cast<std::ptrdiff_t>(k * spec.subgroup_size),
                        dense.begin() + static_cast<std::ptrdiff_t>((k + 1) * spec.subgroup_size));
  std::uniform_int_distribution<std::size_t> pick_group(0, groups.size() - 1);
  std::uniform_int_distribution<std::size_t> clique_size(3, spec.subgroup_size);
  for (std::size_t c = 0; c < spec.cliques; ++c) {
    NodeSet& group = groups[pick_group(rng)];
    std::shuffle(group.begin(), group.end(), rng);
    add_clique(g, std::span<const Node>(group.data(), clique_size(rng)));
  }

  // Preferential attachment over S_(1-i); generated edges may be redirected
  // into S_i.
  std::shuffle(sparse.begin(), sparse.end(), rng);
  std::bernoulli_distribution cross(spec.cross_probability);
  std::uniform_int_distribution<std::size_t> pick_dense(0, dense.size() - 1);
  std::vector<Node> urn;  // each placed node once, plus once per internal edge endpoint
  auto place = [&](Node a, Node b) {
    if (cross(rng)) b = dense[pick_dense(rng)];
    if (a == b) return;
    if (g.add_edge(a, b)) {
      urn.push_back(a);
      if (std::find(sparse.begin(), sparse.end(), b) != sparse.end()) urn.push_back(b);
    }
  };
  for (std::size_t t = 0; t < sparse.size(); ++t) {
    const Node x = sparse[t];
    const std::size_t targets = std::min(spec.attachment, t);
    std::vector<Node> chosen;
    while (chosen.size() < targets) {
      std::uniform_int_distribution<std::size_t> pick(0, urn.size() - 1);
      const Node y = urn[pick(rng)];
      if (std::find(chosen.begin(), chosen.end(), y) == chosen.end()) chosen.push_back(y);
    }
    urn.push_back(x);
    for (Node y : chosen) place(x, y);
    if (t >= 1) {
      std::uniform_int_distribution<std::size_t> pick_placed(0, t);
      for (std::size_t e = 0; e < spec.extra_edges; ++e) {
        const Node a = sparse[pick_placed(rng)];
        const Node b = sparse[pick_placed(rng)];
        if (a != b) place(a, b);
      }
    }
  }
  return g;
}

}  // namespace

GraphDataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  GraphDataset ds;
  ds.name = spec.subgroups == 1 ? "1SG" : "2SG";
  ds.node_ids = default_node_ids(spec.node_count);
  ds.graphs.resize(spec.graphs);
  const std::size_t per_class = spec.graphs / 2;
  const auto n = static_cast<std::int64_t>(spec.graphs);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    const int cls = static_cast<std::size_t>(i) < per_class ? 0 : 1;
    ds.graphs[i] = {generate_one(spec, cls, rng), cls, "synth-" + std::to_string(i)};
  }
  std::vector<std::string> region_of(spec.node_count);
  for (std::size_t v = 0; v < spec.node_count; ++v) region_of[v] = v < spec.node_count / 2 ? "S0" : "S1";
  ds.partition = RegionPartition(std::move(region_of));
  return ds;
}

}  // namespace densecf
