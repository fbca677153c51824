#include "densecf/oracle.hpp"

#include <algorithm>

#include "densecf/error.hpp"

namespace densecf {

namespace {

void require_halves(std::size_t node_count, std::span<const Node> s0, std::span<const Node> s1) {
  std::vector<int> seen(node_count, 0);
  for (auto half : {s0, s1})
    for (Node v : half) {
      if (v >= node_count) fail(ErrorKind::Partition, "white-box half names unknown node " + std::to_string(v));
      if (seen[v]++) fail(ErrorKind::Partition, "white-box halves overlap at node " + std::to_string(v));
    }
  for (Node v = 0; v < node_count; ++v)
    if (!seen[v]) fail(ErrorKind::Partition, "white-box halves do not cover node " + std::to_string(v));
}

}  // namespace

Label whitebox_classify(const Graph& g, std::span<const Node> s0, std::span<const Node> s1) {
  require_halves(g.node_count(), s0, s1);
  const auto t0 = induced_triangle_count(g, s0);
  const auto t1 = induced_triangle_count(g, s1);
  if (t0 != t1) return t1 > t0 ? 1 : 0;
  const auto e0 = induced_edge_count(g, s0);
  const auto e1 = induced_edge_count(g, s1);
  return e1 > e0 ? 1 : 0;
}

WhiteboxClassifier::WhiteboxClassifier(NodeSet s0, NodeSet s1) : s0_(std::move(s0)), s1_(std::move(s1)) {
  std::sort(s0_.begin(), s0_.end());
  std::sort(s1_.begin(), s1_.end());
  require_halves(s0_.size() + s1_.size(), s0_, s1_);
}

WhiteboxClassifier WhiteboxClassifier::from_partition(const RegionPartition& partition) {
  const auto& names = partition.regions();
  if (names.size() != 2 || names[0] != "S0" || names[1] != "S1")
    fail(ErrorKind::Configuration, "white-box classifier needs a partition with exactly regions S0 and S1");
  return WhiteboxClassifier(partition.members("S0"), partition.members("S1"));
}

}  // namespace densecf
