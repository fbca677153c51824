#include "densecf/partition.hpp"

#include <algorithm>
#include <set>

#include "densecf/error.hpp"

namespace densecf {

RegionPartition::RegionPartition(std::vector<std::string> region_of) : region_of_(std::move(region_of)) {
  if (region_of_.empty()) fail(ErrorKind::Coverage, "region partition has no nodes");
  std::set<std::string> names(region_of_.begin(), region_of_.end());
  regions_.assign(names.begin(), names.end());
}

RegionPartition RegionPartition::from_assignment(std::size_t node_count,
                                                 const std::map<Node, std::string>& assignment) {
  std::vector<std::string> region_of(node_count);
  for (const auto& [node, region] : assignment) {
    if (node >= node_count)
      fail(ErrorKind::Coverage, "partition assigns unknown node " + std::to_string(node));
    region_of[node] = region;
  }
  for (Node v = 0; v < node_count; ++v)
    if (!assignment.contains(v))
      fail(ErrorKind::Coverage, "partition does not cover node " + std::to_string(v));
  return RegionPartition(std::move(region_of));
}

NodeSet RegionPartition::members(const std::string& region) const {
  NodeSet out;
  for (Node v = 0; v < region_of_.size(); ++v)
    if (region_of_[v] == region) out.push_back(v);
  return out;
}

void RegionPartition::require_covers(std::size_t node_count) const {
  if (region_of_.size() != node_count)
    fail(ErrorKind::Coverage, "partition covers " + std::to_string(region_of_.size()) +
                                  " nodes but the graph has " + std::to_string(node_count));
}

}  // namespace densecf
