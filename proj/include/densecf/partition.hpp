#pragma once

#include <map>
#include <string>
#include <vector>

#include "densecf/graph.hpp"

namespace densecf {

// Assignment of every node to a named region (e.g. a brain lobe).
class RegionPartition {
 public:
  RegionPartition() = default;

  // region_of[v] names the region of node v. Throws Coverage when empty.
  explicit RegionPartition(std::vector<std::string> region_of);

  // Builds from a possibly partial assignment; nodes left unassigned raise
  // Coverage naming the first missing node.
  static RegionPartition from_assignment(std::size_t node_count,
                                         const std::map<Node, std::string>& assignment);

  std::size_t node_count() const { return region_of_.size(); }
  const std::string& region_of(Node v) const { return region_of_.at(v); }

  // Region names in lexicographic order.
  const std::vector<std::string>& regions() const { return regions_; }

  // Members of a region, ascending; empty when the region is unknown.
  NodeSet members(const std::string& region) const;

  // Throws Coverage when node_count differs from the graph's.
  void require_covers(std::size_t node_count) const;

  bool operator==(const RegionPartition& other) const { return region_of_ == other.region_of_; }

 private:
  std::vector<std::string> region_of_;
  std::vector<std::string> regions_;
};

}  // namespace densecf
