#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "densecf/graph.hpp"
#include "densecf/oracle.hpp"

namespace densecf {

// Per-iteration bookkeeping of the clique searches.
struct IterationTrace {
  NodeSet removed_clique;
  std::size_t edges_removed = 0;
  std::vector<NodeSet> added_cliques;
  std::size_t edges_added = 0;
};

struct CounterfactualResult {
  std::string method;
  bool found = false;
  Label input_label = 0;
  std::optional<Graph> counterfactual;
  EditList edits;  // relative to the input
  std::size_t iterations = 0;
  std::uint64_t oracle_calls = 0;
  std::optional<std::size_t> distance;
  std::optional<double> distance_ratio;
  std::string diagnostic;
  std::vector<IterationTrace> trace;

  // Validates the counterfactual with an audit call: throws Internal when the
  // oracle does not classify it opposite to `input_label`.
  static CounterfactualResult make_found(std::string method, Oracle& oracle, const Graph& input,
                                         Label input_label, Graph counterfactual,
                                         std::size_t iterations, std::uint64_t oracle_calls);

  static CounterfactualResult make_not_found(std::string method, Label input_label,
                                             std::size_t iterations, std::uint64_t oracle_calls,
                                             std::string diagnostic = {});
};

}  // namespace densecf
