#pragma once

// Comparison methods: random edge-flip search (EDG), nearest opposite-class
// dataset graph (DAT), and the backward-search refinement (BW) that can be
// stacked on any found counterfactual.

#include <cstdint>
#include <span>

#include "densecf/counterfactual.hpp"
#include "densecf/graph.hpp"
#include "densecf/oracle.hpp"

namespace densecf {

inline constexpr std::size_t kDefaultEdgeFlipIterations = 2000;

struct BaselineConfig {
  std::size_t edg_max_iterations = kDefaultEdgeFlipIterations;
  std::uint64_t seed = 0;
};

// Greedy reverts of the edits between g and candidate, removals first then
// additions, each in lexicographic order. A revert is kept when the class
// stays opposite to g's; passes repeat until one keeps nothing. One counted
// oracle call per tentative revert.
//
// This overload establishes the two labels with audit calls and throws
// InvalidCandidate when they agree.
Graph backward_search(Oracle& oracle, const Graph& g, const Graph& candidate);

// Same, for callers that already know g's label.
Graph backward_search(Oracle& oracle, const Graph& g, Label input_label, const Graph& candidate);

// Seeded random walk that flips one edge per step (coin toss between removing
// a present edge and adding an absent one, uniform within the kind), then
// refines the first class flip with backward_search.
CounterfactualResult edg_search(Oracle& oracle, const Graph& g, const BaselineConfig& config = {});

// Classifies every dataset graph and returns the opposite-class one closest to
// g by symmetric difference (ties: lowest index).
CounterfactualResult dat_search(Oracle& oracle, const Graph& g, std::span<const Graph> dataset);

// Applies backward_search to a found result, adding its calls to C. The
// method name gains a "+bw" suffix.
CounterfactualResult refine_with_backward_search(Oracle& oracle, const Graph& g, CounterfactualResult found);

}  // namespace densecf
