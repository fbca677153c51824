#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "densecf/graph.hpp"
#include "densecf/partition.hpp"

namespace densecf {

// Linear interpolation between closest ranks: position p/100 * (n-1) in the
// sorted values. Throws EmptyDistribution on empty input.
double percentile_linear(std::span<const double> values, double p);

struct QuartileSummary {
  double q0 = 0, q1 = 0, q2 = 0, q3 = 0, q4 = 0;
};

QuartileSummary summarize_distribution(std::span<const double> values);

// One attempted instance. `predicted_label` is the oracle's class of the
// input, which is what flip rates condition on.
struct RunRecord {
  std::string method;
  std::string dataset;
  std::size_t instance = 0;
  std::string name;
  int true_label = 0;
  int predicted_label = 0;
  bool found = false;
  std::size_t iterations = 0;
  std::uint64_t oracle_calls = 0;
  std::optional<std::size_t> distance;
  std::optional<double> distance_ratio;

  bool operator==(const RunRecord&) const = default;
};

struct MethodRunSummary {
  std::string method;
  std::string dataset;
  std::vector<RunRecord> records;
};

// Percent found per predicted class; nullopt where the class has no instances.
struct FlipRate {
  std::optional<double> class0;
  std::optional<double> class1;
};

FlipRate flip_rate(const MethodRunSummary& summary);

struct RegionChange {
  std::string region;
  std::size_t added_endpoints = 0;
  std::size_t removed_endpoints = 0;
  double added_pct = 0.0;
  double removed_pct = 0.0;
};

struct RegionChangeSummary {
  std::vector<RegionChange> rows;  // one per region, name order
  std::size_t total_added = 0;     // ADD
  std::size_t total_removed = 0;   // REM
  // False when the corresponding edit set is empty and the column is all zero.
  bool added_defined = false;
  bool removed_defined = false;
};

// Every added (removed) edge contributes its two endpoint regions; a region's
// percentage is its share of the 2*|edits| endpoints.
RegionChangeSummary region_change_summary(const Graph& g, const Graph& counterfactual,
                                          const RegionPartition& partition);

// --- CSV / JSON emission -------------------------------------------------

inline constexpr int kRecordsSchemaVersion = 1;

// Header: method,dataset,instance,name,true_label,predicted_label,found,
//         iterations,oracle_calls,distance,distance_ratio
void write_records_csv(std::ostream& out, std::span<const MethodRunSummary> summaries);

// Groups rows by method in first-appearance order. Throws Parse with the
// offending line number on malformed input.
std::vector<MethodRunSummary> read_records_csv(std::istream& in);

// Flip rates plus quartiles of d% (found instances only), C and I.
nlohmann::json aggregate_json(std::span<const MethodRunSummary> summaries);

// One row per method: method,dataset,instances,found,flip_rate_class0,
// flip_rate_class1, then q0..q4 of distance_pct, oracle_calls, iterations.
// Undefined cells are empty.
void write_aggregate_csv(std::ostream& out, std::span<const MethodRunSummary> summaries);

// Header: region,added_endpoints,added_pct,removed_endpoints,removed_pct
void write_region_csv(std::ostream& out, const RegionChangeSummary& summary);
nlohmann::json to_json(const RegionChangeSummary& summary);

// Shortest round-trip decimal form, locale independent.
std::string format_double(double value);

}  // namespace densecf
