#include "densecf/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "densecf/error.hpp"

namespace densecf {

double percentile_linear(std::span<const double> values, double p) {
  if (values.empty()) fail(ErrorKind::EmptyDistribution, "percentile of an empty distribution");
  if (!(p >= 0.0 && p <= 100.0)) fail(ErrorKind::InvalidParameter, "percentile must lie in [0, 100]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

QuartileSummary summarize_distribution(std::span<const double> values) {
  if (values.empty()) fail(ErrorKind::EmptyDistribution, "cannot summarize an empty distribution");
  return {percentile_linear(values, 0), percentile_linear(values, 25), percentile_linear(values, 50),
          percentile_linear(values, 75), percentile_linear(values, 100)};
}

FlipRate flip_rate(const MethodRunSummary& summary) {
  std::size_t attempted[2] = {0, 0};
  std::size_t found[2] = {0, 0};
  for (const auto& r : summary.records) {
    const int c = r.predicted_label == 1 ? 1 : 0;
    ++attempted[c];
    if (r.found) ++found[c];
  }
  FlipRate out;
  if (attempted[0]) out.class0 = 100.0 * static_cast<double>(found[0]) / static_cast<double>(attempted[0]);
  if (attempted[1]) out.class1 = 100.0 * static_cast<double>(found[1]) / static_cast<double>(attempted[1]);
  return out;
}

RegionChangeSummary region_change_summary(const Graph& g, const Graph& counterfactual,
                                          const RegionPartition& partition) {
  partition.require_covers(g.node_count());
  const EditList edits = edit_list_between(g, counterfactual);
  RegionChangeSummary out;
  const auto& names = partition.regions();
  out.rows.resize(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) out.rows[i].region = names[i];
  auto row_of = [&](Node v) -> RegionChange& {
    auto it = std::lower_bound(names.begin(), names.end(), partition.region_of(v));
    return out.rows[static_cast<std::size_t>(it - names.begin())];
  };
  for (const Edge& e : edits.additions) {
    ++row_of(e.u).added_endpoints;
    ++row_of(e.v).added_endpoints;
  }
  for (const Edge& e : edits.removals) {
    ++row_of(e.u).removed_endpoints;
    ++row_of(e.v).removed_endpoints;
  }
  out.total_added = edits.additions.size();
  out.total_removed = edits.removals.size();
  out.added_defined = out.total_added > 0;
  out.removed_defined = out.total_removed > 0;
  for (auto& row : out.rows) {
    if (out.added_defined)
      row.added_pct = 100.0 * static_cast<double>(row.added_endpoints) / static_cast<double>(2 * out.total_added);
    if (out.removed_defined)
      row.removed_pct =
          100.0 * static_cast<double>(row.removed_endpoints) / static_cast<double>(2 * out.total_removed);
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

constexpr const char* kRecordsHeader =
    "method,dataset,instance,name,true_label,predicted_label,found,iterations,oracle_calls,distance,"
    "distance_ratio";

void require_plain_field(const std::string& field) {
  if (field.find_first_of(",\n\r\"") != std::string::npos)
    fail(ErrorKind::Format, "CSV field contains a separator or quote: '" + field + "'");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no, const char* field) {
  T value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": field '" + field + "' is not a number: '" +
                               text + "'");
  return value;
}

nlohmann::json quartiles_json(const std::vector<double>& values) {
  if (values.empty()) return nullptr;
  const auto q = summarize_distribution(values);
  return {{"q0", q.q0}, {"q1", q.q1}, {"q2", q.q2}, {"q3", q.q3}, {"q4", q.q4}};
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nullptr; }

}  // namespace

void write_records_csv(std::ostream& out, std::span<const MethodRunSummary> summaries) {
  out << kRecordsHeader << '\n';
  for (const auto& s : summaries)
    for (const auto& r : s.records) {
      require_plain_field(r.method);
      require_plain_field(r.dataset);
      require_plain_field(r.name);
      out << r.method << ',' << r.dataset << ',' << r.instance << ',' << r.name << ',' << r.true_label << ','
          << r.predicted_label << ',' << (r.found ? 1 : 0) << ',' << r.iterations << ',' << r.oracle_calls
          << ',' << (r.distance ? std::to_string(*r.distance) : "") << ','
          << (r.distance_ratio ? format_double(*r.distance_ratio) : "") << '\n';
    }
}

std::vector<MethodRunSummary> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader)
    fail(ErrorKind::Parse, "line 1: expected records header '" + std::string(kRecordsHeader) + "'");
  std::vector<MethodRunSummary> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11)
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 11 fields, got " +
                                 std::to_string(f.size()));
    RunRecord r;
    r.method = f[0];
    r.dataset = f[1];
    r.instance = parse_number<std::size_t>(f[2], line_no, "instance");
    r.name = f[3];
    r.true_label = parse_number<int>(f[4], line_no, "true_label");
    r.predicted_label = parse_number<int>(f[5], line_no, "predicted_label");
    r.found = parse_number<int>(f[6], line_no, "found") != 0;
    r.iterations = parse_number<std::size_t>(f[7], line_no, "iterations");
    r.oracle_calls = parse_number<std::uint64_t>(f[8], line_no, "oracle_calls");
    if (!f[9].empty()) r.distance = parse_number<std::size_t>(f[9], line_no, "distance");
    if (!f[10].empty()) r.distance_ratio = parse_number<double>(f[10], line_no, "distance_ratio");

    auto it = std::find_if(out.begin(), out.end(), [&](const MethodRunSummary& s) {
      return s.method == r.method && s.dataset == r.dataset;
    });
    if (it == out.end()) {
      out.push_back({r.method, r.dataset, {}});
      it = std::prev(out.end());
    }
    it->records.push_back(std::move(r));
  }
  return out;
}

nlohmann::json aggregate_json(std::span<const MethodRunSummary> summaries) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& s : summaries) {
    std::vector<double> ratio, calls, iters;
    std::size_t found = 0;
    for (const auto& r : s.records) {
      calls.push_back(static_cast<double>(r.oracle_calls));
      iters.push_back(static_cast<double>(r.iterations));
      if (r.found) {
        ++found;
        if (r.distance_ratio) ratio.push_back(100.0 * *r.distance_ratio);
      }
    }
    const auto fr = flip_rate(s);
    methods.push_back({
        {"method", s.method},
        {"dataset", s.dataset},
        {"instances", s.records.size()},
        {"found", found},
        {"flip_rate", {{"class0", optional_json(fr.class0)}, {"class1", optional_json(fr.class1)}}},
        {"distance_pct", quartiles_json(ratio)},
        {"oracle_calls", quartiles_json(calls)},
        {"iterations", quartiles_json(iters)},
    });
  }
  return {
      {"format", "densecf-aggregate"},
      {"version", kRecordsSchemaVersion},
      {"percentile_method", "linear"},
      {"distance_pct_scope", "found instances only"},
      {"oracle_calls_include_backward_search", true},
      {"methods", methods},
  };
}

void write_aggregate_csv(std::ostream& out, std::span<const MethodRunSummary> summaries) {
  out << "method,dataset,instances,found,flip_rate_class0,flip_rate_class1";
  for (const char* metric : {"distance_pct", "oracle_calls", "iterations"})
    for (int q = 0; q <= 4; ++q) out << ',' << metric << "_q" << q;
  out << '\n';
  const auto j = aggregate_json(summaries);
  auto cell = [](const nlohmann::json& v) { return v.is_null() ? std::string() : format_double(v.get<double>()); };
  for (const auto& m : j["methods"]) {
    require_plain_field(m["method"].get<std::string>());
    require_plain_field(m["dataset"].get<std::string>());
    out << m["method"].get<std::string>() << ',' << m["dataset"].get<std::string>() << ','
        << m["instances"].get<std::size_t>() << ',' << m["found"].get<std::size_t>() << ','
        << cell(m["flip_rate"]["class0"]) << ',' << cell(m["flip_rate"]["class1"]);
    for (const char* metric : {"distance_pct", "oracle_calls", "iterations"})
      for (const char* q : {"q0", "q1", "q2", "q3", "q4"})
        out << ',' << (m[metric].is_null() ? std::string() : cell(m[metric][q]));
    out << '\n';
  }
}

void write_region_csv(std::ostream& out, const RegionChangeSummary& summary) {
  out << "region,added_endpoints,added_pct,removed_endpoints,removed_pct\n";
  for (const auto& row : summary.rows) {
    require_plain_field(row.region);
    out << row.region << ',' << row.added_endpoints << ',' << format_double(row.added_pct) << ','
        << row.removed_endpoints << ',' << format_double(row.removed_pct) << '\n';
  }
}

nlohmann::json to_json(const RegionChangeSummary& summary) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : summary.rows)
    rows.push_back({{"region", row.region},
                    {"added_endpoints", row.added_endpoints},
                    {"added_pct", row.added_pct},
                    {"removed_endpoints", row.removed_endpoints},
                    {"removed_pct", row.removed_pct}});
  return {{"ADD", summary.total_added},
          {"REM", summary.total_removed},
          {"added_defined", summary.added_defined},
          {"removed_defined", summary.removed_defined},
          {"regions", rows}};
}

}  // namespace densecf
