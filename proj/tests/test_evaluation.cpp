#include <doctest.h>

#include <random>
#include <sstream>

#include "densecf/error.hpp"
#include "densecf/evaluation.hpp"
#include "support.hpp"

using namespace densecf;

namespace {

RunRecord record(int predicted, bool found, std::size_t calls = 1, std::optional<double> ratio = std::nullopt) {
  RunRecord r;
  r.method = "cli";
  r.dataset = "toy";
  r.predicted_label = predicted;
  r.true_label = predicted;
  r.found = found;
  r.oracle_calls = calls;
  r.iterations = calls;
  if (found) {
    r.distance = 3;
    r.distance_ratio = ratio.value_or(0.25);
  }
  return r;
}

}  // namespace

TEST_CASE("percentiles and quartiles") {
  const double five[] = {5};
  const auto one = summarize_distribution(five);
  CHECK(one.q0 == 5);
  CHECK(one.q4 == 5);
  CHECK(one.q2 == 5);
  const double seq[] = {5, 3, 1, 2, 4};
  const auto q = summarize_distribution(seq);
  CHECK(q.q0 == 1);
  CHECK(q.q1 == 2);
  CHECK(q.q2 == 3);
  CHECK(q.q3 == 4);
  CHECK(q.q4 == 5);
  CHECK_THROWS_AS(summarize_distribution(std::span<const double>{}), Error);

  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(1 + rng() % 40);
    for (auto& x : v) x = u(rng);
    const double p = std::uniform_real_distribution<double>(0, 100)(rng);
    CHECK(percentile_linear(v, p) == doctest::Approx(testing::sorted_percentile(v, p)).epsilon(1e-12));
    const auto s = summarize_distribution(v);
    CHECK(s.q0 == *std::min_element(v.begin(), v.end()));
    CHECK(s.q4 == *std::max_element(v.begin(), v.end()));
    CHECK((s.q0 <= s.q1 && s.q1 <= s.q2 && s.q2 <= s.q3 && s.q3 <= s.q4));
  }
}

TEST_CASE("flip rate conditions on the predicted class") {
  MethodRunSummary all{"cli", "toy", {record(0, true), record(1, true)}};
  CHECK(*flip_rate(all).class0 == 100.0);
  CHECK(*flip_rate(all).class1 == 100.0);

  MethodRunSummary part{"cli", "toy", {record(0, true), record(0, true), record(0, false), record(0, true)}};
  const auto fr = flip_rate(part);
  CHECK(*fr.class0 == 75.0);
  CHECK_FALSE(fr.class1);
}

TEST_CASE("region change summary") {
  const RegionPartition p({"A", "A", "B", "B", "C", "C"});
  const Graph g(6);
  const auto inside = region_change_summary(g, testing::from_pairs(6, {{0, 1}}), p);
  CHECK(inside.rows[0].added_pct == 100.0);
  CHECK(inside.rows[1].added_pct == 0.0);
  CHECK(inside.added_defined);
  CHECK_FALSE(inside.removed_defined);
  CHECK(inside.total_added == 1);

  const auto across = region_change_summary(g, testing::from_pairs(6, {{1, 2}}), p);
  CHECK(across.rows[0].added_pct == 50.0);
  CHECK(across.rows[1].added_pct == 50.0);

  std::mt19937_64 rng(62);
  for (int i = 0; i < 100; ++i) {
    const Graph a = testing::random_graph(6, 0.5, rng);
    const Graph b = testing::random_graph(6, 0.5, rng);
    const auto s = region_change_summary(a, b, p);
    const auto edits = edit_list_between(a, b);
    CHECK(s.total_added == edits.additions.size());
    CHECK(s.total_removed == edits.removals.size());
    double add = 0, rem = 0;
    for (const auto& row : s.rows) add += row.added_pct, rem += row.removed_pct;
    if (s.added_defined) CHECK(std::abs(add - 100.0) <= 1e-9);
    if (s.removed_defined) CHECK(std::abs(rem - 100.0) <= 1e-9);
  }
}

TEST_CASE("records round-trip through CSV") {
  std::vector<MethodRunSummary> in{{"cli", "toy", {record(0, true, 4, 0.125), record(1, false, 9)}},
                                   {"dat", "toy", {record(1, true, 12, 0.1)}}};
  in[0].records[1].method = "cli";
  in[1].records[0].method = "dat";
  std::stringstream ss;
  write_records_csv(ss, in);
  CHECK(ss.str().rfind("method,dataset,instance,name,true_label,predicted_label,found,iterations,oracle_calls,"
                       "distance,distance_ratio\n",
                       0) == 0);
  const auto back = read_records_csv(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0].records == in[0].records);
  CHECK(back[1].records == in[1].records);

  std::stringstream bad("method,dataset\nx,y\n");
  CHECK_THROWS_AS(read_records_csv(bad), Error);
}

TEST_CASE("aggregates match a recomputation") {
  MethodRunSummary s{"cli", "toy", {}};
  std::mt19937_64 rng(63);
  for (int i = 0; i < 30; ++i) {
    auto r = record(i % 2, rng() % 3 != 0, 1 + rng() % 50, (rng() % 100) / 100.0);
    s.records.push_back(r);
  }
  const auto j = aggregate_json(std::span(&s, 1));
  const auto& m = j["methods"][0];
  std::vector<double> ratio, calls;
  for (const auto& r : s.records) {
    calls.push_back(static_cast<double>(r.oracle_calls));
    if (r.found) ratio.push_back(100.0 * *r.distance_ratio);
  }
  CHECK(m["oracle_calls"]["q2"].get<double>() == doctest::Approx(testing::sorted_percentile(calls, 50)));
  CHECK(m["oracle_calls"]["q3"].get<double>() == doctest::Approx(testing::sorted_percentile(calls, 75)));
  CHECK(m["distance_pct"]["q1"].get<double>() == doctest::Approx(testing::sorted_percentile(ratio, 25)));
  CHECK(m["found"].get<std::size_t>() == ratio.size());
  CHECK(m["flip_rate"]["class0"].get<double>() == doctest::Approx(*flip_rate(s).class0));
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(100) == "100");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("aggregate csv") {
  MethodRunSummary s{"cli", "toy", {record(0, true, 4, 0.5), record(1, false, 6)}};
  std::ostringstream out;
  write_aggregate_csv(out, std::span(&s, 1));
  std::istringstream lines(out.str());
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(std::count(header.begin(), header.end(), ',') == 20);
  CHECK(std::count(row.begin(), row.end(), ',') == 20);
  CHECK(row.rfind("cli,toy,2,1,100,0,50,50,50,50,50,4,", 0) == 0);
}
