#include <doctest.h>

#include <thread>

#include "densecf/error.hpp"
#include "densecf/oracle.hpp"
#include "support.hpp"

using namespace densecf;

TEST_CASE("oracle counts predictions but not audits") {
  Oracle o(testing::parity_classifier());
  const Graph g = testing::complete_graph(3);
  CHECK(o.calls() == 0);
  CHECK(o.predict(g) == 1);
  CHECK(o.calls() == 1);
  for (int i = 0; i < 9; ++i) o.predict(g);
  CHECK(o.calls() == 10);
  o.audit(g);
  CHECK(o.calls() == 10);
  CHECK(o.audits() == 1);

  Oracle c = o.clone();
  CHECK(c.calls() == 0);
  CHECK(&c.classifier() == &o.classifier());
  o.reset();
  CHECK(o.calls() == 0);
}

TEST_CASE("concurrent predictions are all counted") {
  Oracle o(testing::parity_classifier());
  const Graph g(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&] {
      for (int i = 0; i < 1000; ++i) o.predict(g);
    });
  for (auto& t : threads) t.join();
  CHECK(o.calls() == 4000);
}

TEST_CASE("whitebox classifier") {
  NodeSet s0, s1;
  for (Node v = 0; v < 10; ++v) s0.push_back(v);
  for (Node v = 10; v < 20; ++v) s1.push_back(v);

  Graph dense1(20);
  for (Node u = 10; u < 20; ++u)
    for (Node v = u + 1; v < 20; ++v) dense1.add_edge(u, v);
  dense1.add_edge(0, 1);
  CHECK(whitebox_classify(dense1, s0, s1) == 1);

  Graph symmetric(20);
  for (Node v = 0; v < 3; ++v) {
    symmetric.add_edge(v, (v + 1) % 3);
    symmetric.add_edge(10 + v, 10 + (v + 1) % 3);
  }
  CHECK(whitebox_classify(symmetric, s0, s1) == 0);

  // Equal triangles, more edges in S1.
  Graph by_edges(20);
  by_edges.add_edge(10, 11);
  CHECK(whitebox_classify(by_edges, s0, s1) == 1);

  NodeSet overlap = s1;
  overlap.push_back(0);
  std::sort(overlap.begin(), overlap.end());
  CHECK_THROWS_AS(whitebox_classify(dense1, s0, overlap), Error);
  CHECK_THROWS_AS(whitebox_classify(dense1, s0, NodeSet{10, 11}), Error);

  RegionPartition p([] {
    std::vector<std::string> r(20, "S0");
    for (int v = 10; v < 20; ++v) r[v] = "S1";
    return r;
  }());
  CHECK(WhiteboxClassifier::from_partition(p).predict(dense1) == 1);
  CHECK_THROWS_AS(WhiteboxClassifier::from_partition(RegionPartition(std::vector<std::string>(4, "A"))), Error);
}
