#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "densecf/graph.hpp"
#include "densecf/partition.hpp"
#include "densecf/spectral.hpp"

namespace densecf {

// A binary graph classifier. Implementations must be safe to call
// concurrently from several threads.
class GraphClassifier {
 public:
  virtual ~GraphClassifier() = default;
  virtual Label predict(const Graph& g) const = 0;
  virtual std::string name() const = 0;
};

class FunctionClassifier final : public GraphClassifier {
 public:
  using Fn = std::function<Label(const Graph&)>;
  explicit FunctionClassifier(Fn fn, std::string name = "function")
      : fn_(std::move(fn)), name_(std::move(name)) {}

  Label predict(const Graph& g) const override { return fn_(g); }
  std::string name() const override { return name_; }

 private:
  Fn fn_;
  std::string name_;
};

class KnnClassifier final : public GraphClassifier {
 public:
  explicit KnnClassifier(SFKnnModel model) : model_(std::move(model)) {}

  Label predict(const Graph& g) const override { return knn_predict(model_, g); }
  std::string name() const override { return "sf-knn"; }
  const SFKnnModel& model() const { return model_; }

 private:
  SFKnnModel model_;
};

// Label i when the subgraph induced on S_i has more triangles; ties fall back
// to induced edge counts, then to 0. Throws Partition when the halves overlap
// or do not cover the node set.
Label whitebox_classify(const Graph& g, std::span<const Node> s0, std::span<const Node> s1);

class WhiteboxClassifier final : public GraphClassifier {
 public:
  WhiteboxClassifier(NodeSet s0, NodeSet s1);

  // Uses the regions named "S0" and "S1".
  static WhiteboxClassifier from_partition(const RegionPartition& partition);

  Label predict(const Graph& g) const override { return whitebox_classify(g, s0_, s1_); }
  std::string name() const override { return "whitebox"; }

 private:
  NodeSet s0_;
  NodeSet s1_;
};

// Call-counting wrapper every search queries. `predict` is the black-box
// call that counts toward C. `audit` is reserved for result validation and is
// tallied separately so C stays the search's own cost.
class Oracle {
 public:
  explicit Oracle(std::shared_ptr<const GraphClassifier> classifier)
      : classifier_(std::move(classifier)) {}

  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  // Fresh counters over the same classifier.
  Oracle clone() const { return Oracle(classifier_); }

  Label predict(const Graph& g) {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return classifier_->predict(g);
  }

  Label audit(const Graph& g) {
    audits_.fetch_add(1, std::memory_order_relaxed);
    return classifier_->predict(g);
  }

  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }
  std::uint64_t audits() const { return audits_.load(std::memory_order_relaxed); }
  void reset() {
    calls_.store(0);
    audits_.store(0);
  }

  const GraphClassifier& classifier() const { return *classifier_; }
  std::shared_ptr<const GraphClassifier> shared_classifier() const { return classifier_; }

  Oracle(Oracle&& other) noexcept
      : classifier_(std::move(other.classifier_)),
        calls_(other.calls_.load()),
        audits_(other.audits_.load()) {}

 private:
  std::shared_ptr<const GraphClassifier> classifier_;
  std::atomic<std::uint64_t> calls_{0};
  std::atomic<std::uint64_t> audits_{0};
};

}  // namespace densecf
