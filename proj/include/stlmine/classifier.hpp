#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stlmine/pstl.hpp"
#include "stlmine/trace.hpp"

namespace stlmine {

struct LabeledTraces {
  std::vector<TimedTrace> good;  // label 1
  std::vector<TimedTrace> bad;   // label 0

  std::size_t total() const { return good.size() + bad.size(); }
};

// thrown when learning is impossible because only one class is populated;
// the miner reacts by resampling instead of treating it as a bug
struct DegenerateData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Rows follow the good-then-bad order of the LabeledTraces that produced
 * them; column i holds the robustness of the template instantiated at
 * valuations[i] (empty for raw per-timepoint features). */
struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<Valuation> valuations;
  std::vector<std::string> column_names;

  std::size_t columns() const { return rows.empty() ? 0 : rows[0].size(); }
};

/* Binary CART tree stored as an index-linked node pool.  Internal nodes
 * route feature < threshold to the left child and >= threshold to the
 * right; leaves carry the label. */
struct TreeNode {
  int feature = -1;        // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = -1;          // leaves only
  bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  std::size_t size() const { return nodes.size(); }
  std::size_t depth() const;
  std::string to_text() const;  // indented if/else rendering
};

struct TreeConfig {
  std::size_t max_depth = 4;
  std::size_t min_leaf = 1;
  double min_impurity_decrease = 1e-6;
};

struct ClassifierConfig {
  double split_ratio = 0.7;
  std::uint64_t seed = 0;
  std::size_t feature_count = 16;  // valuations drawn from the lattice
  TreeConfig tree;
};

/* Stratified shuffle split: per class, floor(ratio * n) trades for train
 * but never less than 1 when the class is nonempty; a seed fixes the
 * shuffle.  An empty class passes through empty. */
std::pair<LabeledTraces, LabeledTraces> split_dataset(const LabeledTraces& data,
                                                      double ratio,
                                                      std::uint64_t seed);

FeatureMatrix compute_features(const LabeledTraces& data,
                               const ParametricFormula& psi,
                               const std::vector<Valuation>& valuations);

// one row per trace; append semantics match compute_features ordering
std::vector<double> feature_row(const TimedTrace& trace,
                                const std::vector<Formula>& instantiated);

// the naive baseline: every sample of every channel is its own feature
FeatureMatrix timepoint_features(const LabeledTraces& data);

DecisionTree train_tree(const FeatureMatrix& fm, const TreeConfig& cfg);

int predict(const DecisionTree& tree, const std::vector<double>& row);

double accuracy(const std::vector<int>& truth, const std::vector<int>& predicted);

struct ClassifierResult {
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  DecisionTree tree;
  std::vector<Valuation> valuations;
  FeatureMatrix train_features;
  FeatureMatrix test_features;
};

/* The full pipeline: split -> lattice valuations -> features -> CART ->
 * held-out accuracy.  psi must have ranges attached.  Throws
 * DegenerateData when a class is empty. */
ClassifierResult dt_based_stl_classifier(const ParametricFormula& psi,
                                         const LabeledTraces& data,
                                         const ClassifierConfig& cfg);

// same pipeline on a split the caller already owns (the miner keeps its
// split fixed and appends counterexamples to the training side only)
ClassifierResult classify_with_split(const ParametricFormula& psi,
                                     const LabeledTraces& train,
                                     const LabeledTraces& test,
                                     const ClassifierConfig& cfg);

// debugging aid: matrix as CSV, one header column per valuation
void write_feature_csv(const FeatureMatrix& fm, const std::string& path);

}  // namespace stlmine
