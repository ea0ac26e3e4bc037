#include "stlmine/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "stlmine/robustness.hpp"
#include "stlmine/rng.hpp"

namespace stlmine {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<TimedTrace> pick(const std::vector<TimedTrace>& all,
                             const std::vector<std::size_t>& idx,
                             std::size_t from, std::size_t to) {
  std::vector<TimedTrace> out;
  out.reserve(to - from);
  for (std::size_t i = from; i < to; ++i) out.push_back(all[idx[i]]);
  return out;
}

}  // namespace

std::pair<LabeledTraces, LabeledTraces> split_dataset(const LabeledTraces& data,
                                                      double ratio,
                                                      std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("split_dataset: ratio must be in (0,1)");
  Rng rng(seed);
  LabeledTraces train, test;
  auto split_class = [&rng, ratio](const std::vector<TimedTrace>& all,
                                   std::vector<TimedTrace>& tr,
                                   std::vector<TimedTrace>& te,
                                   std::uint64_t stream) {
    if (all.empty()) return;
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rng local = rng.fork(stream);
    local.shuffle(idx);
    std::size_t n_train = static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(all.size())));
    if (n_train == 0) n_train = 1;
    tr = pick(all, idx, 0, n_train);
    te = pick(all, idx, n_train, all.size());
  };
  split_class(data.good, train.good, test.good, 1);
  split_class(data.bad, train.bad, test.bad, 2);
  return {std::move(train), std::move(test)};
}

std::vector<double> feature_row(const TimedTrace& trace,
                                const std::vector<Formula>& instantiated) {
  std::vector<double> row;
  row.reserve(instantiated.size());
  for (const auto& f : instantiated)
    row.push_back(robustness(f, trace, trace.times().front()));
  return row;
}

namespace {

std::string valuation_name(const Valuation& nu) {
  std::string s;
  for (const auto& [name, value] : nu) {
    if (!s.empty()) s += ';';
    s += name + "=" + format_double(value);
  }
  return s;
}

}  // namespace

FeatureMatrix compute_features(const LabeledTraces& data,
                               const ParametricFormula& psi,
                               const std::vector<Valuation>& valuations) {
  if (valuations.empty())
    throw std::invalid_argument("compute_features: no valuations");
  std::vector<Formula> instantiated;
  instantiated.reserve(valuations.size());
  for (const auto& nu : valuations) instantiated.push_back(instantiate(psi, nu));

  FeatureMatrix fm;
  fm.valuations = valuations;
  for (const auto& nu : valuations)
    fm.column_names.push_back(valuation_name(nu));
  fm.rows.reserve(data.total());
  fm.labels.reserve(data.total());
  for (const auto& t : data.good) {
    fm.rows.push_back(feature_row(t, instantiated));
    fm.labels.push_back(1);
  }
  for (const auto& t : data.bad) {
    fm.rows.push_back(feature_row(t, instantiated));
    fm.labels.push_back(0);
  }
  return fm;
}

FeatureMatrix timepoint_features(const LabeledTraces& data) {
  FeatureMatrix fm;
  auto add = [&fm](const std::vector<TimedTrace>& traces, int label) {
    for (const auto& t : traces) {
      std::vector<double> row;
      for (const auto& name : t.channel_names()) {
        const auto& values = t.channel(name);
        row.insert(row.end(), values.begin(), values.end());
      }
      if (!fm.rows.empty() && fm.rows.front().size() != row.size())
        throw std::invalid_argument(
            "timepoint_features: traces disagree in shape");
      fm.rows.push_back(std::move(row));
      fm.labels.push_back(label);
    }
  };
  add(data.good, 1);
  add(data.bad, 0);
  if (!fm.rows.empty()) {
    const auto& first = data.good.empty() ? data.bad.front() : data.good.front();
    for (const auto& name : first.channel_names())
      for (double t : first.times())
        fm.column_names.push_back(name + "@" + format_double(t));
  }
  return fm;
}

// ---------------------------------------------------------------------------
// CART

namespace {

double gini(std::size_t ones, std::size_t total) {
  if (total == 0) return 0.0;
  double p1 = static_cast<double>(ones) / static_cast<double>(total);
  double p0 = 1.0 - p1;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct Builder {
  const FeatureMatrix& fm;
  const TreeConfig& cfg;
  std::vector<TreeNode> nodes;

  int leaf(std::size_t ones, std::size_t total) {
    TreeNode n;
    n.label = ones * 2 > total ? 1 : 0;  // exact tie goes to 0
    nodes.push_back(n);
    return static_cast<int>(nodes.size() - 1);
  }

  int build(const std::vector<std::size_t>& rows, std::size_t depth) {
    std::size_t ones = 0;
    for (auto r : rows) ones += static_cast<std::size_t>(fm.labels[r]);
    if (ones == 0 || ones == rows.size() || depth >= cfg.max_depth ||
        rows.size() < 2 * cfg.min_leaf)
      return leaf(ones, rows.size());

    const double parent = gini(ones, rows.size());
    const std::size_t n = rows.size();
    const std::size_t columns = fm.rows[rows[0]].size();

    double best_gain = 0.0;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    bool found = false;

    std::vector<std::pair<double, int>> sorted(n);
    for (std::size_t j = 0; j < columns; ++j) {
      for (std::size_t i = 0; i < n; ++i)
        sorted[i] = {fm.rows[rows[i]][j], fm.labels[rows[i]]};
      std::stable_sort(sorted.begin(), sorted.end(),
                       [](const auto& a, const auto& b) {
                         return a.first < b.first;
                       });
      std::size_t left_ones = 0;
      for (std::size_t i = 1; i < n; ++i) {
        left_ones += static_cast<std::size_t>(sorted[i - 1].second);
        if (sorted[i].first == sorted[i - 1].first) continue;
        if (i < cfg.min_leaf || n - i < cfg.min_leaf) continue;
        double threshold = sorted[i - 1].first +
                           (sorted[i].first - sorted[i - 1].first) / 2.0;
        double child =
            (static_cast<double>(i) * gini(left_ones, i) +
             static_cast<double>(n - i) * gini(ones - left_ones, n - i)) /
            static_cast<double>(n);
        double gain = parent - child;
        // first best wins: lower feature index, then lower threshold
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = j;
          best_threshold = threshold;
          found = true;
        }
      }
    }

    if (!found || best_gain < cfg.min_impurity_decrease)
      return leaf(ones, rows.size());

    std::vector<std::size_t> left_rows, right_rows;
    for (auto r : rows)
      (fm.rows[r][best_feature] < best_threshold ? left_rows : right_rows)
          .push_back(r);

    int self = static_cast<int>(nodes.size());
    nodes.push_back(TreeNode{});
    int left = build(left_rows, depth + 1);
    int right = build(right_rows, depth + 1);
    nodes[self].feature = static_cast<int>(best_feature);
    nodes[self].threshold = best_threshold;
    nodes[self].left = left;
    nodes[self].right = right;
    return self;
  }
};

}  // namespace

DecisionTree train_tree(const FeatureMatrix& fm, const TreeConfig& cfg) {
  if (fm.rows.empty()) throw std::invalid_argument("train_tree: empty matrix");
  for (const auto& row : fm.rows)
    if (row.size() != fm.rows.front().size())
      throw std::invalid_argument("train_tree: ragged matrix");
  if (fm.labels.size() != fm.rows.size())
    throw std::invalid_argument("train_tree: labels do not match rows");

  Builder b{fm, cfg, {}};
  std::vector<std::size_t> rows(fm.rows.size());
  std::iota(rows.begin(), rows.end(), 0);
  b.build(rows, 0);
  return DecisionTree{std::move(b.nodes)};
}

int predict(const DecisionTree& tree, const std::vector<double>& row) {
  if (tree.nodes.empty()) throw std::invalid_argument("predict: empty tree");
  int at = 0;
  while (!tree.nodes[at].is_leaf()) {
    const TreeNode& n = tree.nodes[at];
    at = row[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left
                                                                : n.right;
  }
  return tree.nodes[at].label;
}

double accuracy(const std::vector<int>& truth,
                const std::vector<int>& predicted) {
  if (truth.size() != predicted.size())
    throw std::invalid_argument("accuracy: length mismatch");
  if (truth.empty()) throw std::invalid_argument("accuracy: no samples");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    hits += truth[i] == predicted[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::size_t DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  // longest root-to-leaf edge count, iteratively
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    auto [at, d] = stack.back();
    stack.pop_back();
    const TreeNode& n = nodes[static_cast<std::size_t>(at)];
    if (n.is_leaf()) {
      deepest = std::max(deepest, d);
      continue;
    }
    stack.push_back({n.left, d + 1});
    stack.push_back({n.right, d + 1});
  }
  return deepest;
}

std::string DecisionTree::to_text() const {
  std::string out;
  auto walk = [this, &out](auto&& self, int at, std::size_t indent) -> void {
    const TreeNode& n = nodes[static_cast<std::size_t>(at)];
    std::string pad(indent * 2, ' ');
    if (n.is_leaf()) {
      out += pad + "label " + std::to_string(n.label) + "\n";
      return;
    }
    out += pad + "feature[" + std::to_string(n.feature) + "] < " +
           format_double(n.threshold) + "?\n";
    self(self, n.left, indent + 1);
    self(self, n.right, indent + 1);
  };
  if (!nodes.empty()) walk(walk, 0, 0);
  return out;
}

// ---------------------------------------------------------------------------
// pipelines

ClassifierResult classify_with_split(const ParametricFormula& psi,
                                     const LabeledTraces& train,
                                     const LabeledTraces& test,
                                     const ClassifierConfig& cfg) {
  if (train.good.empty() || train.bad.empty())
    throw DegenerateData("training data has a single class");

  ParamSpace space = param_space(psi);
  std::vector<Valuation> valuations = grid_sample(space, cfg.feature_count);

  ClassifierResult result;
  result.valuations = valuations;
  result.train_features = compute_features(train, psi, valuations);
  result.test_features = compute_features(test, psi, valuations);
  result.tree = train_tree(result.train_features, cfg.tree);

  auto score = [&result](const FeatureMatrix& fm) {
    std::vector<int> predicted;
    predicted.reserve(fm.rows.size());
    for (const auto& row : fm.rows)
      predicted.push_back(predict(result.tree, row));
    return accuracy(fm.labels, predicted);
  };
  result.train_accuracy = score(result.train_features);
  // with nothing held out, report the training figure rather than fail
  result.test_accuracy = result.test_features.rows.empty()
                             ? result.train_accuracy
                             : score(result.test_features);
  return result;
}

ClassifierResult dt_based_stl_classifier(const ParametricFormula& psi,
                                         const LabeledTraces& data,
                                         const ClassifierConfig& cfg) {
  if (data.good.empty() || data.bad.empty())
    throw DegenerateData("dataset has a single class");
  auto [train, test] = split_dataset(data, cfg.split_ratio, cfg.seed);
  return classify_with_split(psi, train, test, cfg);
}

void write_feature_csv(const FeatureMatrix& fm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "label";
  for (const auto& name : fm.column_names) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < fm.rows.size(); ++r) {
    out << fm.labels[r];
    for (double v : fm.rows[r]) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace stlmine
