#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netdomain/random.hpp"

namespace netdomain {

// Column-major sample table for One-vs-Rest tasks: features[f][i] is
// feature f of sample i, labels[i] is 1 for the "one" class.
struct Samples {
  std::vector<std::vector<double>> features;
  std::vector<std::uint8_t> labels;

  std::size_t size() const { return labels.size(); }
};

struct ForestParams {
  int n_trees = 100;
  int max_depth = 3;
  bool balanced_bootstrap = true;
  int min_samples_leaf = 1;

  void validate() const {
    if (n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  }
};

struct CVConfig {
  int folds = 5;
  int repeats = 3;
  std::uint64_t seed = 0;

  void validate() const {
    if (folds < 2) throw std::invalid_argument("folds must be >= 2");
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  }
};

// Flat tree; feature == -1 marks a leaf carrying the positive fraction.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double prob = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at 0

  bool leaf_class(const std::vector<std::vector<double>>& features, std::size_t row) const {
    int at = 0;
    while (nodes[at].feature >= 0)
      at = features[nodes[at].feature][row] <= nodes[at].threshold ? nodes[at].left
                                                                   : nodes[at].right;
    return nodes[at].prob >= 0.5;
  }

  int depth() const { return node_depth(0); }

 private:
  int node_depth(int at) const {
    if (nodes[at].feature < 0) return 0;
    return 1 + std::max(node_depth(nodes[at].left), node_depth(nodes[at].right));
  }
};

struct ForestModel {
  std::vector<Tree> trees;
  ForestParams params;
  std::uint64_t seed = 0;
  std::vector<int> feature_subset;

  // Majority vote over hard per-tree classes; ties go to the positive
  // ("one") class.
  bool predict(const std::vector<std::vector<double>>& features, std::size_t row) const {
    int pos = 0;
    for (const auto& t : trees) pos += t.leaf_class(features, row) ? 1 : 0;
    return 2 * pos >= static_cast<int>(trees.size());
  }
};

inline double gini(std::size_t pos, std::size_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(total);
  return 2.0 * p * (1.0 - p);
}

// With-replacement draw of minority-size samples from each class.
inline std::vector<std::size_t> balanced_bootstrap(const std::vector<std::uint8_t>& labels,
                                                   const std::vector<std::size_t>& pool,
                                                   Rng& rng) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i : pool) (labels[i] ? pos : neg).push_back(i);
  if (pos.empty() || neg.empty())
    throw std::invalid_argument("balanced_bootstrap: a class is empty");
  const std::size_t m = std::min(pos.size(), neg.size());
  std::vector<std::size_t> out;
  out.reserve(2 * m);
  for (std::size_t k = 0; k < m; ++k) out.push_back(pos[rng.below(pos.size())]);
  for (std::size_t k = 0; k < m; ++k) out.push_back(neg[rng.below(neg.size())]);
  return out;
}

namespace detail {

struct TreeBuilder {
  const Samples& s;
  const std::vector<int>& feature_subset;
  const ForestParams& params;
  Rng& rng;
  Tree tree;

  int build(std::vector<std::size_t>& idx, int depth) {
    const std::size_t n = idx.size();
    std::size_t pos = 0;
    for (std::size_t i : idx) pos += s.labels[i];
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[node_id].prob = n ? static_cast<double>(pos) / static_cast<double>(n) : 0.0;
    if (depth >= params.max_depth || pos == 0 || pos == n) return node_id;

    // Feature sample is drawn before any values are inspected, so split
    // choices are invariant under monotone feature transforms.
    std::vector<int> pick = feature_subset;
    const std::size_t k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(pick.size())))));
    for (std::size_t i = 0; i < k && i + 1 < pick.size(); ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.below(pick.size() - i));
      std::swap(pick[i], pick[j]);
    }
    pick.resize(std::min(k, pick.size()));
    std::sort(pick.begin(), pick.end());

    const double parent = gini(pos, n);
    double best_impurity = parent;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::pair<double, std::uint8_t>> vals(n);
    for (int f : pick) {
      const auto& col = s.features[f];
      for (std::size_t i = 0; i < n; ++i) vals[i] = {col[idx[i]], s.labels[idx[i]]};
      std::sort(vals.begin(), vals.end());
      std::size_t left_n = 0, left_pos = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        ++left_n;
        left_pos += vals[i].second;
        if (vals[i].first == vals[i + 1].first) continue;
        const std::size_t right_n = n - left_n;
        if (left_n < static_cast<std::size_t>(params.min_samples_leaf) ||
            right_n < static_cast<std::size_t>(params.min_samples_leaf))
          continue;
        const double w =
            (static_cast<double>(left_n) * gini(left_pos, left_n) +
             static_cast<double>(right_n) * gini(pos - left_pos, right_n)) /
            static_cast<double>(n);
        if (w < best_impurity - 1e-12) {
          best_impurity = w;
          best_feature = f;
          best_threshold = 0.5 * (vals[i].first + vals[i + 1].first);
        }
      }
    }
    if (best_feature < 0) return node_id;

    std::vector<std::size_t> left, right;
    for (std::size_t i : idx)
      (s.features[best_feature][i] <= best_threshold ? left : right).push_back(i);
    tree.nodes[node_id].feature = best_feature;
    tree.nodes[node_id].threshold = best_threshold;
    tree.nodes[node_id].left = build(left, depth + 1);
    tree.nodes[node_id].right = build(right, depth + 1);
    return node_id;
  }
};

}  // namespace detail

inline Tree fit_tree(const Samples& s, std::vector<std::size_t> idx,
                     const std::vector<int>& feature_subset, const ForestParams& params,
                     Rng& rng) {
  if (idx.empty()) throw std::invalid_argument("fit_tree: no samples");
  detail::TreeBuilder builder{s, feature_subset, params, rng, {}};
  builder.build(idx, 0);
  return std::move(builder.tree);
}

inline ForestModel fit_forest(const Samples& s, const std::vector<std::size_t>& pool,
                              const std::vector<int>& feature_subset,
                              const ForestParams& params, std::uint64_t seed) {
  params.validate();
  if (feature_subset.empty()) throw std::invalid_argument("fit_forest: empty feature subset");
  ForestModel model;
  model.params = params;
  model.seed = seed;
  model.feature_subset = feature_subset;
  model.trees.reserve(params.n_trees);
  for (int t = 0; t < params.n_trees; ++t) {
    Rng rng(derive_seed(seed, std::string_view("tree"), static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> sample;
    if (params.balanced_bootstrap) {
      sample = balanced_bootstrap(s.labels, pool, rng);
    } else {
      sample.reserve(pool.size());
      for (std::size_t k = 0; k < pool.size(); ++k)
        sample.push_back(pool[rng.below(pool.size())]);
    }
    model.trees.push_back(fit_tree(s, std::move(sample), feature_subset, params, rng));
  }
  return model;
}

inline ForestModel fit_forest(const Samples& s, const std::vector<int>& feature_subset,
                              const ForestParams& params, std::uint64_t seed) {
  std::vector<std::size_t> pool(s.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  return fit_forest(s, pool, feature_subset, params, seed);
}

// F1 of the positive class; degenerate folds (no true or predicted
// positives) score 0.
inline double f1_score(const std::vector<std::uint8_t>& y_true,
                       const std::vector<std::uint8_t>& y_pred) {
  if (y_true.size() != y_pred.size())
    throw std::invalid_argument("f1_score: length mismatch");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_pred[i] && y_true[i]) ++tp;
    else if (y_pred[i] && !y_true[i]) ++fp;
    else if (!y_pred[i] && y_true[i]) ++fn;
  }
  if (tp == 0) return 0.0;
  const double p = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double r = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return 2.0 * p * r / (p + r);
}

struct CVSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Per repeat, each class is shuffled with a repeat-specific seed and dealt
// round-robin, so per-fold class counts stay within 1 of proportional.
inline std::vector<CVSplit> stratified_kfold_indices(const std::vector<std::uint8_t>& labels,
                                                     const CVConfig& cv) {
  cv.validate();
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] ? pos : neg).push_back(i);
  if (pos.size() < static_cast<std::size_t>(cv.folds))
    throw std::invalid_argument("stratified_kfold: positive class smaller than fold count");
  if (neg.size() < static_cast<std::size_t>(cv.folds))
    throw std::invalid_argument("stratified_kfold: negative class smaller than fold count");

  std::vector<CVSplit> splits;
  splits.reserve(static_cast<std::size_t>(cv.folds) * cv.repeats);
  for (int r = 0; r < cv.repeats; ++r) {
    std::vector<std::vector<std::size_t>> fold_of(cv.folds);
    int cls = 0;
    for (auto* group : {&pos, &neg}) {
      std::vector<std::size_t> shuffled = *group;
      Rng rng(derive_seed(cv.seed, std::string_view("cv"), static_cast<std::uint64_t>(r),
                          static_cast<std::uint64_t>(cls++)));
      rng.shuffle(shuffled);
      for (std::size_t i = 0; i < shuffled.size(); ++i)
        fold_of[i % cv.folds].push_back(shuffled[i]);
    }
    for (int f = 0; f < cv.folds; ++f) {
      CVSplit split;
      split.test = fold_of[f];
      for (int g = 0; g < cv.folds; ++g)
        if (g != f)
          split.train.insert(split.train.end(), fold_of[g].begin(), fold_of[g].end());
      std::sort(split.test.begin(), split.test.end());
      std::sort(split.train.begin(), split.train.end());
      splits.push_back(std::move(split));
    }
  }
  return splits;
}

struct EvalResult {
  double mean_f1 = 0.0;
  std::vector<double> fold_scores;
};

// Repeated stratified CV; forest seeds derive from (cv.seed, repeat, fold)
// only, so every feature subset is scored on identical partitions and with
// identical tree randomness.
inline EvalResult evaluate(const Samples& s, const std::vector<int>& feature_subset,
                           const CVConfig& cv, const ForestParams& params) {
  if (feature_subset.empty()) throw std::invalid_argument("evaluate: empty feature subset");
  const auto splits = stratified_kfold_indices(s.labels, cv);
  EvalResult res;
  res.fold_scores.reserve(splits.size());
  for (std::size_t si = 0; si < splits.size(); ++si) {
    const std::uint64_t forest_seed =
        derive_seed(cv.seed, std::string_view("forest"), static_cast<std::uint64_t>(si));
    ForestModel model = fit_forest(s, splits[si].train, feature_subset, params, forest_seed);
    std::vector<std::uint8_t> y_true, y_pred;
    y_true.reserve(splits[si].test.size());
    y_pred.reserve(splits[si].test.size());
    for (std::size_t row : splits[si].test) {
      y_true.push_back(s.labels[row]);
      y_pred.push_back(model.predict(s.features, row) ? 1 : 0);
    }
    res.fold_scores.push_back(f1_score(y_true, y_pred));
  }
  double sum = 0;
  for (double v : res.fold_scores) sum += v;
  res.mean_f1 = sum / static_cast<double>(res.fold_scores.size());
  return res;
}

}  // namespace netdomain
